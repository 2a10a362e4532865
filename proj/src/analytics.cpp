#include "collage/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "collage/error.hpp"
#include "collage/spatial.hpp"

namespace collage {

std::string_view to_string(EventType t) noexcept {
  switch (t) {
    case EventType::FragmentCreated: return "fragment_created";
    case EventType::CollageAccess: return "collage_access";
    case EventType::SourceRevisit: return "source_revisit";
  }
  return "unknown";
}

std::optional<EventType> event_type_from_string(std::string_view s) noexcept {
  if (s == "fragment_created") return EventType::FragmentCreated;
  if (s == "collage_access") return EventType::CollageAccess;
  if (s == "source_revisit") return EventType::SourceRevisit;
  return std::nullopt;
}

void ActivityLog::record(const std::string& user_key, EventType type, Timestamp timestamp) {
  if (user_key.empty()) throw Error(Errc::InvalidArgument, "empty user_key");
  if (user_key.find_first_of("\t\n\r") != std::string::npos)
    throw Error(Errc::InvalidArgument, "user_key may not contain tabs or newlines");
  const auto it = last_.find(user_key);
  if (it != last_.end() && timestamp < it->second)
    throw Error(Errc::NonMonotoneTimestamp,
                user_key + " at " + format_rfc3339(timestamp) + " precedes " +
                    format_rfc3339(it->second));
  last_[user_key] = timestamp;
  events_.push_back({timestamp, user_key, type});
}

ActivityCounts ActivityLog::counts(const std::string& user_key) const {
  ActivityCounts c;
  for (const auto& e : events_) {
    if (e.user_key != user_key) continue;
    switch (e.type) {
      case EventType::FragmentCreated: ++c.fragments_created; break;
      case EventType::CollageAccess: ++c.collage_accesses; break;
      case EventType::SourceRevisit: ++c.source_revisits; break;
    }
  }
  return c;
}

std::vector<std::string> ActivityLog::users() const {
  std::vector<std::string> out;
  for (const auto& [user, _] : last_) out.push_back(user);
  return out;
}

std::vector<ActivitySample> ActivityLog::samples() const {
  std::map<std::string, ActivityCounts> by_user;
  for (const auto& e : events_) {
    auto& c = by_user[e.user_key];
    switch (e.type) {
      case EventType::FragmentCreated: ++c.fragments_created; break;
      case EventType::CollageAccess: ++c.collage_accesses; break;
      case EventType::SourceRevisit: ++c.source_revisits; break;
    }
  }
  std::vector<ActivitySample> out;
  for (const auto& [_, c] : by_user) out.push_back(c.as_sample());
  return out;
}

void ActivityLog::write_tsv(std::ostream& out) const {
  for (const auto& e : events_)
    out << format_rfc3339(e.timestamp) << '\t' << e.user_key << '\t' << to_string(e.type) << '\n';
}

ActivityLog ActivityLog::read_tsv(std::istream& in) {
  ActivityLog log;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos)
      throw Error(Errc::InvalidArgument, "line " + std::to_string(line_no) + ": expected 3 fields");
    const auto type = event_type_from_string(std::string_view(line).substr(t2 + 1));
    if (!type)
      throw Error(Errc::InvalidArgument, "line " + std::to_string(line_no) + ": unknown event type");
    log.record(line.substr(t1 + 1, t2 - t1 - 1), *type,
               parse_rfc3339(std::string_view(line).substr(0, t1)));
  }
  return log;
}

Standardized standardize(std::span<const ActivitySample> samples) {
  if (samples.size() < 2) throw Error(Errc::TooFewSamples, "need at least two samples");
  const double n = static_cast<double>(samples.size());
  Standardized out;
  out.rows.resize(samples.size());
  for (std::size_t axis = 0; axis < 3; ++axis) {
    double mean = 0.0;
    for (const auto& s : samples) mean += s[axis];
    mean /= n;
    double var = 0.0;
    for (const auto& s : samples) var += (s[axis] - mean) * (s[axis] - mean);
    var /= n;
    if (!(var > 0.0)) continue;
    const double sd = std::sqrt(var);
    out.kept_axes.push_back(axis);
    for (std::size_t i = 0; i < samples.size(); ++i)
      out.rows[i].push_back((samples[i][axis] - mean) / sd);
  }
  if (out.kept_axes.empty()) throw Error(Errc::DegenerateAxis, "every axis is constant");
  return out;
}

Partition strategy_clusters(std::span<const ActivitySample> samples, double eps) {
  if (samples.size() < 2) throw Error(Errc::TooFewSamples, "need at least two samples");
  if (!(eps > 0.0)) throw Error(Errc::InvalidArgument, "eps must be positive");
  Standardized z;
  try {
    z = standardize(samples);
  } catch (const Error& e) {
    if (e.code() != Errc::DegenerateAxis) throw;
    Partition all(1);
    for (std::size_t i = 0; i < samples.size(); ++i) all[0].push_back(i);
    return all;
  }
  const auto within = [&](std::size_t a, std::size_t b) {
    double d2 = 0.0;
    for (std::size_t k = 0; k < z.kept_axes.size(); ++k) {
      const double d = z.rows[a][k] - z.rows[b][k];
      d2 += d * d;
    }
    return std::sqrt(d2) <= eps;
  };
  const auto labels = dbscan(samples.size(), 1, within);
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(i);
  Partition out;
  for (auto& [_, g] : groups) out.push_back(std::move(g));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

}  // namespace collage
