#pragma once

// Activity logging and usage-strategy clustering over per-user activity counts.

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "collage/timestamp.hpp"

namespace collage {

enum class EventType { FragmentCreated, CollageAccess, SourceRevisit };

std::string_view to_string(EventType t) noexcept;
std::optional<EventType> event_type_from_string(std::string_view s) noexcept;

struct ActivityEvent {
  Timestamp timestamp{};
  std::string user_key;
  EventType type = EventType::FragmentCreated;

  friend bool operator==(const ActivityEvent&, const ActivityEvent&) = default;
};

/// (fragments created, collage accesses, source revisits)
using ActivitySample = std::array<double, 3>;

struct ActivityCounts {
  std::uint64_t fragments_created = 0;
  std::uint64_t collage_accesses = 0;
  std::uint64_t source_revisits = 0;

  ActivitySample as_sample() const {
    return {static_cast<double>(fragments_created), static_cast<double>(collage_accesses),
            static_cast<double>(source_revisits)};
  }
  friend bool operator==(const ActivityCounts&, const ActivityCounts&) = default;
};

/// Append-only; timestamps never decrease per user_key. Single writer.
class ActivityLog {
 public:
  /// Throws NonMonotoneTimestamp, or InvalidArgument for an empty user_key.
  void record(const std::string& user_key, EventType type, Timestamp timestamp);

  const std::vector<ActivityEvent>& events() const { return events_; }
  ActivityCounts counts(const std::string& user_key) const;
  /// Users in ascending key order.
  std::vector<std::string> users() const;
  /// One sample per user, aligned with users().
  std::vector<ActivitySample> samples() const;

  /// Lines `timestamp<TAB>user_key<TAB>event_type`.
  void write_tsv(std::ostream& out) const;
  /// Blank lines are skipped. Throws InvalidArgument on a malformed line and
  /// NonMonotoneTimestamp when a user's events go back in time.
  static ActivityLog read_tsv(std::istream& in);

 private:
  std::vector<ActivityEvent> events_;
  std::map<std::string, Timestamp> last_;
};

struct Standardized {
  std::vector<std::vector<double>> rows;  // only the kept axes
  std::vector<std::size_t> kept_axes;
};

/// Per axis: subtract the mean, divide by the population standard deviation.
/// Constant axes are dropped. Throws DegenerateAxis when every axis is constant
/// and TooFewSamples for fewer than two samples.
Standardized standardize(std::span<const ActivitySample> samples);

/// Groups of sample indices; each group ascending, groups ordered by first index.
using Partition = std::vector<std::vector<std::size_t>>;

inline constexpr double kStrategyEps = 2.0;

/// Standardize, then DBSCAN (minPts 1, Euclidean, `eps`). All-identical input
/// forms one group. Throws TooFewSamples.
Partition strategy_clusters(std::span<const ActivitySample> samples, double eps = kStrategyEps);

}  // namespace collage
