#include "collage/explore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "collage/error.hpp"

namespace collage {

std::string_view to_string(SelectionKind k) noexcept {
  switch (k) {
    case SelectionKind::Fragment: return "fragment";
    case SelectionKind::Cluster: return "cluster";
    case SelectionKind::Inbox: return "inbox";
  }
  return "unknown";
}

std::optional<SelectionKind> selection_kind_from_string(std::string_view s) noexcept {
  if (s == "fragment") return SelectionKind::Fragment;
  if (s == "cluster") return SelectionKind::Cluster;
  if (s == "inbox") return SelectionKind::Inbox;
  return std::nullopt;
}

double opacity_map(double s, double s_max) {
  if (!(s >= kMinVisibleSimilarity)) return 0.0;
  if (s_max <= kMinVisibleSimilarity) return kMaxOpacity;
  const double t = std::clamp((s - kMinVisibleSimilarity) / (s_max - kMinVisibleSimilarity), 0.0, 1.0);
  return kMinOpacity + t * (kMaxOpacity - kMinOpacity);
}

std::vector<std::string> shared_terms(const TermVector& u, const TermVector& v, std::size_t limit) {
  std::vector<std::pair<double, std::string>> ranked;
  for (const auto& [term, w] : u.weights) {
    const auto it = v.weights.find(term);
    if (it != v.weights.end() && w > 0.0 && it->second > 0.0) ranked.emplace_back(w * it->second, term);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ranked.size() && i < limit; ++i) out.push_back(ranked[i].second);
  return out;
}

namespace {

// tf·idf where terms unknown to the document set simply carry no weight; used
// for a query whose terms need not occur in any of the compared documents.
TermVector weigh_query(const TermCounts& tf, std::size_t n_docs,
                       const std::map<std::string, std::uint32_t>& df) {
  TermCounts known;
  for (const auto& [term, n] : tf)
    if (df.contains(term)) known.emplace(term, n);
  return tfidf(known, n_docs, df);
}

}  // namespace

SimilarityOverlay select(const Collage& collage, std::span<const ClusterView> clusters,
                         const Selection& selection) {
  const auto& stats = collage.corpus_stats;
  SimilarityOverlay overlay;
  overlay.selected = selection;

  std::vector<FragmentId> selected_members;
  std::optional<std::size_t> selected_cluster;
  switch (selection.kind) {
    case SelectionKind::Fragment:
      if (!collage.fragments.contains(selection.id))
        throw Error(Errc::UnknownSelection, "no fragment " + selection.id);
      selected_members = {selection.id};
      break;
    case SelectionKind::Inbox:
      if (std::find(collage.inbox.begin(), collage.inbox.end(), selection.id) == collage.inbox.end())
        throw Error(Errc::UnknownSelection, "no inbox fragment " + selection.id);
      selected_members = {selection.id};
      break;
    case SelectionKind::Cluster: {
      const auto it = std::find_if(clusters.begin(), clusters.end(),
                                   [&](const ClusterView& c) { return c.key == selection.id; });
      if (it == clusters.end()) throw Error(Errc::UnknownSelection, "no cluster " + selection.id);
      selected_cluster = static_cast<std::size_t>(it - clusters.begin());
      selected_members = it->member_ids;
      break;
    }
  }
  const TermCounts selected_tf = cluster_tf(selected_members, stats);

  std::vector<ClusterDoc> docs;
  docs.reserve(clusters.size());
  for (const auto& c : clusters) docs.push_back({c.key, c.member_ids});
  const auto cc = cluster_corpus(docs, stats);

  const auto shared_labels = [&](const TermVector& a, const TermVector& b,
                                 const std::vector<FragmentId>& target_members) {
    std::vector<FragmentId> both = selected_members;
    both.insert(both.end(), target_members.begin(), target_members.end());
    std::vector<LabelView> out;
    for (const auto& term : shared_terms(a, b))
      out.push_back({term, display_form(term, both, stats), a.weights.at(term) * b.weights.at(term)});
    return out;
  };

  if (!clusters.empty()) {
    const TermVector selected_in_clusters =
        selected_cluster ? tfidf(cc.tf[*selected_cluster], cc.n_docs, cc.df)
                         : weigh_query(selected_tf, cc.n_docs, cc.df);
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      if (selected_cluster == i) continue;
      const auto target = tfidf(cc.tf[i], cc.n_docs, cc.df);
      ClusterSimilarity sim;
      sim.similarity = cosine(selected_in_clusters, target);
      sim.shared = shared_labels(selected_in_clusters, target, clusters[i].member_ids);
      overlay.per_cluster.emplace(clusters[i].key, std::move(sim));
    }
  }

  const TermVector selected_in_fragments = tfidf(selected_tf, stats);
  for (const auto& id : collage.inbox) {
    if (selection.kind != SelectionKind::Cluster && id == selection.id) continue;
    overlay.per_inbox[id] = cosine(selected_in_fragments, tfidf(stats.tf.at(id), stats));
  }

  double s_max = 0.0;
  for (const auto& [_, s] : overlay.per_cluster) s_max = std::max(s_max, s.similarity);
  for (auto& [_, s] : overlay.per_cluster) s.opacity = opacity_map(s.similarity, s_max);
  return overlay;
}

void apply_overlay(ViewModel& view, const SimilarityOverlay& overlay) {
  for (auto& c : view.clusters) {
    const auto it = overlay.per_cluster.find(c.key);
    if (it == overlay.per_cluster.end()) {
      c.similarity_opacity.reset();
      c.shared_keywords.reset();
      continue;
    }
    c.similarity_opacity = it->second.opacity;
    c.shared_keywords = it->second.shared;
  }
}

std::string percent_encode(std::string_view s) {
  std::string out;
  for (const unsigned char ch : s) {
    const bool unreserved = (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') ||
                            (ch >= '0' && ch <= '9') || ch == '-' || ch == '.' || ch == '_' ||
                            ch == '~';
    if (unreserved) {
      out.push_back(static_cast<char>(ch));
    } else {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", ch);
      out += buf;
    }
  }
  return out;
}

std::string search_url(std::span<const LabelView> labels) {
  if (labels.empty()) throw Error(Errc::NoLabels, "cluster has no keywords to search for");
  std::string query;
  for (std::size_t i = 0; i < labels.size() && i < 5; ++i) {
    if (i) query += ' ';
    query += labels[i].display;
  }
  return std::string(kSearchBase) + percent_encode(query);
}

}  // namespace collage
