#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "collage/store.hpp"
#include "collage/zoomview.hpp"

namespace collage {

enum class SelectionKind { Fragment, Cluster, Inbox };

std::string_view to_string(SelectionKind k) noexcept;
std::optional<SelectionKind> selection_kind_from_string(std::string_view s) noexcept;

struct Selection {
  SelectionKind kind = SelectionKind::Fragment;
  std::string id;  // fragment id or cluster key
};

struct ClusterSimilarity {
  double similarity = 0.0;
  double opacity = 0.0;
  std::vector<LabelView> shared;  // at most two, strongest first
};

struct SimilarityOverlay {
  Selection selected;
  std::map<std::string, ClusterSimilarity> per_cluster;
  std::map<FragmentId, double> per_inbox;
};

inline constexpr double kMinVisibleSimilarity = 0.05;
inline constexpr double kMinOpacity = 0.15;
inline constexpr double kMaxOpacity = 0.85;

/// 0 below kMinVisibleSimilarity; otherwise a linear map of
/// [kMinVisibleSimilarity, max_similarity] onto [kMinOpacity, kMaxOpacity].
double opacity_map(double similarity, double max_similarity);

/// Similarity of the selected item to every other cluster of the view and to
/// every inbox fragment. Cluster targets are compared in the cluster-as-document
/// tf·idf space, inbox targets in the fragment-level space; the selected
/// item's term counts are weighted in whichever space the target lives in.
/// Throws UnknownSelection.
SimilarityOverlay select(const Collage& collage, std::span<const ClusterView> clusters,
                         const Selection& selection);

/// Copies similarity opacities and shared keywords into the matching ClusterViews.
void apply_overlay(ViewModel& view, const SimilarityOverlay& overlay);

/// Up to two terms in the support intersection, ranked by the product of their weights.
std::vector<std::string> shared_terms(const TermVector& u, const TermVector& v,
                                      std::size_t limit = 2);

/// RFC 3986 percent-encoding; only unreserved characters pass through.
std::string percent_encode(std::string_view s);

inline constexpr std::string_view kSearchBase = "https://www.google.com/search?q=";

/// Web search for the first five labels' display forms. Throws NoLabels.
std::string search_url(std::span<const LabelView> labels);

}  // namespace collage
