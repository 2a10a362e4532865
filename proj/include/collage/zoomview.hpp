#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "collage/spatial.hpp"
#include "collage/store.hpp"

namespace collage {

struct ViewParams {
  double eps_screen_px = 40.0;
  /// Scale at which captured text (12 px capture font) renders with a 7 px line height.
  double readable_scale = 7.0 / 12.0;
  /// Lower end of the fade band, as a fraction of readable_scale.
  double fade_floor = 0.25;
  double concavity = 20.0;
  std::size_t max_labels = 5;
};

enum class RenderMode { FullContent, Favicon };

struct RenderState {
  RenderMode mode = RenderMode::FullContent;
  double crossfade_alpha = 1.0;

  /// Opacity of the fragment's own content; the favicon shows with 1 - this.
  double content_opacity() const {
    return mode == RenderMode::FullContent ? crossfade_alpha : 1.0 - crossfade_alpha;
  }

  friend bool operator==(const RenderState&, const RenderState&) = default;
};

struct FadeResult {
  double label_opacity = 0.0;
  RenderState state;
};

/// Piecewise-linear semantic-zoom fade over r = scale / readable_scale:
/// r >= 1 shows content only, r <= fade_floor shows labels and favicons only.
FadeResult fade(double scale, const ViewParams& params = {});

struct LabelView {
  std::string stem;
  std::string display;
  double weight = 0.0;

  friend bool operator==(const LabelView&, const LabelView&) = default;
};

struct ClusterView {
  std::string key;
  std::vector<FragmentId> member_ids;
  Polygon hull;                     // screen px
  std::vector<Point> spline_control;  // screen px
  Point centroid;                   // screen px
  Rect bbox;                        // screen px
  std::vector<LabelView> labels;
  double label_opacity = 0.0;
  std::optional<double> similarity_opacity;
  std::optional<std::vector<LabelView>> shared_keywords;

  friend bool operator==(const ClusterView&, const ClusterView&) = default;
};

enum class Edge { N, NE, E, SE, S, SW, W, NW };
std::string_view to_string(Edge e) noexcept;

struct Citylight {
  std::string key;
  Point border_anchor;  // screen px, on the viewport rectangle
  Edge edge = Edge::N;
  double strength = 0.0;

  friend bool operator==(const Citylight&, const Citylight&) = default;
};

struct ViewModel {
  std::uint64_t revision = 0;
  Viewport viewport;
  std::vector<ClusterView> clusters;
  std::map<FragmentId, RenderState> fragment_states;
  std::vector<Citylight> citylights;

  friend bool operator==(const ViewModel&, const ViewModel&) = default;
};

/// Where the ray from the viewport centre towards `target` (world) leaves the
/// viewport, in screen coordinates. `target` must lie outside the viewport.
std::pair<Point, Edge> border_anchor(const Viewport& viewport, Point target);

/// Labels keyed by (partition, corpus revision), shared between frames.
class LabelCache {
 public:
  explicit LabelCache(std::size_t capacity = 64) : capacity_(capacity) {}

  std::vector<std::vector<Label>> get_or_compute(
      const std::string& partition_key, std::uint64_t revision,
      const std::function<std::vector<std::vector<Label>>()>& compute);

  std::size_t hits() const;

 private:
  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::map<std::pair<std::string, std::uint64_t>, std::vector<std::vector<Label>>> entries_;
  std::vector<std::pair<std::string, std::uint64_t>> order_;
  std::size_t hits_ = 0;
};

/// Returns true when the caller should abandon the computation.
using CancelCheck = std::function<bool()>;

std::vector<PlacedItem> placed_items(const Collage& collage);

/// World-space clusters of the placed fragments for this viewport.
std::vector<Cluster> view_clusters(const Collage& collage, const Viewport& viewport,
                                   const ViewParams& params);

/// Throws Error(Superseded) if `cancelled` fires between stages.
ViewModel compute_view(const Collage& collage, const Viewport& viewport,
                       const ViewParams& params = {}, LabelCache* cache = nullptr,
                       const CancelCheck& cancelled = {});

}  // namespace collage
