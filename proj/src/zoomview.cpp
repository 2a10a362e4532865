#include "collage/zoomview.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "collage/error.hpp"

namespace collage {

FadeResult fade(double scale, const ViewParams& params) {
  const double r = scale / params.readable_scale;
  if (r >= 1.0) return {0.0, {RenderMode::FullContent, 1.0}};
  if (r <= params.fade_floor) return {1.0, {RenderMode::Favicon, 1.0}};
  const double t = (r - params.fade_floor) / (1.0 - params.fade_floor);
  return {1.0 - t, {RenderMode::FullContent, t}};
}

std::string_view to_string(Edge e) noexcept {
  switch (e) {
    case Edge::N: return "N";
    case Edge::NE: return "NE";
    case Edge::E: return "E";
    case Edge::SE: return "SE";
    case Edge::S: return "S";
    case Edge::SW: return "SW";
    case Edge::W: return "W";
    case Edge::NW: return "NW";
  }
  return "?";
}

std::pair<Point, Edge> border_anchor(const Viewport& viewport, Point target) {
  const double w = viewport.screen_size.width;
  const double h = viewport.screen_size.height;
  const Point t = viewport.to_screen(target);
  const double dx = t.x - w / 2.0;
  const double dy = t.y - h / 2.0;
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double tx = dx != 0.0 ? (w / 2.0) / std::abs(dx) : inf;
  const double ty = dy != 0.0 ? (h / 2.0) / std::abs(dy) : inf;
  const double x_edge = dx > 0 ? w : 0.0;
  const double y_edge = dy > 0 ? h : 0.0;  // screen y grows downward: S is the bottom edge
  if (tx < ty) return {{x_edge, h / 2.0 + tx * dy}, dx > 0 ? Edge::E : Edge::W};
  if (ty < tx) return {{w / 2.0 + ty * dx, y_edge}, dy > 0 ? Edge::S : Edge::N};
  const Edge corner = dy > 0 ? (dx > 0 ? Edge::SE : Edge::SW) : (dx > 0 ? Edge::NE : Edge::NW);
  return {{x_edge, y_edge}, corner};
}

std::vector<std::vector<Label>> LabelCache::get_or_compute(
    const std::string& partition_key, std::uint64_t revision,
    const std::function<std::vector<std::vector<Label>>()>& compute) {
  const auto key = std::make_pair(partition_key, revision);
  {
    std::lock_guard lock(mutex_);
    if (const auto it = entries_.find(key); it != entries_.end()) {
      ++hits_;
      return it->second;
    }
  }
  auto labels = compute();
  std::lock_guard lock(mutex_);
  if (entries_.emplace(key, labels).second) {
    order_.push_back(key);
    if (order_.size() > capacity_) {
      entries_.erase(order_.front());
      order_.erase(order_.begin());
    }
  }
  return labels;
}

std::size_t LabelCache::hits() const {
  std::lock_guard lock(mutex_);
  return hits_;
}

std::vector<PlacedItem> placed_items(const Collage& collage) {
  std::vector<PlacedItem> items;
  for (const auto& [id, f] : collage.fragments)
    if (f.placement) items.push_back({id, *f.placement, f.captured_at});
  return items;
}

std::vector<Cluster> view_clusters(const Collage& collage, const Viewport& viewport,
                                   const ViewParams& params) {
  const auto items = placed_items(collage);
  return cluster_fragments(items, viewport, {params.eps_screen_px, params.concavity});
}

namespace {

std::vector<Point> to_screen(const Viewport& v, const std::vector<Point>& pts) {
  std::vector<Point> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(v.to_screen(p));
  return out;
}

}  // namespace

ViewModel compute_view(const Collage& collage, const Viewport& viewport, const ViewParams& params,
                       LabelCache* cache, const CancelCheck& cancelled) {
  if (!viewport.valid()) throw Error(Errc::InvalidArgument, "viewport needs a positive scale");
  if (!(params.eps_screen_px > 0.0))
    throw Error(Errc::InvalidArgument, "eps_screen_px must be positive");
  const auto check = [&] {
    if (cancelled && cancelled()) throw Error(Errc::Superseded, "a newer view request arrived");
  };

  ViewModel vm;
  vm.revision = collage.revision;
  vm.viewport = viewport;

  const auto clusters = view_clusters(collage, viewport, params);
  check();

  std::vector<ClusterDoc> docs;
  docs.reserve(clusters.size());
  std::string partition;
  for (const auto& c : clusters) {
    docs.push_back({c.key, c.member_ids});
    partition += c.key;
  }
  const auto compute_labels = [&] {
    return docs.empty() ? std::vector<std::vector<Label>>{}
                        : cluster_labels(docs, collage.corpus_stats, params.max_labels);
  };
  const auto labels = cache ? cache->get_or_compute(partition, collage.revision, compute_labels)
                            : compute_labels();
  check();

  const auto faded = fade(viewport.scale, params);
  std::size_t max_members = 0;
  for (const auto& c : clusters) max_members = std::max(max_members, c.member_ids.size());
  const Rect visible = viewport.world_rect();

  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const auto& c = clusters[i];
    ClusterView cv;
    cv.key = c.key;
    cv.member_ids = c.member_ids;
    cv.hull = to_screen(viewport, c.hull);
    cv.spline_control = to_screen(viewport, c.spline_control);
    cv.centroid = viewport.to_screen(c.centroid);
    const Point tl = viewport.to_screen({c.bbox.x, c.bbox.y});
    cv.bbox = {tl.x, tl.y, c.bbox.width * viewport.scale, c.bbox.height * viewport.scale};
    for (const auto& l : labels[i]) cv.labels.push_back({l.stem, l.display, l.weight});
    cv.label_opacity = faded.label_opacity;
    vm.clusters.push_back(std::move(cv));

    for (const auto& id : c.member_ids) vm.fragment_states[id] = faded.state;

    if (!c.bbox.intersects(visible)) {
      const auto [anchor, edge] = border_anchor(viewport, c.centroid);
      vm.citylights.push_back({c.key, anchor, edge,
                               static_cast<double>(c.member_ids.size()) /
                                   static_cast<double>(max_members)});
    }
  }
  return vm;
}

}  // namespace collage
