#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "collage/geometry.hpp"
#include "collage/textpipe.hpp"
#include "collage/timestamp.hpp"

namespace collage {

using Polygon = std::vector<Point>;  // open ring: the last vertex connects back to the first

struct PlacedItem {
  FragmentId id;
  Rect rect;
  Timestamp captured_at{};
};

struct Cluster {
  std::string key;
  std::vector<FragmentId> member_ids;  // sorted
  Polygon hull;
  std::vector<Point> spline_control;
  Point centroid;
  Rect bbox;
  Timestamp first_captured{};
};

struct ClusterParams {
  double eps_screen_px = 40.0;
  double concavity = 20.0;  // hull edges shorter than this (world units) are not dug into
};

/// Euclidean distance between the closest points of two closed rectangles.
double rect_min_distance(const Rect& a, const Rect& b);

/// DBSCAN over an abstract neighbourhood relation. Returns one label per
/// point: cluster ids 0..k-1 in order of discovery, -1 for noise.
/// `within(i, j)` must be symmetric.
template <class Within>
std::vector<int> dbscan(std::size_t n, std::size_t min_pts, Within&& within) {
  constexpr int kUnvisited = -2;
  constexpr int kNoise = -1;
  std::vector<int> label(n, kUnvisited);
  const auto region = [&](std::size_t p) {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < n; ++q)
      if (q == p || within(p, q)) out.push_back(q);
    return out;
  };
  int next_cluster = 0;
  for (std::size_t p = 0; p < n; ++p) {
    if (label[p] != kUnvisited) continue;
    auto seeds = region(p);
    if (seeds.size() < min_pts) {
      label[p] = kNoise;
      continue;
    }
    const int c = next_cluster++;
    label[p] = c;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      const std::size_t q = seeds[i];
      if (label[q] == kNoise) label[q] = c;  // border point
      if (label[q] != kUnvisited) continue;
      label[q] = c;
      auto more = region(q);
      if (more.size() >= min_pts) seeds.insert(seeds.end(), more.begin(), more.end());
    }
  }
  return label;
}

/// Groups placed fragments with DBSCAN (minPts = 1) under rect_min_distance and
/// eps_world = eps_screen_px / viewport.scale. Clusters come out ordered by the
/// earliest capture time among their members, then by key.
std::vector<Cluster> cluster_fragments(std::span<const PlacedItem> items, const Viewport& viewport,
                                       const ClusterParams& params = {});

/// Same, with the world-space threshold given directly.
std::vector<Cluster> cluster_fragments_world(std::span<const PlacedItem> items, double eps_world,
                                             double concavity = 20.0);

/// Order-independent 64-bit FNV-1a over the sorted ids, as 16 hex digits.
std::string cluster_key(std::vector<FragmentId> member_ids);

Polygon convex_hull(std::vector<Point> points);

/// Concave hull by edge digging: starting from the convex hull, every edge
/// longer than `concavity` is split at the inner point that forms the
/// smallest angles with it, as long as the new edges do not cross the hull.
Polygon concave_hull(std::vector<Point> points, double concavity);

/// Concave hull over all rectangle corners. A single rectangle yields itself.
/// Falls back to the convex hull should the dug polygon fail to contain every
/// corner or fail to be simple.
Polygon cluster_hull(std::span<const Rect> rects, double concavity);

double polygon_area(std::span<const Point> poly);
bool point_in_polygon(Point p, std::span<const Point> poly, double boundary_tolerance = 1e-9);
bool is_simple_polygon(std::span<const Point> poly);

struct CubicSegment {
  Point from;
  Point c1;
  Point c2;
  Point to;
};

/// Closed uniform Catmull-Rom curve through `control`, as cubic Béziers.
std::vector<CubicSegment> catmull_rom_closed(std::span<const Point> control);

}  // namespace collage
