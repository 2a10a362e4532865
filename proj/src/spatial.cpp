#include "collage/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <tuple>

namespace collage {

double rect_min_distance(const Rect& a, const Rect& b) {
  const double dx = std::max({0.0, b.x - a.right(), a.x - b.right()});
  const double dy = std::max({0.0, b.y - a.bottom(), a.y - b.bottom()});
  return std::hypot(dx, dy);
}

std::string cluster_key(std::vector<FragmentId> ids) {
  std::sort(ids.begin(), ids.end());
  std::uint64_t h = 14695981039346656037ull;
  for (const auto& id : ids) {
    for (const unsigned char ch : id) {
      h ^= ch;
      h *= 1099511628211ull;
    }
    h ^= 0xFF;  // separator that cannot occur inside UTF-8 text
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Polygon utilities

double polygon_area(std::span<const Point> poly) {
  double twice = 0.0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % n];
    twice += p.x * q.y - q.x * p.y;
  }
  return std::abs(twice) / 2.0;
}

namespace {

double cross(Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

double sq_length(Point a, Point b) { return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y); }

double segment_distance(Point p, Point a, Point b) {
  const double len2 = sq_length(a, b);
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / len2, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * (b.x - a.x)), p.y - (a.y + t * (b.y - a.y)));
}

int orientation(Point a, Point b, Point c) {
  const double v = cross(a, b, c);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

bool on_segment(Point a, Point b, Point p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_touch(Point p1, Point p2, Point q1, Point q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  return (o1 == 0 && on_segment(p1, p2, q1)) || (o2 == 0 && on_segment(p1, p2, q2)) ||
         (o3 == 0 && on_segment(q1, q2, p1)) || (o4 == 0 && on_segment(q1, q2, p2));
}

}  // namespace

bool point_in_polygon(Point p, std::span<const Point> poly, double tol) {
  const std::size_t n = poly.size();
  if (n == 0) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (segment_distance(p, poly[i], poly[(i + 1) % n]) <= tol) return true;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = poly[i];
    const auto& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x)
      inside = !inside;
  }
  return inside;
}

bool is_simple_polygon(std::span<const Point> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (poly[i] == poly[j]) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = poly[i];
    const Point b = poly[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point c = poly[j];
      const Point d = poly[(j + 1) % n];
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        // Neighbouring edges share one vertex; they must not fold back onto each other.
        const Point shared = j == i + 1 ? b : a;
        const Point other_ab = j == i + 1 ? a : b;
        const Point other_cd = j == i + 1 ? d : c;
        if (orientation(other_ab, shared, other_cd) == 0 &&
            (other_cd.x - shared.x) * (other_ab.x - shared.x) +
                    (other_cd.y - shared.y) * (other_ab.y - shared.y) > 0)
          return false;
        continue;
      }
      if (segments_touch(a, b, c, d)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Hulls

namespace {

bool by_x_then_y(const Point& a, const Point& b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); }

std::vector<Point> sorted_unique(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), by_x_then_y);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Monotone chain over x-sorted points; collinear points are dropped. Returns a
// closed ring (first vertex repeated at the end).
std::vector<Point> convex_ring(const std::vector<Point>& sorted) {
  const auto chain = [](auto first, auto last) {
    std::vector<Point> out;
    for (auto it = first; it != last; ++it) {
      while (out.size() >= 2 && cross(out[out.size() - 2], out.back(), *it) <= 0) out.pop_back();
      out.push_back(*it);
    }
    out.pop_back();
    return out;
  };
  auto upper = chain(sorted.begin(), sorted.end());
  auto lower = chain(sorted.rbegin(), sorted.rend());
  lower.insert(lower.end(), upper.begin(), upper.end());
  lower.push_back(sorted.back());
  return lower;
}

// Buckets points by truncated cell coordinates.
class Grid {
 public:
  Grid(const std::vector<Point>& points, double cell_size) : cell_size_(cell_size) {
    for (const auto& p : points) cells_[cell_of(p)].push_back(p);
  }

  std::vector<Point> range(double x0, double y0, double x1, double y1) const {
    std::vector<Point> out;
    const long cx0 = cell(x0), cy0 = cell(y0), cx1 = cell(x1), cy1 = cell(y1);
    for (auto it = cells_.lower_bound({cx0, cy0}); it != cells_.end() && it->first.first <= cx1; ++it) {
      const auto [cx, cy] = it->first;
      if (cx < cx0 || cy < cy0 || cy > cy1) continue;
      out.insert(out.end(), it->second.begin(), it->second.end());
    }
    return out;
  }

  void remove(Point p) {
    auto it = cells_.find(cell_of(p));
    if (it == cells_.end()) return;
    std::erase(it->second, p);
  }

  double cell_size() const { return cell_size_; }

 private:
  long cell(double v) const { return static_cast<long>(std::trunc(v / cell_size_)); }
  std::pair<long, long> cell_of(Point p) const { return {cell(p.x), cell(p.y)}; }

  double cell_size_;
  std::map<std::pair<long, long>, std::vector<Point>> cells_;
};

// Orientation with collinear counted as counter-clockwise.
bool ccw(Point a, Point b, Point c) { return cross(a, b, c) >= 0; }

bool crosses(Point p1, Point p2, Point q1, Point q2) {
  return ccw(p1, q1, q2) != ccw(p2, q1, q2) && ccw(p1, p2, q1) != ccw(p1, p2, q2);
}

// Does segment (from, to) cross any ring edge not starting or ending at `from`?
bool crosses_ring(Point from, Point to, const std::vector<Point>& ring) {
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
    if (from == ring[i] || from == ring[i + 1]) continue;
    if (crosses(from, to, ring[i], ring[i + 1])) return true;
  }
  return false;
}

double cos_at(Point o, Point a, Point b) {
  const double dot = (a.x - o.x) * (b.x - o.x) + (a.y - o.y) * (b.y - o.y);
  return dot / std::sqrt(sq_length(o, a) * sq_length(o, b));
}

// cos(90°) in double precision, so candidates must make acute angles with the edge.
const double kMaxConcaveAngleCos = std::cos(M_PI / 2.0);
constexpr double kMaxSearchBoxFraction = 0.6;

std::optional<Point> dig_point(Point a, Point b, const std::vector<Point>& candidates,
                               const std::vector<Point>& ring) {
  std::optional<Point> best;
  double best_a = kMaxConcaveAngleCos;
  double best_b = kMaxConcaveAngleCos;
  for (const auto& p : candidates) {
    const double ca = cos_at(a, b, p);
    const double cb = cos_at(b, a, p);
    if (ca > best_a && cb > best_b && !crosses_ring(a, p, ring) && !crosses_ring(b, p, ring)) {
      best_a = ca;
      best_b = cb;
      best = p;
    }
  }
  return best;
}

}  // namespace

Polygon convex_hull(std::vector<Point> points) {
  auto pts = sorted_unique(std::move(points));
  if (pts.size() < 3) return pts;
  auto ring = convex_ring(pts);
  ring.pop_back();
  return ring;
}

Polygon concave_hull(std::vector<Point> points, double concavity) {
  auto pts = sorted_unique(std::move(points));
  if (pts.size() < 4) return convex_hull(std::move(pts));

  double min_x = pts.front().x, max_x = pts.back().x;
  double min_y = pts.front().y, max_y = pts.front().y;
  for (const auto& p : pts) {
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double occupied_w = max_x - min_x;
  const double occupied_h = max_y - min_y;
  const double max_search_w = occupied_w * kMaxSearchBoxFraction;
  const double max_search_h = occupied_h * kMaxSearchBoxFraction;

  auto ring = convex_ring(pts);
  const std::set<std::tuple<double, double>> on_hull = [&] {
    std::set<std::tuple<double, double>> s;
    for (const auto& p : ring) s.emplace(p.x, p.y);
    return s;
  }();
  std::vector<Point> inner;
  for (const auto& p : pts)
    if (!on_hull.contains({p.x, p.y})) inner.push_back(p);

  const double area = occupied_w * occupied_h;
  const double cell = std::max(1e-9, std::ceil(area / static_cast<double>(pts.size())));
  Grid grid(inner, cell);

  const double max_sq_edge = concavity * concavity;
  std::set<std::tuple<double, double, double, double>> skip;
  bool inserted = true;
  while (inserted) {
    inserted = false;
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
      const Point a = ring[i];
      const Point b = ring[i + 1];
      const auto key = std::make_tuple(a.x, a.y, b.x, b.y);
      if (sq_length(a, b) < max_sq_edge || skip.contains(key)) continue;

      double x0 = std::min(a.x, b.x), y0 = std::min(a.y, b.y);
      double x1 = std::max(a.x, b.x), y1 = std::max(a.y, b.y);
      double box_w = 0.0, box_h = 0.0;
      std::optional<Point> mid;
      for (int scale = 0;; ++scale) {
        const double grow = scale * grid.cell_size();
        x0 -= grow;
        y0 -= grow;
        x1 += grow;
        y1 += grow;
        box_w = x1 - x0;
        box_h = y1 - y0;
        mid = dig_point(a, b, grid.range(x0, y0, x1, y1), ring);
        if (mid || !(max_search_w > box_w || max_search_h > box_h)) break;
      }
      if (box_w >= max_search_w && box_h >= max_search_h) skip.insert(key);
      if (mid) {
        ring.insert(ring.begin() + static_cast<std::ptrdiff_t>(i) + 1, *mid);
        grid.remove(*mid);
        inserted = true;
      }
    }
  }
  ring.pop_back();
  return ring;
}

Polygon cluster_hull(std::span<const Rect> rects, double concavity) {
  std::vector<Point> corners;
  corners.reserve(rects.size() * 4);
  for (const auto& r : rects)
    for (const auto& c : r.corners()) corners.push_back(c);
  auto hull = concave_hull(corners, concavity);
  const bool contains_all = std::all_of(corners.begin(), corners.end(), [&](const Point& p) {
    return point_in_polygon(p, hull, 1e-9);
  });
  if (!contains_all || !is_simple_polygon(hull)) hull = convex_hull(std::move(corners));
  return hull;
}

std::vector<CubicSegment> catmull_rom_closed(std::span<const Point> p) {
  std::vector<CubicSegment> out;
  const std::size_t n = p.size();
  if (n < 2) return out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p0 = p[(i + n - 1) % n];
    const Point& p1 = p[i];
    const Point& p2 = p[(i + 1) % n];
    const Point& p3 = p[(i + 2) % n];
    out.push_back({p1,
                   {p1.x + (p2.x - p0.x) / 6.0, p1.y + (p2.y - p0.y) / 6.0},
                   {p2.x - (p3.x - p1.x) / 6.0, p2.y - (p3.y - p1.y) / 6.0},
                   p2});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Clustering

std::vector<Cluster> cluster_fragments_world(std::span<const PlacedItem> input, double eps_world,
                                             double concavity) {
  std::vector<PlacedItem> items(input.begin(), input.end());
  std::sort(items.begin(), items.end(), [](const PlacedItem& a, const PlacedItem& b) {
    return std::tie(a.captured_at, a.id) < std::tie(b.captured_at, b.id);
  });
  const auto labels = dbscan(items.size(), 1, [&](std::size_t i, std::size_t j) {
    return rect_min_distance(items[i].rect, items[j].rect) <= eps_world;
  });
  int count = 0;
  for (const int l : labels) count = std::max(count, l + 1);
  std::vector<std::vector<const PlacedItem*>> groups(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < items.size(); ++i)
    groups[static_cast<std::size_t>(labels[i])].push_back(&items[i]);

  std::vector<Cluster> clusters;
  clusters.reserve(groups.size());
  for (const auto& g : groups) {
    Cluster c;
    std::vector<Rect> rects;
    double area = 0.0, cx = 0.0, cy = 0.0;
    c.first_captured = g.front()->captured_at;
    c.bbox = g.front()->rect;
    for (const auto* item : g) {
      c.member_ids.push_back(item->id);
      rects.push_back(item->rect);
      c.bbox = c.bbox.united(item->rect);
      c.first_captured = std::min(c.first_captured, item->captured_at);
      const double a = item->rect.area();
      area += a;
      cx += a * item->rect.center().x;
      cy += a * item->rect.center().y;
    }
    std::sort(c.member_ids.begin(), c.member_ids.end());
    c.key = cluster_key(c.member_ids);
    c.centroid = {cx / area, cy / area};
    c.hull = cluster_hull(rects, concavity);
    c.spline_control = c.hull;
    clusters.push_back(std::move(c));
  }
  std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
    return std::tie(a.first_captured, a.key) < std::tie(b.first_captured, b.key);
  });
  return clusters;
}

std::vector<Cluster> cluster_fragments(std::span<const PlacedItem> items, const Viewport& viewport,
                                       const ClusterParams& params) {
  return cluster_fragments_world(items, params.eps_screen_px / viewport.scale, params.concavity);
}

}  // namespace collage
