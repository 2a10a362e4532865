#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace collage {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned rectangle; (x, y) is the top-left corner, y grows downward.
struct Rect {
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;

  double right() const { return x + width; }
  double bottom() const { return y + height; }
  Point center() const { return {x + width / 2.0, y + height / 2.0}; }
  double area() const { return width * height; }

  std::array<Point, 4> corners() const {
    return {Point{x, y}, Point{right(), y}, Point{right(), bottom()}, Point{x, bottom()}};
  }

  bool valid() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(width) &&
           std::isfinite(height) && width > 0.0 && height > 0.0;
  }

  // Closed rectangles: touching edges count as intersecting.
  bool intersects(const Rect& o) const {
    return x <= o.right() && o.x <= right() && y <= o.bottom() && o.y <= bottom();
  }

  bool contains(const Rect& o) const {
    return x <= o.x && y <= o.y && o.right() <= right() && o.bottom() <= bottom();
  }

  Rect united(const Rect& o) const {
    const double l = std::min(x, o.x);
    const double t = std::min(y, o.y);
    return {l, t, std::max(right(), o.right()) - l, std::max(bottom(), o.bottom()) - t};
  }

  Rect inflated(double pad) const { return {x - pad, y - pad, width + 2 * pad, height + 2 * pad}; }

  friend bool operator==(const Rect&, const Rect&) = default;
};

/// A fragment's world-space placement.
using Placement = Rect;

struct ScreenSize {
  double width = 1280.0;
  double height = 800.0;

  friend bool operator==(const ScreenSize&, const ScreenSize&) = default;
};

/// `scale` is screen pixels per world unit.
struct Viewport {
  Point center;
  double scale = 1.0;
  ScreenSize screen_size;

  bool valid() const {
    return std::isfinite(center.x) && std::isfinite(center.y) && std::isfinite(scale) &&
           scale > 0.0 && std::isfinite(screen_size.width) && std::isfinite(screen_size.height) &&
           screen_size.width > 0.0 && screen_size.height > 0.0;
  }

  Rect world_rect() const {
    const double hw = screen_size.width / 2.0 / scale;
    const double hh = screen_size.height / 2.0 / scale;
    return {center.x - hw, center.y - hh, 2 * hw, 2 * hh};
  }

  Point to_screen(Point world) const {
    return {(world.x - center.x) * scale + screen_size.width / 2.0,
            (world.y - center.y) * scale + screen_size.height / 2.0};
  }

  friend bool operator==(const Viewport&, const Viewport&) = default;
};

}  // namespace collage
