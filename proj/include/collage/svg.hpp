#pragma once

#include <string>

#include "collage/store.hpp"
#include "collage/zoomview.hpp"

namespace collage {

/// Deterministic SVG rendering of a view: placed fragments as rectangles,
/// each cluster hull as one closed Catmull-Rom <path>, labels as
/// <text class="label"> and citylights as circles on the border. Numbers are
/// printed with three decimals, so identical input yields identical bytes.
std::string render_svg(const ViewModel& view, const Collage& collage);

}  // namespace collage
