#pragma once

// JSON wire formats shared by the HTTP API and the CLI.

#include <span>

#include <json.hpp>

#include "collage/analytics.hpp"
#include "collage/explore.hpp"
#include "collage/textpipe.hpp"
#include "collage/zoomview.hpp"

namespace collage {

nlohmann::json point_to_json(Point p);
nlohmann::json rect_to_json(const Rect& r);
nlohmann::json labels_to_json(std::span<const LabelView> labels);
nlohmann::json view_to_json(const ViewModel& view);
nlohmann::json overlay_to_json(const SimilarityOverlay& overlay);
nlohmann::json kwic_to_json(std::span<const KwicHit> hits);
nlohmann::json partition_to_json(const Partition& partition);

std::string_view to_string(RenderMode mode) noexcept;

}  // namespace collage
