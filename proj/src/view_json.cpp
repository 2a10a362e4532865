#include "collage/view_json.hpp"

#include "collage/collage_io.hpp"

namespace collage {

using nlohmann::json;

json point_to_json(Point p) { return {{"x", p.x}, {"y", p.y}}; }

json rect_to_json(const Rect& r) {
  return {{"x", r.x}, {"y", r.y}, {"width", r.width}, {"height", r.height}};
}

json labels_to_json(std::span<const LabelView> labels) {
  json out = json::array();
  for (const auto& l : labels)
    out.push_back({{"stem", l.stem}, {"display", l.display}, {"weight", l.weight}});
  return out;
}

std::string_view to_string(RenderMode mode) noexcept {
  return mode == RenderMode::FullContent ? "full_content" : "favicon";
}

namespace {

json points_to_json(std::span<const Point> pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(point_to_json(p));
  return out;
}

}  // namespace

json view_to_json(const ViewModel& view) {
  json clusters = json::array();
  for (const auto& c : view.clusters) {
    json jc = {{"key", c.key},
               {"member_ids", c.member_ids},
               {"hull", points_to_json(c.hull)},
               {"spline_control", points_to_json(c.spline_control)},
               {"centroid", point_to_json(c.centroid)},
               {"bbox", rect_to_json(c.bbox)},
               {"labels", labels_to_json(c.labels)},
               {"label_opacity", c.label_opacity},
               {"similarity_opacity", nullptr},
               {"shared_keywords", nullptr}};
    if (c.similarity_opacity) jc["similarity_opacity"] = *c.similarity_opacity;
    if (c.shared_keywords) jc["shared_keywords"] = labels_to_json(*c.shared_keywords);
    clusters.push_back(std::move(jc));
  }
  json states = json::object();
  for (const auto& [id, s] : view.fragment_states)
    states[id] = {{"mode", to_string(s.mode)}, {"crossfade_alpha", s.crossfade_alpha}};
  json lights = json::array();
  for (const auto& l : view.citylights)
    lights.push_back({{"key", l.key},
                      {"border_anchor", point_to_json(l.border_anchor)},
                      {"edge", to_string(l.edge)},
                      {"strength", l.strength}});
  return {{"revision", view.revision},
          {"viewport", viewport_to_json(view.viewport)},
          {"clusters", std::move(clusters)},
          {"fragment_states", std::move(states)},
          {"citylights", std::move(lights)}};
}

json overlay_to_json(const SimilarityOverlay& overlay) {
  json per_cluster = json::object();
  for (const auto& [key, s] : overlay.per_cluster)
    per_cluster[key] = {{"similarity", s.similarity},
                        {"opacity", s.opacity},
                        {"shared", labels_to_json(s.shared)}};
  json per_inbox = json::object();
  for (const auto& [id, s] : overlay.per_inbox) per_inbox[id] = s;
  return {{"selected", {{"kind", to_string(overlay.selected.kind)}, {"id", overlay.selected.id}}},
          {"per_cluster", std::move(per_cluster)},
          {"per_inbox", std::move(per_inbox)}};
}

json kwic_to_json(std::span<const KwicHit> hits) {
  json out = json::array();
  for (const auto& h : hits)
    out.push_back({{"fragment_id", h.fragment_id},
                   {"keyword", h.keyword},
                   {"context", h.context},
                   {"match_offset", h.match_offset}});
  return out;
}

json partition_to_json(const Partition& partition) {
  json out = json::array();
  for (const auto& g : partition) out.push_back(g);
  return out;
}

}  // namespace collage
