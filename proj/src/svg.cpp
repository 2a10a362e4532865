#include "collage/svg.hpp"

#include <cstdio>

namespace collage {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string escape(std::string_view s) {
  std::string out;
  for (const char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(ch);
    }
  }
  return out;
}

std::string pt(Point p) { return num(p.x) + " " + num(p.y); }

std::string hull_path(const ClusterView& c) {
  const auto segments = catmull_rom_closed(c.spline_control);
  if (segments.empty()) return {};
  std::string d = "M " + pt(segments.front().from);
  for (const auto& s : segments) d += " C " + pt(s.c1) + " " + pt(s.c2) + " " + pt(s.to);
  return d + " Z";
}

constexpr double kLabelLineHeight = 16.0;
constexpr double kCitylightRadius = 18.0;

}  // namespace

std::string render_svg(const ViewModel& view, const Collage& collage) {
  const auto& vp = view.viewport;
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(vp.screen_size.width) +
         "\" height=\"" + num(vp.screen_size.height) + "\" viewBox=\"0.000 0.000 " +
         num(vp.screen_size.width) + " " + num(vp.screen_size.height) + "\">\n";

  for (const auto& [id, f] : collage.fragments) {
    if (!f.placement) continue;
    const Point tl = vp.to_screen({f.placement->x, f.placement->y});
    const auto state = view.fragment_states.find(id);
    const double opacity =
        state == view.fragment_states.end() ? 1.0 : state->second.content_opacity();
    out += "<rect class=\"fragment\" data-id=\"" + escape(id) + "\" x=\"" + num(tl.x) +
           "\" y=\"" + num(tl.y) + "\" width=\"" + num(f.placement->width * vp.scale) +
           "\" height=\"" + num(f.placement->height * vp.scale) + "\" opacity=\"" + num(opacity) +
           "\"/>\n";
  }

  for (const auto& c : view.clusters) {
    out += "<g class=\"cluster\" data-key=\"" + escape(c.key) + "\">\n";
    const double fill = c.similarity_opacity.value_or(0.1);
    out += "<path class=\"hull\" d=\"" + hull_path(c) + "\" fill-opacity=\"" + num(fill) + "\"/>\n";
    const double top = c.centroid.y - kLabelLineHeight * (static_cast<double>(c.labels.size()) - 1) / 2.0;
    for (std::size_t i = 0; i < c.labels.size(); ++i) {
      out += "<text class=\"label\" x=\"" + num(c.centroid.x) + "\" y=\"" +
             num(top + kLabelLineHeight * static_cast<double>(i)) + "\" opacity=\"" +
             num(c.label_opacity) + "\">" + escape(c.labels[i].display) + "</text>\n";
    }
    out += "</g>\n";
  }

  for (const auto& l : view.citylights) {
    out += "<circle class=\"citylight\" data-key=\"" + escape(l.key) + "\" data-edge=\"" +
           std::string(to_string(l.edge)) + "\" cx=\"" + num(l.border_anchor.x) + "\" cy=\"" +
           num(l.border_anchor.y) + "\" r=\"" + num(kCitylightRadius) + "\" fill-opacity=\"" +
           num(0.2 + 0.6 * l.strength) + "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace collage
