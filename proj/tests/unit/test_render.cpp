#include <doctest.h>

#include "collage/collage_io.hpp"
#include "collage/svg.hpp"
#include "collage/view_json.hpp"

using namespace collage;

namespace {

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

Collage fixture() { return load_collage(std::string(TEST_DATA_DIR) + "/three_clusters.json"); }

}  // namespace

TEST_CASE("svg draws one closed path per cluster and one circle per citylight") {
  const auto c = fixture();
  for (const double scale : {0.05, 0.3, 0.5, 1.0, 2.0}) {
    const auto view = compute_view(c, {{600, 100}, scale, {1280, 800}});
    const auto svg = render_svg(view, c);
    CHECK(count(svg, "<path") == view.clusters.size());
    CHECK(count(svg, " Z\"") == view.clusters.size());
    CHECK(count(svg, "<circle class=\"citylight\"") == view.citylights.size());
    std::size_t labels = 0;
    for (const auto& cl : view.clusters) labels += cl.labels.size();
    CHECK(count(svg, "<text class=\"label\"") == labels);
    CHECK(render_svg(view, c) == svg);
  }
}

TEST_CASE("svg numbers carry three decimals and text is escaped") {
  Collage c;
  Fragment f;
  f.id = "f1";
  f.kind = FragmentKind::Note;
  f.text = "a<b & c";
  f.placement = Rect{0.12345, 0, 10, 10};
  c.fragments.emplace(f.id, f);
  ViewModel vm;
  vm.viewport = {{0, 0}, 1.0, {100, 100}};
  ClusterView cv;
  cv.key = "k";
  cv.spline_control = {{0, 0}, {1, 0}, {1, 1}};
  cv.labels = {{"x", "<x & y>", 1.0}};
  vm.clusters.push_back(cv);
  const auto svg = render_svg(vm, c);
  CHECK(svg.find("x=\"50.123\"") != std::string::npos);
  CHECK(svg.find("&lt;x &amp; y&gt;") != std::string::npos);
}

TEST_CASE("view JSON shape") {
  const auto c = fixture();
  const auto view = compute_view(c, {{0, 0}, 2.0, {1280, 800}});
  const auto j = view_to_json(view);
  for (const char* k : {"revision", "viewport", "clusters", "fragment_states", "citylights"})
    CHECK(j.contains(k));
  const auto& cl = j.at("clusters").at(0);
  for (const char* k : {"key", "member_ids", "hull", "spline_control", "centroid", "bbox", "labels",
                        "label_opacity", "similarity_opacity", "shared_keywords"})
    CHECK(cl.contains(k));
  CHECK(cl.at("hull").at(0).contains("x"));
  CHECK(cl.at("bbox").contains("width"));
  REQUIRE(!j.at("citylights").empty());
  CHECK(j.at("citylights").at(0).at("edge").is_string());
  CHECK(viewport_from_json(j.at("viewport")) == view.viewport);
}

TEST_CASE("overlay and kwic JSON shape") {
  SimilarityOverlay o;
  o.selected = {SelectionKind::Inbox, "f9"};
  o.per_cluster["k"] = {0.5, 0.85, {{"solar", "solar", 0.3}}};
  o.per_inbox["f2"] = 0.25;
  const auto j = overlay_to_json(o);
  CHECK(j.at("selected").at("kind") == "inbox");
  CHECK(j.at("per_cluster").at("k").at("shared").at(0).at("display") == "solar");
  CHECK(j.at("per_inbox").at("f2") == 0.25);
  const std::vector<KwicHit> hits = {{"f1", "solar", "the solar wind", 4}};
  const auto k = kwic_to_json(hits);
  CHECK(k.at(0).at("match_offset") == 4);
  CHECK(partition_to_json({{0}, {1, 2}}).dump() == "[[0],[1,2]]");
}
