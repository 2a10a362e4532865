#pragma once

// Generators and brute-force oracles shared by the unit and acceptance tests.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "collage/spatial.hpp"
#include "collage/store.hpp"

namespace testing {

using Partition = std::vector<std::vector<std::size_t>>;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// Sorted groups, each sorted; comparable with ==.
inline Partition canonical(Partition p) {
  for (auto& g : p) std::sort(g.begin(), g.end());
  std::sort(p.begin(), p.end());
  return p;
}

inline Partition from_labels(const std::vector<int>& labels) {
  Partition p;
  std::vector<int> seen;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto it = std::find(seen.begin(), seen.end(), labels[i]);
    if (it == seen.end() || labels[i] < 0) {
      seen.push_back(labels[i]);
      p.push_back({i});
    } else {
      p[static_cast<std::size_t>(it - seen.begin())].push_back(i);
    }
  }
  return canonical(p);
}

/// Connected components of the graph with an edge wherever `linked` holds.
inline Partition components(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& linked) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  const std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (linked(a, b)) parent[find(a)] = find(b);
  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
  Partition p;
  for (auto& g : groups)
    if (!g.empty()) p.push_back(std::move(g));
  return canonical(p);
}

/// Rectangles scattered over [0, extent)^2 with sides in [min_side, max_side].
inline std::vector<collage::Rect> random_rects(Rng& rng, std::size_t n, double extent,
                                               double min_side = 5.0, double max_side = 60.0) {
  std::vector<collage::Rect> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back({rng.uniform(0, extent), rng.uniform(0, extent), rng.uniform(min_side, max_side),
                   rng.uniform(min_side, max_side)});
  return out;
}

inline std::vector<collage::PlacedItem> as_items(const std::vector<collage::Rect>& rects) {
  std::vector<collage::PlacedItem> items;
  for (std::size_t i = 0; i < rects.size(); ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "f%03zu", i + 1);
    items.push_back({id, rects[i], collage::Timestamp{std::chrono::milliseconds(1000 * i)}});
  }
  return items;
}

/// Cluster membership as indices into `items`.
inline Partition as_partition(const std::vector<collage::Cluster>& clusters,
                              const std::vector<collage::PlacedItem>& items) {
  Partition p;
  for (const auto& c : clusters) {
    std::vector<std::size_t> g;
    for (const auto& id : c.member_ids) {
      const auto it = std::find_if(items.begin(), items.end(),
                                   [&](const collage::PlacedItem& item) { return item.id == id; });
      g.push_back(static_cast<std::size_t>(it - items.begin()));
    }
    p.push_back(std::move(g));
  }
  return canonical(p);
}

/// Deterministic clock: 2024-01-01T00:00:00Z, advancing one second per call.
inline collage::Store::Clock stepping_clock() {
  auto t = std::make_shared<collage::Timestamp>(
      std::chrono::sys_days{std::chrono::year{2024} / 1 / 1});
  return [t] {
    const auto now = *t;
    *t += std::chrono::seconds(1);
    return now;
  };
}

inline const std::vector<std::string>& vocabulary() {
  static const std::vector<std::string> words = {
      "solar",   "wind",     "plasma",   "magnetic", "field",    "storm",    "orbit",
      "planet",  "comet",    "galaxy",   "river",    "delta",    "sediment", "erosion",
      "flood",   "harvest",  "grain",    "market",   "price",    "trade",    "engine",
      "turbine", "battery",  "voltage",  "circuit",  "protein",  "enzyme",   "cell",
      "genome",  "mutation", "language", "grammar",  "syntax",   "poetry",   "novel",
      "museum",  "painting", "sculpture", "archive", "library"};
  return words;
}

inline std::string random_text(Rng& rng, std::size_t words) {
  std::string out;
  const auto& v = vocabulary();
  for (std::size_t i = 0; i < words; ++i) {
    if (i) out += ' ';
    out += v[rng.index(v.size())];
  }
  return out;
}

/// A valid collage built through the public Store API: ingests, placements,
/// notes, containers, highlights and removals.
inline collage::Collage random_collage(Rng& rng, std::size_t fragments) {
  collage::Store store(stepping_clock());
  std::vector<collage::FragmentId> placed;
  for (std::size_t i = 0; i < fragments; ++i) {
    const auto roll = rng.index(10);
    if (roll == 0) {
      placed.push_back(store.create_note(random_text(rng, 1 + rng.index(6)),
                                         {rng.uniform(-500, 500), rng.uniform(-500, 500),
                                          rng.uniform(10, 80), rng.uniform(10, 80)}));
      continue;
    }
    collage::IngestRequest r;
    r.kind = roll == 1 ? collage::FragmentKind::Image
             : roll == 2 ? collage::FragmentKind::Document
                         : collage::FragmentKind::TextSnippet;
    if (r.kind != collage::FragmentKind::Image) r.text = random_text(rng, 1 + rng.index(12));
    r.source_url = "https://example.org/page/" + std::to_string(rng.index(1000));
    if (rng.coin()) r.source_locator = std::to_string(rng.index(500)) + "-" + std::to_string(500 + rng.index(500));
    if (rng.coin(0.3)) r.thumbnail_ref = "thumbs/" + std::to_string(i) + ".png";
    if (rng.coin(0.3)) r.favicon_ref = "https://example.org/favicon.ico";
    const auto id = store.ingest_fragment(r);
    if (rng.coin(0.6)) {
      store.place_fragment(id, {rng.uniform(-500, 500), rng.uniform(-500, 500), rng.uniform(10, 80),
                                rng.uniform(10, 80)});
      placed.push_back(id);
      if (rng.coin(0.2)) store.set_highlight(id, true);
    }
  }
  if (placed.size() >= 2 && rng.coin(0.7)) {
    std::vector<collage::FragmentId> members = {placed[0], placed[1]};
    store.create_container("group", {static_cast<std::uint8_t>(rng.index(256)), 128, 64}, members);
  }
  if (!placed.empty() && rng.coin(0.3)) store.remove_fragment(placed.back());
  store.set_viewport({{rng.uniform(-100, 100), rng.uniform(-100, 100)}, rng.uniform(0.1, 3.0), {1280, 800}});
  return *store.snapshot();
}

}  // namespace testing
