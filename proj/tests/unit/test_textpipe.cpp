#include <doctest.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "collage/error.hpp"
#include "collage/textpipe.hpp"
#include "support.hpp"

using namespace collage;

TEST_CASE("tokenize lowercases, splits on non-alphanumerics and drops short or numeric tokens") {
  CHECK(tokenize("Solar-wind PLASMA, 2024 a x42!") ==
        std::vector<std::string>{"solar", "wind", "plasma", "x42"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("   ...  ").empty());
}

TEST_CASE("token offsets count code points") {
  const auto toks = tokenize_with_offsets("Über café, naïve");
  REQUIRE(toks.size() == 3);
  CHECK(toks[0].text == "über");
  CHECK(toks[0].offset == 0);
  CHECK(toks[0].length == 4);
  CHECK(toks[1].text == "café");
  CHECK(toks[1].offset == 5);
  CHECK(toks[2].offset == 11);
  CHECK(toks[2].length == 5);
}

TEST_CASE("stop list") {
  CHECK(stopwords().size() == 172);
  CHECK(is_stopword("the"));
  CHECK(is_stopword("however"));
  CHECK_FALSE(is_stopword("solar"));
  CHECK(remove_stopwords({"the", "solar", "and", "wind"}) == std::vector<std::string>{"solar", "wind"});
}

TEST_CASE("Porter2 matches the reference Snowball stemmer on the frozen word list") {
  std::ifstream in(std::string(TEST_DATA_DIR) + "/porter2_expected.tsv");
  REQUIRE(in);
  std::string line;
  std::size_t checked = 0;
  std::size_t mismatches = 0;
  while (std::getline(in, line)) {
    const auto tab = line.find('\t');
    if (tab == std::string::npos) continue;
    const auto word = line.substr(0, tab);
    const auto expected = line.substr(tab + 1);
    const auto got = stem(word);
    if (got != expected) {
      ++mismatches;
      MESSAGE(word << ": expected " << expected << ", got " << got);
    }
    ++checked;
  }
  CHECK(checked > 1600);
  CHECK(mismatches == 0);
}

TEST_CASE("Porter2 spot values") {
  CHECK(stem("running") == "run");
  CHECK(stem("generously") == "generous");
  CHECK(stem("skies") == "sky");
  CHECK(stem("news") == "news");
  CHECK(stem("communism") == "communism");
  CHECK(stem("arsenal") == "arsenal");
  CHECK(stem("consolidated") == "consolid");
  CHECK(stem("knightly") == "knight");
}

TEST_CASE("analyze_text counts stems and remembers surface forms") {
  const auto a = analyze_text("Running runners run. The run!");
  CHECK(a.tf.at("run") == 3);
  CHECK(a.tf.at("runner") == 1);
  CHECK_FALSE(a.tf.contains("the"));
  CHECK(a.forms.at("run").at("run") == 2);
  CHECK(a.forms.at("run").at("running") == 1);
}

namespace {

CorpusStats three_docs() {
  CorpusStats s;
  on_fragment_added(s, "d1", "solar wind");
  on_fragment_added(s, "d2", "solar plasma");
  on_fragment_added(s, "d3", "galaxy");
  return s;
}

}  // namespace

TEST_CASE("tf-idf uses tf * ln(N / df)") {
  const auto s = three_docs();
  CHECK(s.n_docs == 3);
  CHECK(s.df.at("solar") == 2);
  const auto v = tfidf(s.tf.at("d1"), s, "d1");
  CHECK(v.owner == "d1");
  CHECK(v.weights.at("solar") == doctest::Approx(std::log(1.5)).epsilon(1e-15));
  CHECK(v.weights.at("wind") == doctest::Approx(std::log(3.0)).epsilon(1e-15));
}

TEST_CASE("terms present in every document carry no weight") {
  CorpusStats s;
  on_fragment_added(s, "a", "solar wind");
  on_fragment_added(s, "b", "solar plasma");
  const auto v = tfidf(s.tf.at("a"), s);
  CHECK_FALSE(v.weights.contains("solar"));
  CHECK(v.weights.contains("wind"));
}

TEST_CASE("a term unknown to the corpus has undefined idf") {
  const auto s = three_docs();
  try {
    (void)tfidf(TermCounts{{"nebula", 1}}, s);
    FAIL("expected UndefinedIdf");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UndefinedIdf);
  }
}

TEST_CASE("empty fragments keep a row but do not count as documents") {
  CorpusStats s;
  on_fragment_added(s, "img", "");
  on_fragment_added(s, "t", "solar");
  CHECK(s.contains("img"));
  CHECK(s.n_docs == 1);
  on_fragment_removed(s, "t");
  CHECK(s.n_docs == 0);
  CHECK(s.df.empty());
  on_fragment_removed(s, "nope");
}

TEST_CASE("re-adding a fragment replaces its row") {
  CorpusStats s;
  on_fragment_added(s, "a", "solar wind");
  on_fragment_added(s, "a", "plasma");
  CorpusStats fresh;
  on_fragment_added(fresh, "a", "plasma");
  CHECK(s == fresh);
}

TEST_CASE("incremental statistics equal a full rebuild after random edits") {
  testing::Rng rng(7);
  CorpusStats inc;
  std::map<FragmentId, std::string> texts;
  for (int op = 0; op < 300; ++op) {
    const auto id = "f" + std::to_string(rng.index(40));
    if (rng.coin(0.65)) {
      const auto text = rng.coin(0.1) ? std::string{} : testing::random_text(rng, 1 + rng.index(8));
      on_fragment_added(inc, id, text);
      texts[id] = text;
    } else {
      on_fragment_removed(inc, id);
      texts.erase(id);
    }
  }
  CorpusStats full;
  for (const auto& [id, text] : texts) on_fragment_added(full, id, text);
  CHECK(inc == full);
}

TEST_CASE("cluster_tf sums member rows and rejects unknown ids") {
  const auto s = three_docs();
  const std::vector<FragmentId> members = {"d1", "d2"};
  const auto tf = cluster_tf(members, s);
  CHECK(tf.at("solar") == 2);
  CHECK(tf.at("wind") == 1);
  const std::vector<FragmentId> bad = {"zz"};
  CHECK_THROWS_AS((void)cluster_tf(bad, s), Error);
}

TEST_CASE("display form prefers the most frequent surface token, then the smallest") {
  CorpusStats s;
  on_fragment_added(s, "a", "Connected connection connects");
  on_fragment_added(s, "b", "connection");
  const std::vector<FragmentId> both = {"a", "b"};
  CHECK(display_form("connect", both, s) == "connection");
  const std::vector<FragmentId> only_a = {"a"};
  CHECK(display_form("connect", only_a, s) == "connected");
  CHECK(display_form("absent", only_a, s) == "absent");
}

TEST_CASE("cluster labels use cluster-level idf") {
  CorpusStats s;
  on_fragment_added(s, "a1", "solar solar wind archive");
  on_fragment_added(s, "a2", "solar plasma archive");
  on_fragment_added(s, "b1", "river delta archive");
  on_fragment_added(s, "b2", "river flood archive");
  const std::vector<ClusterDoc> clusters = {{"A", {"a1", "a2"}}, {"B", {"b1", "b2"}}};
  const auto labels = cluster_labels(clusters, s);
  REQUIRE(labels.size() == 2);
  REQUIRE(!labels[0].empty());
  CHECK(labels[0][0].stem == "solar");
  CHECK(labels[0][0].weight == doctest::Approx(3 * std::log(2.0)));
  CHECK(labels[1][0].stem == "river");
  for (const auto& ls : labels)
    for (const auto& l : ls) CHECK(l.stem != "archiv");
  CHECK(labels[0].size() == 3);
}

TEST_CASE("a lone cluster is labelled by raw frequency") {
  CorpusStats s;
  on_fragment_added(s, "a", "wind wind solar");
  const std::vector<ClusterDoc> clusters = {{"A", {"a"}}};
  const auto labels = cluster_labels(clusters, s);
  REQUIRE(labels.size() == 1);
  REQUIRE(labels[0].size() == 2);
  CHECK(labels[0][0].stem == "wind");
  CHECK(labels[0][0].weight == 2.0);
}

TEST_CASE("label ties break by raw tf, then by stem") {
  CorpusStats s;
  on_fragment_added(s, "a", "zebra apple mango mango");
  on_fragment_added(s, "b", "other");
  const std::vector<ClusterDoc> clusters = {{"A", {"a"}}, {"B", {"b"}}};
  const auto labels = cluster_labels(clusters, s, 3);
  REQUIRE(labels[0].size() == 3);
  CHECK(labels[0][0].stem == "mango");
  CHECK(labels[0][1].stem == "appl");
  CHECK(labels[0][2].stem == "zebra");
}

TEST_CASE("cosine hand values") {
  TermVector u{{{"a", 1.0}, {"b", 1.0}}, "u"};
  TermVector v{{{"b", 1.0}, {"c", 1.0}}, "v"};
  CHECK(std::abs(cosine(u, v) - 0.5) < 1e-12);
  CHECK(cosine(u, v) == cosine(v, u));
  CHECK(std::abs(cosine(u, u) - 1.0) < 1e-12);
  CHECK(cosine(u, TermVector{}) == 0.0);
  TermVector w{{{"a", 3.0}, {"b", 4.0}}, "w"};
  CHECK(cosine(u, w) == doctest::Approx(7.0 / (std::sqrt(2.0) * 5.0)));
}

TEST_CASE("cosine stays in [0, 1] and is symmetric for random vectors") {
  testing::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    TermVector u, v;
    for (int k = 0; k < 6; ++k) {
      if (rng.coin()) u.weights["t" + std::to_string(rng.index(8))] = rng.uniform(0.01, 5);
      if (rng.coin()) v.weights["t" + std::to_string(rng.index(8))] = rng.uniform(0.01, 5);
    }
    const double c = cosine(u, v);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
    CHECK(c == cosine(v, u));
    if (!u.empty()) CHECK(std::abs(cosine(u, u) - 1.0) < 1e-12);
  }
}

TEST_CASE("kwic returns one window per matching token") {
  const std::string text = "Solar storms hit. Then a solar wind arrived.";
  const auto hits = kwic("f1", text, "solar", 6);
  REQUIRE(hits.size() == 2);
  CHECK(hits[0].match_offset == 0);
  CHECK(hits[0].context == "Solar storm");
  CHECK(hits[1].match_offset == 25);
  CHECK(hits[1].context == "hen a solar wind ");
  CHECK(hits[1].fragment_id == "f1");
  CHECK(kwic("f1", text, "comet", 5).empty());
}

TEST_CASE("kwic windows are measured in code points") {
  const std::string text = "café über solar";
  const auto hits = kwic("f", text, "solar", 5);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].match_offset == 10);
  CHECK(hits[0].context == "über solar");
}

TEST_CASE("every kwic context contains a token with the searched stem") {
  testing::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto text = testing::random_text(rng, 20);
    const auto tf = analyze_text(text).tf;
    const auto target = std::next(tf.begin(), static_cast<long>(rng.index(tf.size())))->first;
    const auto hits = kwic("f", text, target, 1 + rng.index(30));
    CHECK(hits.size() == tf.at(target));
    for (const auto& h : hits) CHECK(analyze_text(h.context).tf.contains(target));
  }
}
