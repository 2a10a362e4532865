#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "collage/collage_io.hpp"
#include "collage/error.hpp"
#include "collage/store.hpp"
#include "support.hpp"

using namespace collage;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvalidArgument;
}

IngestRequest snippet(std::string text, std::string url = "https://example.org/a") {
  IngestRequest r;
  r.kind = FragmentKind::TextSnippet;
  r.text = std::move(text);
  r.source_url = std::move(url);
  return r;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("collage_test_" + name);
}

}  // namespace

TEST_CASE("ingest appends to the inbox and bumps the revision") {
  Store s(testing::stepping_clock());
  const auto id = s.ingest_fragment(snippet("solar wind plasma"));
  const auto snap = s.snapshot();
  CHECK(snap->inbox == std::vector<FragmentId>{id});
  CHECK(snap->revision == 1);
  CHECK(snap->corpus_stats.tf.at(id).at("solar") == 1);
  IngestRequest note;
  note.kind = FragmentKind::Note;
  note.text = "my hypothesis";
  const auto n = s.ingest_fragment(note);
  CHECK(s.snapshot()->fragments.at(n).kind == FragmentKind::Note);
}

TEST_CASE("ingest validation") {
  Store s(testing::stepping_clock());
  CHECK(code_of([&] { s.ingest_fragment(snippet("")); }) == Errc::EmptyText);
  IngestRequest no_url;
  no_url.text = "x";
  CHECK(code_of([&] { s.ingest_fragment(no_url); }) == Errc::MissingSource);
  IngestRequest note;
  note.kind = FragmentKind::Note;
  note.text = "n";
  note.source_url = "https://x";
  CHECK(code_of([&] { s.ingest_fragment(note); }) == Errc::UnexpectedSource);
  IngestRequest image;
  image.kind = FragmentKind::Image;
  image.source_url = "https://example.org/i.png";
  CHECK_NOTHROW(s.ingest_fragment(image));
  CHECK(s.revision() == 1);
}

TEST_CASE("placing moves a fragment out of the inbox; repeating is idempotent") {
  Store s(testing::stepping_clock());
  const auto id = s.ingest_fragment(snippet("text"));
  const auto stats_before = s.snapshot()->corpus_stats;
  s.place_fragment(id, {5, 5, 100, 60});
  const auto once = *s.snapshot();
  s.place_fragment(id, {5, 5, 100, 60});
  const auto twice = *s.snapshot();
  CHECK(once.inbox.empty());
  CHECK(model_equal(once, twice));
  CHECK(twice.revision == once.revision + 1);
  CHECK(twice.corpus_stats == stats_before);
  CHECK(code_of([&] { s.place_fragment("f9", {0, 0, 1, 1}); }) == Errc::UnknownId);
  CHECK(code_of([&] { s.place_fragment(id, {0, 0, 0, 1}); }) == Errc::NonPositiveExtent);
}

TEST_CASE("notes are placed directly and join the text statistics") {
  Store s(testing::stepping_clock());
  const auto id = s.create_note("my hypothesis", {0, 0, 50, 50});
  const auto snap = s.snapshot();
  CHECK(snap->inbox.empty());
  CHECK(snap->fragments.at(id).placement.has_value());
  CHECK(snap->corpus_stats.tf.at(id).contains("hypothesi"));
  CHECK(code_of([&] { s.create_note("", {0, 0, 1, 1}); }) == Errc::EmptyText);
}

TEST_CASE("container bounds are the padded member bounding box") {
  Store s(testing::stepping_clock());
  const auto a = s.create_note("a note", {0, 0, 10, 10});
  const auto b = s.create_note("b note", {20, 0, 10, 10});
  const auto c = s.create_container("group", {255, 0, 0}, {a, b});
  CHECK(s.snapshot()->containers.at(c).bounds == Rect{-5, -5, 40, 20});
  const auto single = s.create_container("one", {0, 0, 255}, {a});
  CHECK(s.snapshot()->containers.at(single).bounds == Rect{-5, -5, 20, 20});
  CHECK(s.snapshot()->containers.at(c).member_ids == std::set<FragmentId>{b});
  CHECK(code_of([&] { s.create_container("x", {}, {}); }) == Errc::EmptyMembers);
  CHECK(code_of([&] { s.create_container("x", {}, {"nope"}); }) == Errc::UnknownId);
  const auto inboxed = s.ingest_fragment(snippet("waiting"));
  CHECK(code_of([&] { s.create_container("x", {}, {inboxed}); }) == Errc::MemberInInbox);
}

TEST_CASE("moving a member recomputes its container bounds") {
  Store s(testing::stepping_clock());
  const auto a = s.create_note("a", {0, 0, 10, 10});
  const auto b = s.create_note("b", {20, 0, 10, 10});
  const auto c = s.create_container("g", {}, {a, b});
  s.place_fragment(b, {100, 100, 10, 10});
  CHECK(s.snapshot()->containers.at(c).bounds == Rect{-5, -5, 120, 120});
  validate(*s.snapshot());
}

TEST_CASE("removing a fragment drops it from containers and statistics") {
  Store s(testing::stepping_clock());
  const auto a = s.create_note("solar", {0, 0, 10, 10});
  const auto b = s.create_note("wind", {20, 0, 10, 10});
  const auto c = s.create_container("g", {}, {a});
  s.remove_fragment(a);
  const auto snap = s.snapshot();
  CHECK_FALSE(snap->containers.contains(c));
  CHECK_FALSE(snap->corpus_stats.contains(a));
  CHECK(snap->corpus_stats.n_docs == 1);
  CHECK(snap->fragments.contains(b));
  CHECK(code_of([&] { s.remove_fragment(a); }) == Errc::UnknownId);
}

TEST_CASE("source links round-trip; notes have none") {
  Store s(testing::stepping_clock());
  auto r = snippet("text", "https://example.org/x");
  r.source_locator = "120-180";
  const auto id = s.ingest_fragment(r);
  const auto link = s.source_link(id);
  CHECK(link.url == "https://example.org/x");
  CHECK(link.locator == std::optional<std::string>("120-180"));
  const auto note = s.create_note("n", {0, 0, 1, 1});
  CHECK(code_of([&] { (void)s.source_link(note); }) == Errc::NoSource);
  CHECK(code_of([&] { (void)s.source_link("f404"); }) == Errc::UnknownId);
}

TEST_CASE("snapshots are immutable while the store moves on") {
  Store s(testing::stepping_clock());
  const auto before = s.snapshot();
  s.ingest_fragment(snippet("text"));
  CHECK(before->fragments.empty());
  CHECK(before->revision == 0);
  CHECK(s.snapshot()->revision == 1);
}

TEST_CASE("inbox stays in capture order and revisions strictly increase under random edits") {
  testing::Rng rng(21);
  Store s(testing::stepping_clock());
  std::uint64_t last = s.revision();
  for (int op = 0; op < 300; ++op) {
    const auto snap = s.snapshot();
    const auto roll = rng.index(4);
    try {
      if (roll == 0 || snap->fragments.empty()) {
        s.ingest_fragment(snippet(testing::random_text(rng, 3)));
      } else {
        auto it = snap->fragments.begin();
        std::advance(it, static_cast<long>(rng.index(snap->fragments.size())));
        if (roll == 1)
          s.place_fragment(it->first, {rng.uniform(0, 100), rng.uniform(0, 100), 10, 10});
        else if (roll == 2)
          s.remove_fragment(it->first);
        else
          s.create_container("g", {}, {it->first});
      }
    } catch (const Error& e) {
      CHECK(e.code() == Errc::MemberInInbox);
      continue;
    }
    CHECK(s.revision() > last);
    last = s.revision();
    const auto now = s.snapshot();
    validate(*now);
    CHECK(now->corpus_stats == recompute_stats(*now));
  }
}

TEST_CASE("ids stay unique across save and load") {
  Store s(testing::stepping_clock());
  s.ingest_fragment(snippet("a"));
  s.ingest_fragment(snippet("b"));
  Store reloaded(*s.snapshot(), testing::stepping_clock());
  const auto id = reloaded.ingest_fragment(snippet("c"));
  CHECK(id == "f3");
}

TEST_CASE("save and load preserve the model") {
  testing::Rng rng(99);
  for (int i = 0; i < 20; ++i) {
    const auto c = testing::random_collage(rng, rng.index(30));
    const auto path = temp_file("roundtrip.json");
    save_collage(path, c);
    const auto back = load_collage(path);
    CHECK(model_equal(c, back));
    CHECK(back.corpus_stats == recompute_stats(c));
    std::filesystem::remove(path);
  }
}

TEST_CASE("empty collage round-trip") {
  const auto path = temp_file("empty.json");
  save_collage(path, Collage{});
  CHECK(model_equal(load_collage(path), Collage{}));
  std::filesystem::remove(path);
}

TEST_CASE("load rejects broken files") {
  const auto path = temp_file("broken.json");
  const auto write = [&](const std::string& body) {
    std::ofstream(path) << body;
  };
  const std::string viewport =
      R"("viewport": {"center": {"x": 0, "y": 0}, "scale": 1, "screen_size": {"width": 1280, "height": 800}})";

  write(R"({"schema_version": 1, "fragments": [], "containers": [], "inbox": ["f1"], )" + viewport + "}");
  CHECK(code_of([&] { load_collage(path); }) == Errc::ValidationFailure);

  write(R"({"schema_version": 2, "fragments": [], "containers": [], "inbox": [], )" + viewport + "}");
  CHECK(code_of([&] { load_collage(path); }) == Errc::SchemaVersionMismatch);

  write(R"({"schema_version": 1, "fragments": [], "containers": [], "inbox": [], "extra": 1, )" + viewport + "}");
  CHECK(code_of([&] { load_collage(path); }) == Errc::ValidationFailure);

  write("{not json");
  CHECK(code_of([&] { load_collage(path); }) == Errc::ValidationFailure);

  std::filesystem::remove(path);
  CHECK(code_of([&] { load_collage(path); }) == Errc::IoFailure);
}

TEST_CASE("collage JSON uses the documented field names") {
  Store s(testing::stepping_clock());
  const auto id = s.ingest_fragment(snippet("solar"));
  s.place_fragment(id, {1, 2, 3, 4});
  const auto j = collage_to_json(*s.snapshot());
  CHECK(j.at("schema_version") == 1);
  const auto& f = j.at("fragments").at(0);
  CHECK(f.at("id") == id);
  CHECK(f.at("kind") == "text_snippet");
  CHECK(f.at("captured_at") == "2024-01-01T00:00:00.000Z");
  CHECK(f.at("placement").at("width") == 3.0);
  CHECK(f.at("highlight") == false);
  CHECK_FALSE(f.contains("container_id"));
}
