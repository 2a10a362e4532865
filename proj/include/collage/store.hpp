#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "collage/geometry.hpp"
#include "collage/textpipe.hpp"
#include "collage/timestamp.hpp"

namespace collage {

using ContainerId = std::string;

enum class FragmentKind { TextSnippet, Image, Document, Note };

std::string_view to_string(FragmentKind kind) noexcept;
std::optional<FragmentKind> fragment_kind_from_string(std::string_view s) noexcept;

struct Fragment {
  FragmentId id;
  FragmentKind kind = FragmentKind::TextSnippet;
  std::string text;
  std::optional<std::string> source_url;
  std::optional<std::string> source_locator;
  Timestamp captured_at{};
  std::optional<std::string> thumbnail_ref;
  std::optional<std::string> favicon_ref;
  std::optional<Placement> placement;  // absent: the fragment sits in the inbox
  bool highlight = false;
  std::optional<ContainerId> container_id;

  friend bool operator==(const Fragment&, const Fragment&) = default;
};

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct Container {
  ContainerId id;
  std::string label;
  Rgb color;
  std::set<FragmentId> member_ids;
  Rect bounds;

  friend bool operator==(const Container&, const Container&) = default;
};

inline constexpr double kContainerPadding = 5.0;

struct Collage {
  std::map<FragmentId, Fragment> fragments;
  std::map<ContainerId, Container> containers;
  std::vector<FragmentId> inbox;  // ascending captured_at
  CorpusStats corpus_stats;
  Viewport viewport;
  std::uint64_t revision = 0;

  const Fragment* find(const FragmentId& id) const {
    const auto it = fragments.find(id);
    return it == fragments.end() ? nullptr : &it->second;
  }
};

/// Equality of the persisted data model: fragments, containers, inbox and
/// viewport. Revision and derived statistics are not compared.
bool model_equal(const Collage& a, const Collage& b);

/// Throws Error(ValidationFailure) naming the first broken invariant.
void validate(const Collage& c);

/// Rebuilds corpus statistics from the fragments' text.
CorpusStats recompute_stats(const Collage& c);

struct IngestRequest {
  FragmentKind kind = FragmentKind::TextSnippet;
  std::string text;
  std::optional<std::string> source_url;
  std::optional<std::string> source_locator;
  std::optional<std::string> thumbnail_ref;
  std::optional<std::string> favicon_ref;
};

struct SourceLink {
  std::string url;
  std::optional<std::string> locator;
};

/// Single-writer owner of a collage. Every mutation produces a new immutable
/// snapshot with a higher revision; snapshots may be shared across threads.
class Store {
 public:
  using Clock = std::function<Timestamp()>;

  explicit Store(Clock clock = now_ms);
  /// Takes ownership of a loaded collage (validated; statistics rebuilt).
  explicit Store(Collage initial, Clock clock = now_ms);

  std::shared_ptr<const Collage> snapshot() const { return current_; }
  std::uint64_t revision() const { return current_->revision; }

  FragmentId ingest_fragment(const IngestRequest& request);
  void place_fragment(const FragmentId& id, const Placement& placement);
  FragmentId create_note(const std::string& text, const Placement& placement);
  ContainerId create_container(const std::string& label, Rgb color,
                               const std::vector<FragmentId>& member_ids);
  /// Also drops the fragment from its container; a container left empty is removed.
  void remove_fragment(const FragmentId& id);
  void set_highlight(const FragmentId& id, bool highlight);
  void set_viewport(const Viewport& viewport);
  /// Swaps in a whole collage (e.g. PUT /collage); revision keeps increasing.
  void replace(Collage collage);

  SourceLink source_link(const FragmentId& id) const;

  void save(const std::filesystem::path& path) const;

 private:
  std::unique_ptr<Collage> draft() const { return std::make_unique<Collage>(*current_); }
  void commit(std::unique_ptr<Collage> next);
  Timestamp next_capture_time() const;

  Clock clock_;
  std::shared_ptr<const Collage> current_;
  std::uint64_t next_fragment_ = 1;
  std::uint64_t next_container_ = 1;
};

}  // namespace collage
