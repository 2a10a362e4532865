#include "collage/store.hpp"

#include <algorithm>
#include <charconv>

#include "collage/collage_io.hpp"
#include "collage/error.hpp"

namespace collage {

std::string_view to_string(FragmentKind kind) noexcept {
  switch (kind) {
    case FragmentKind::TextSnippet: return "text_snippet";
    case FragmentKind::Image: return "image";
    case FragmentKind::Document: return "document";
    case FragmentKind::Note: return "note";
  }
  return "unknown";
}

std::optional<FragmentKind> fragment_kind_from_string(std::string_view s) noexcept {
  if (s == "text_snippet") return FragmentKind::TextSnippet;
  if (s == "image") return FragmentKind::Image;
  if (s == "document") return FragmentKind::Document;
  if (s == "note") return FragmentKind::Note;
  return std::nullopt;
}

bool model_equal(const Collage& a, const Collage& b) {
  return a.fragments == b.fragments && a.containers == b.containers && a.inbox == b.inbox &&
         a.viewport == b.viewport;
}

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(Errc::ValidationFailure, what); }

Rect member_bounds(const Collage& c, const std::set<FragmentId>& members) {
  std::optional<Rect> box;
  for (const auto& id : members) {
    const auto& p = *c.fragments.at(id).placement;
    box = box ? box->united(p) : p;
  }
  return box->inflated(kContainerPadding);
}

// Largest N among ids of the form <prefix><N>.
std::uint64_t max_numeric_suffix(const auto& map, char prefix) {
  std::uint64_t best = 0;
  for (const auto& [id, _] : map) {
    if (id.size() < 2 || id[0] != prefix) continue;
    std::uint64_t n = 0;
    const auto* first = id.data() + 1;
    const auto* last = id.data() + id.size();
    const auto [ptr, ec] = std::from_chars(first, last, n);
    if (ec == std::errc{} && ptr == last) best = std::max(best, n);
  }
  return best;
}

void check_text_rules(FragmentKind kind, const std::string& text,
                      const std::optional<std::string>& source_url) {
  if (kind == FragmentKind::Note) {
    if (source_url) throw Error(Errc::UnexpectedSource, "notes carry no source link");
    if (text.empty()) throw Error(Errc::EmptyText, "a note needs text");
  } else {
    if (!source_url || source_url->empty())
      throw Error(Errc::MissingSource, "captured fragments need a source url");
    if ((kind == FragmentKind::TextSnippet || kind == FragmentKind::Document) && text.empty())
      throw Error(Errc::EmptyText, "text fragments need text");
  }
}

void check_placement(const Placement& p) {
  if (!p.valid())
    throw Error(Errc::NonPositiveExtent, "placement needs finite coordinates and positive extents");
}

}  // namespace

void validate(const Collage& c) {
  std::set<FragmentId> in_inbox;
  for (const auto& id : c.inbox) {
    if (!c.fragments.contains(id)) invalid("inbox id " + id + " is not a fragment");
    if (!in_inbox.insert(id).second) invalid("inbox lists " + id + " twice");
  }
  for (std::size_t i = 1; i < c.inbox.size(); ++i)
    if (c.fragments.at(c.inbox[i]).captured_at < c.fragments.at(c.inbox[i - 1]).captured_at)
      invalid("inbox is not in capture order");

  for (const auto& [id, f] : c.fragments) {
    if (id != f.id) invalid("fragment key " + id + " does not match its id " + f.id);
    if (f.kind == FragmentKind::Note) {
      if (f.source_url) invalid("note " + id + " has a source url");
      if (f.text.empty()) invalid("note " + id + " has no text");
    } else if (!f.source_url || f.source_url->empty()) {
      invalid("fragment " + id + " has no source url");
    }
    if (f.placement.has_value() == in_inbox.contains(id))
      invalid("fragment " + id + " must be either placed or in the inbox");
    if (f.placement && !f.placement->valid()) invalid("fragment " + id + " has a bad placement");
    if (f.container_id) {
      const auto ct = c.containers.find(*f.container_id);
      if (ct == c.containers.end() || !ct->second.member_ids.contains(id))
        invalid("fragment " + id + " names container " + *f.container_id + " without membership");
    }
  }

  for (const auto& [id, ct] : c.containers) {
    if (id != ct.id) invalid("container key " + id + " does not match its id " + ct.id);
    if (ct.member_ids.empty()) invalid("container " + id + " has no members");
    if (!ct.bounds.valid()) invalid("container " + id + " has bad bounds");
    for (const auto& m : ct.member_ids) {
      const auto* f = c.find(m);
      if (!f) invalid("container " + id + " member " + m + " is not a fragment");
      if (!f->placement) invalid("container " + id + " member " + m + " is in the inbox");
      if (f->container_id != id) invalid("member " + m + " does not point back to " + id);
      if (!ct.bounds.contains(*f->placement))
        invalid("container " + id + " bounds do not contain member " + m);
    }
  }

  if (!c.viewport.valid()) invalid("viewport needs a positive scale and screen size");
}

CorpusStats recompute_stats(const Collage& c) {
  CorpusStats stats;
  for (const auto& [id, f] : c.fragments) on_fragment_added(stats, id, f.text);
  return stats;
}

Store::Store(Clock clock) : Store(Collage{}, std::move(clock)) {}

Store::Store(Collage initial, Clock clock) : clock_(std::move(clock)) {
  validate(initial);
  initial.corpus_stats = recompute_stats(initial);
  next_fragment_ = max_numeric_suffix(initial.fragments, 'f') + 1;
  next_container_ = max_numeric_suffix(initial.containers, 'c') + 1;
  current_ = std::make_shared<const Collage>(std::move(initial));
}

void Store::commit(std::unique_ptr<Collage> next) {
  next->revision = current_->revision + 1;
  current_ = std::shared_ptr<const Collage>(std::move(next));
}

Timestamp Store::next_capture_time() const {
  Timestamp t = clock_();
  for (const auto& [_, f] : current_->fragments) t = std::max(t, f.captured_at);
  return t;
}

FragmentId Store::ingest_fragment(const IngestRequest& r) {
  check_text_rules(r.kind, r.text, r.source_url);
  auto next = draft();
  Fragment f;
  f.id = "f" + std::to_string(next_fragment_);
  f.kind = r.kind;
  f.text = r.text;
  f.source_url = r.source_url;
  f.source_locator = r.source_locator;
  f.thumbnail_ref = r.thumbnail_ref;
  f.favicon_ref = r.favicon_ref;
  f.captured_at = next_capture_time();
  on_fragment_added(next->corpus_stats, f.id, f.text);
  next->inbox.push_back(f.id);
  const auto id = f.id;
  next->fragments.emplace(id, std::move(f));
  ++next_fragment_;
  commit(std::move(next));
  return id;
}

void Store::place_fragment(const FragmentId& id, const Placement& placement) {
  if (!current_->fragments.contains(id)) throw Error(Errc::UnknownId, "no fragment " + id);
  check_placement(placement);
  auto next = draft();
  auto& f = next->fragments.at(id);
  f.placement = placement;
  std::erase(next->inbox, id);
  if (f.container_id) {
    auto& ct = next->containers.at(*f.container_id);
    ct.bounds = member_bounds(*next, ct.member_ids);
  }
  commit(std::move(next));
}

FragmentId Store::create_note(const std::string& text, const Placement& placement) {
  if (text.empty()) throw Error(Errc::EmptyText, "a note needs text");
  check_placement(placement);
  auto next = draft();
  Fragment f;
  f.id = "f" + std::to_string(next_fragment_);
  f.kind = FragmentKind::Note;
  f.text = text;
  f.captured_at = next_capture_time();
  f.placement = placement;
  on_fragment_added(next->corpus_stats, f.id, f.text);
  const auto id = f.id;
  next->fragments.emplace(id, std::move(f));
  ++next_fragment_;
  commit(std::move(next));
  return id;
}

ContainerId Store::create_container(const std::string& label, Rgb color,
                                    const std::vector<FragmentId>& member_ids) {
  if (member_ids.empty()) throw Error(Errc::EmptyMembers, "a container needs members");
  for (const auto& m : member_ids) {
    const auto* f = current_->find(m);
    if (!f) throw Error(Errc::UnknownId, "no fragment " + m);
    if (!f->placement) throw Error(Errc::MemberInInbox, "fragment " + m + " is still in the inbox");
  }
  auto next = draft();
  Container ct;
  ct.id = "c" + std::to_string(next_container_);
  ct.label = label;
  ct.color = color;
  ct.member_ids = {member_ids.begin(), member_ids.end()};
  // A fragment belongs to at most one container; joining a new one leaves the old.
  for (const auto& m : ct.member_ids) {
    auto& f = next->fragments.at(m);
    if (f.container_id) {
      auto old = next->containers.find(*f.container_id);
      old->second.member_ids.erase(m);
      if (old->second.member_ids.empty())
        next->containers.erase(old);
      else
        old->second.bounds = member_bounds(*next, old->second.member_ids);
    }
    f.container_id = ct.id;
  }
  ct.bounds = member_bounds(*next, ct.member_ids);
  const auto id = ct.id;
  next->containers.emplace(id, std::move(ct));
  ++next_container_;
  commit(std::move(next));
  return id;
}

void Store::remove_fragment(const FragmentId& id) {
  const auto* f = current_->find(id);
  if (!f) throw Error(Errc::UnknownId, "no fragment " + id);
  auto next = draft();
  if (f->container_id) {
    auto ct = next->containers.find(*f->container_id);
    ct->second.member_ids.erase(id);
    if (ct->second.member_ids.empty())
      next->containers.erase(ct);
    else
      ct->second.bounds = member_bounds(*next, ct->second.member_ids);
  }
  std::erase(next->inbox, id);
  on_fragment_removed(next->corpus_stats, id);
  next->fragments.erase(id);
  commit(std::move(next));
}

void Store::set_highlight(const FragmentId& id, bool highlight) {
  if (!current_->fragments.contains(id)) throw Error(Errc::UnknownId, "no fragment " + id);
  auto next = draft();
  next->fragments.at(id).highlight = highlight;
  commit(std::move(next));
}

void Store::set_viewport(const Viewport& viewport) {
  if (!viewport.valid()) throw Error(Errc::InvalidArgument, "viewport needs a positive scale");
  auto next = draft();
  next->viewport = viewport;
  commit(std::move(next));
}

void Store::replace(Collage collage) {
  validate(collage);
  collage.corpus_stats = recompute_stats(collage);
  next_fragment_ = std::max(next_fragment_, max_numeric_suffix(collage.fragments, 'f') + 1);
  next_container_ = std::max(next_container_, max_numeric_suffix(collage.containers, 'c') + 1);
  commit(std::make_unique<Collage>(std::move(collage)));
}

SourceLink Store::source_link(const FragmentId& id) const {
  const auto* f = current_->find(id);
  if (!f) throw Error(Errc::UnknownId, "no fragment " + id);
  if (f->kind == FragmentKind::Note || !f->source_url)
    throw Error(Errc::NoSource, "fragment " + id + " is a note");
  return {*f->source_url, f->source_locator};
}

void Store::save(const std::filesystem::path& path) const { save_collage(path, *current_); }

}  // namespace collage
