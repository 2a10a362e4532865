#include "collage/collage_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "collage/error.hpp"

namespace collage {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(Errc::ValidationFailure, what); }

void expect_keys(const json& j, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) invalid(std::string(where) + " must be an object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      invalid("unknown key '" + key + "' in " + std::string(where));
  }
}

const json& required(const json& j, const char* key, std::string_view where) {
  const auto it = j.find(key);
  if (it == j.end()) invalid(std::string(where) + " lacks '" + key + "'");
  return *it;
}

std::string get_string(const json& j, const char* key, std::string_view where) {
  const auto& v = required(j, key, where);
  if (!v.is_string()) invalid(std::string(where) + "." + key + " must be a string");
  return v.get<std::string>();
}

std::optional<std::string> get_optional_string(const json& j, const char* key,
                                               std::string_view where) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) invalid(std::string(where) + "." + key + " must be a string");
  return it->get<std::string>();
}

double get_number(const json& j, const char* key, std::string_view where) {
  const auto& v = required(j, key, where);
  if (!v.is_number()) invalid(std::string(where) + "." + key + " must be a number");
  return v.get<double>();
}

void put_optional(json& j, const char* key, const std::optional<std::string>& v) {
  if (v) j[key] = *v;
}

Fragment fragment_from_json(const json& j) {
  expect_keys(j, "fragment",
              {"id", "kind", "text", "source_url", "source_locator", "captured_at",
               "thumbnail_ref", "favicon_ref", "placement", "highlight", "container_id"});
  Fragment f;
  f.id = get_string(j, "id", "fragment");
  const auto kind = fragment_kind_from_string(get_string(j, "kind", "fragment"));
  if (!kind) invalid("fragment " + f.id + " has an unknown kind");
  f.kind = *kind;
  f.text = get_string(j, "text", "fragment");
  f.source_url = get_optional_string(j, "source_url", "fragment");
  f.source_locator = get_optional_string(j, "source_locator", "fragment");
  try {
    f.captured_at = parse_rfc3339(get_string(j, "captured_at", "fragment"));
  } catch (const Error& e) {
    invalid(e.what());
  }
  f.thumbnail_ref = get_optional_string(j, "thumbnail_ref", "fragment");
  f.favicon_ref = get_optional_string(j, "favicon_ref", "fragment");
  if (const auto it = j.find("placement"); it != j.end() && !it->is_null())
    f.placement = placement_from_json(*it);
  if (const auto it = j.find("highlight"); it != j.end()) {
    if (!it->is_boolean()) invalid("fragment.highlight must be a boolean");
    f.highlight = it->get<bool>();
  }
  f.container_id = get_optional_string(j, "container_id", "fragment");
  return f;
}

Container container_from_json(const json& j) {
  expect_keys(j, "container", {"id", "label", "color", "member_ids", "bounds"});
  Container c;
  c.id = get_string(j, "id", "container");
  c.label = get_string(j, "label", "container");
  const auto& color = required(j, "color", "container");
  if (!color.is_array() || color.size() != 3) invalid("container.color must be [r, g, b]");
  std::array<std::uint8_t, 3> rgb{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!color[i].is_number_integer() || color[i].get<int>() < 0 || color[i].get<int>() > 255)
      invalid("container.color channels must be integers in 0..255");
    rgb[i] = static_cast<std::uint8_t>(color[i].get<int>());
  }
  c.color = {rgb[0], rgb[1], rgb[2]};
  const auto& members = required(j, "member_ids", "container");
  if (!members.is_array()) invalid("container.member_ids must be an array");
  for (const auto& m : members) {
    if (!m.is_string()) invalid("container.member_ids must hold strings");
    c.member_ids.insert(m.get<std::string>());
  }
  c.bounds = placement_from_json(required(j, "bounds", "container"));
  return c;
}

}  // namespace

json placement_to_json(const Placement& p) {
  return {{"x", p.x}, {"y", p.y}, {"width", p.width}, {"height", p.height}};
}

Placement placement_from_json(const json& j) {
  expect_keys(j, "placement", {"x", "y", "width", "height"});
  return {get_number(j, "x", "placement"), get_number(j, "y", "placement"),
          get_number(j, "width", "placement"), get_number(j, "height", "placement")};
}

json viewport_to_json(const Viewport& v) {
  return {{"center", {{"x", v.center.x}, {"y", v.center.y}}},
          {"scale", v.scale},
          {"screen_size", {{"width", v.screen_size.width}, {"height", v.screen_size.height}}}};
}

Viewport viewport_from_json(const json& j) {
  expect_keys(j, "viewport", {"center", "scale", "screen_size"});
  Viewport v;
  const auto& c = required(j, "center", "viewport");
  expect_keys(c, "viewport.center", {"x", "y"});
  v.center = {get_number(c, "x", "viewport.center"), get_number(c, "y", "viewport.center")};
  v.scale = get_number(j, "scale", "viewport");
  const auto& s = required(j, "screen_size", "viewport");
  expect_keys(s, "viewport.screen_size", {"width", "height"});
  v.screen_size = {get_number(s, "width", "viewport.screen_size"),
                   get_number(s, "height", "viewport.screen_size")};
  return v;
}

json fragment_to_json(const Fragment& f) {
  json j{{"id", f.id},
         {"kind", to_string(f.kind)},
         {"text", f.text},
         {"captured_at", format_rfc3339(f.captured_at)},
         {"highlight", f.highlight}};
  put_optional(j, "source_url", f.source_url);
  put_optional(j, "source_locator", f.source_locator);
  put_optional(j, "thumbnail_ref", f.thumbnail_ref);
  put_optional(j, "favicon_ref", f.favicon_ref);
  if (f.placement) j["placement"] = placement_to_json(*f.placement);
  put_optional(j, "container_id", f.container_id);
  return j;
}

json collage_to_json(const Collage& c) {
  json fragments = json::array();
  for (const auto& [_, f] : c.fragments) fragments.push_back(fragment_to_json(f));
  json containers = json::array();
  for (const auto& [_, ct] : c.containers) {
    containers.push_back({{"id", ct.id},
                          {"label", ct.label},
                          {"color", {ct.color.r, ct.color.g, ct.color.b}},
                          {"member_ids", ct.member_ids},
                          {"bounds", placement_to_json(ct.bounds)}});
  }
  return {{"schema_version", kSchemaVersion},
          {"fragments", std::move(fragments)},
          {"containers", std::move(containers)},
          {"inbox", c.inbox},
          {"viewport", viewport_to_json(c.viewport)}};
}

Collage collage_from_json(const json& j) {
  if (!j.is_object()) invalid("collage must be a JSON object");
  const auto version = j.find("schema_version");
  if (version == j.end() || !version->is_number_integer())
    invalid("collage lacks an integer schema_version");
  if (version->get<long long>() != kSchemaVersion)
    throw Error(Errc::SchemaVersionMismatch,
                "expected schema_version " + std::to_string(kSchemaVersion) + ", got " +
                    version->dump());
  expect_keys(j, "collage", {"schema_version", "fragments", "containers", "inbox", "viewport"});

  Collage c;
  const auto& fragments = required(j, "fragments", "collage");
  if (!fragments.is_array()) invalid("collage.fragments must be an array");
  for (const auto& fj : fragments) {
    auto f = fragment_from_json(fj);
    if (c.fragments.contains(f.id)) invalid("duplicate fragment id " + f.id);
    auto id = f.id;
    c.fragments.emplace(std::move(id), std::move(f));
  }
  const auto& containers = required(j, "containers", "collage");
  if (!containers.is_array()) invalid("collage.containers must be an array");
  for (const auto& cj : containers) {
    auto ct = container_from_json(cj);
    if (c.containers.contains(ct.id)) invalid("duplicate container id " + ct.id);
    auto id = ct.id;
    c.containers.emplace(std::move(id), std::move(ct));
  }
  const auto& inbox = required(j, "inbox", "collage");
  if (!inbox.is_array()) invalid("collage.inbox must be an array");
  for (const auto& id : inbox) {
    if (!id.is_string()) invalid("collage.inbox must hold strings");
    c.inbox.push_back(id.get<std::string>());
  }
  c.viewport = viewport_from_json(required(j, "viewport", "collage"));
  validate(c);
  c.corpus_stats = recompute_stats(c);
  return c;
}

void save_collage(const std::filesystem::path& path, const Collage& c) {
  const auto tmp = std::filesystem::path(path).concat(".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoFailure, "cannot write " + tmp.string());
    out << collage_to_json(c).dump(2) << '\n';
    if (!out) throw Error(Errc::IoFailure, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(Errc::IoFailure, "cannot replace " + path.string() + ": " + ec.message());
}

Collage load_collage(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoFailure, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    invalid(std::string("malformed JSON: ") + e.what());
  }
  return collage_from_json(j);
}

}  // namespace collage
