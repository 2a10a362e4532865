#include "collage/service.hpp"

#include <httplib.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <regex>

#include "collage/collage_io.hpp"
#include "collage/error.hpp"
#include "collage/explore.hpp"
#include "collage/view_json.hpp"

namespace collage {

using nlohmann::json;

std::filesystem::path default_data_path() {
  if (const char* env = std::getenv("IC_DATA"); env && *env) return env;
  return kDefaultDataFile;
}

namespace {

struct ParsedUrl {
  std::string scheme;
  std::string host;  // with :port when given
  std::string path;  // starts with '/'
};

std::optional<ParsedUrl> parse_url(std::string_view url) {
  static const std::regex re(R"(^(https?)://([^/?#]+)([^#]*))", std::regex::icase);
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_search(url.begin(), url.end(), m, re)) return std::nullopt;
  ParsedUrl out{m[1].str(), m[2].str(), m[3].str()};
  std::transform(out.scheme.begin(), out.scheme.end(), out.scheme.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (out.path.empty()) out.path = "/";
  if (out.path.front() == '?') out.path.insert(out.path.begin(), '/');
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

void append_utf8(std::string& out, unsigned long cp) {
  if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string decode_entities(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out.push_back(s[i]);
      continue;
    }
    const auto semi = s.find(';', i);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back('&');
      continue;
    }
    const std::string name(s.substr(i + 1, semi - i - 1));
    if (!name.empty() && name[0] == '#') {
      const bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
      char* end = nullptr;
      const std::string digits = name.substr(hex ? 2 : 1);
      const unsigned long cp = std::strtoul(digits.c_str(), &end, hex ? 16 : 10);
      if (digits.empty() || *end != '\0') {
        out.push_back('&');
        continue;
      }
      append_utf8(out, cp);
    } else if (name == "amp") {
      out.push_back('&');
    } else if (name == "lt") {
      out.push_back('<');
    } else if (name == "gt") {
      out.push_back('>');
    } else if (name == "quot") {
      out.push_back('"');
    } else if (name == "apos") {
      out.push_back('\'');
    } else if (name == "nbsp") {
      out.push_back(' ');
    } else {
      out.push_back('&');
      continue;
    }
    i = semi;
  }
  return out;
}

std::optional<std::string> attribute(std::string_view tag, std::string_view name) {
  const std::regex re("\\s" + std::string(name) + R"re(\s*=\s*(?:"([^"]*)"|'([^']*)'|([^\s>]+)))re",
                      std::regex::icase);
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_search(tag.begin(), tag.end(), m, re)) return std::nullopt;
  for (int g = 1; g <= 3; ++g)
    if (m[g].matched) return decode_entities(m[g].str());
  return std::nullopt;
}

std::string resolve_url(const ParsedUrl& base, const std::string& href) {
  if (parse_url(href)) return href;
  if (href.rfind("//", 0) == 0) return base.scheme + ":" + href;
  const std::string origin = base.scheme + "://" + base.host;
  if (!href.empty() && href.front() == '/') return origin + href;
  std::string dir = base.path.substr(0, base.path.find('?'));
  dir = dir.substr(0, dir.rfind('/') + 1);
  return origin + dir + href;
}

}  // namespace

std::string html_to_text(std::string_view html) {
  const std::string lowered = lower(html);
  std::string raw;
  std::size_t i = 0;
  while (i < html.size()) {
    if (html[i] != '<') {
      raw.push_back(html[i++]);
      continue;
    }
    if (lowered.compare(i, 4, "<!--") == 0) {
      const auto end = lowered.find("-->", i + 4);
      i = end == std::string::npos ? html.size() : end + 3;
      raw.push_back(' ');
      continue;
    }
    bool skipped = false;
    for (const std::string_view element : {"script", "style"}) {
      if (lowered.compare(i + 1, element.size(), element) != 0) continue;
      const std::size_t after = i + 1 + element.size();
      if (after < lowered.size() && std::isalnum(static_cast<unsigned char>(lowered[after]))) continue;
      const auto close = lowered.find("</" + std::string(element), after);
      const auto end = close == std::string::npos ? std::string::npos : lowered.find('>', close);
      i = end == std::string::npos ? html.size() : end + 1;
      skipped = true;
      break;
    }
    if (!skipped) {
      const auto end = html.find('>', i);
      i = end == std::string_view::npos ? html.size() : end + 1;
    }
    raw.push_back(' ');
  }
  const std::string text = decode_entities(raw);
  std::string out;
  bool pending_space = false;
  for (const char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(ch);
  }
  return out;
}

std::string favicon_url(std::string_view page_url, std::string_view html) {
  const auto base = parse_url(page_url);
  if (!base) throw Error(Errc::InvalidArgument, "not an http(s) url: " + std::string(page_url));
  static const std::regex link_re(R"(<link\b[^>]*>)", std::regex::icase);
  for (std::regex_iterator<std::string_view::const_iterator> it(html.begin(), html.end(), link_re),
       end;
       it != end; ++it) {
    const std::string tag = it->str();
    const auto rel = attribute(tag, "rel");
    if (!rel) continue;
    const std::string rel_lower = lower(*rel);
    if (rel_lower.find("icon") == std::string::npos) continue;
    if (const auto href = attribute(tag, "href"); href && !href->empty())
      return resolve_url(*base, *href);
  }
  return base->scheme + "://" + base->host + "/favicon.ico";
}

FetchedPage fetch_url(const std::string& url) {
  const auto parsed = parse_url(url);
  if (!parsed) throw Error(Errc::InvalidArgument, "not an http(s) url: " + url);
  httplib::Client client(parsed->scheme + "://" + parsed->host);
  client.set_follow_location(true);
  client.set_connection_timeout(10);
  client.set_read_timeout(20);
  const auto res = client.Get(parsed->path);
  if (!res) throw Error(Errc::FetchFailure, url + ": " + httplib::to_string(res.error()));
  if (res->status < 200 || res->status >= 300)
    throw Error(Errc::FetchFailure, url + ": HTTP " + std::to_string(res->status));
  return {url, res->body};
}

IngestRequest request_from_page(const FetchedPage& page) {
  IngestRequest r;
  r.kind = FragmentKind::Document;
  r.text = html_to_text(page.body);
  r.source_url = page.url;
  r.favicon_ref = favicon_url(page.url, page.body);
  return r;
}

namespace {

int status_for(Errc code) {
  switch (code) {
    case Errc::UnknownId:
    case Errc::UnknownSelection: return 404;
    case Errc::RevisionConflict:
    case Errc::Superseded: return 409;
    case Errc::IoFailure: return 500;
    default: return 400;
  }
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code, std::string_view message) {
  send_json(res, status, {{"error", code}, {"message", message}});
}

template <class F>
httplib::Server::Handler guarded(F f) {
  return [f = std::move(f)](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      send_error(res, status_for(e.code()), to_string(e.code()), e.what());
    } catch (const json::exception& e) {
      send_error(res, 400, "InvalidArgument", e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, "Internal", e.what());
    }
  };
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  auto j = json::parse(req.body, nullptr, false);
  if (j.is_discarded()) throw Error(Errc::InvalidArgument, "request body is not valid JSON");
  if (!j.is_object()) throw Error(Errc::InvalidArgument, "request body must be a JSON object");
  return j;
}

std::optional<double> query_number(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) return std::nullopt;
  const std::string v = req.get_param_value(key);
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || !std::isfinite(d))
    throw Error(Errc::InvalidArgument, std::string("query parameter ") + key + " is not a number");
  return d;
}

std::optional<std::uint64_t> expected_revision(const httplib::Request& req, const json& body) {
  if (body.contains("expected_revision")) {
    const auto& v = body["expected_revision"];
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
      throw Error(Errc::InvalidArgument, "expected_revision must be a non-negative integer");
    return v.get<std::uint64_t>();
  }
  if (req.has_param("expected_revision")) {
    const auto d = query_number(req, "expected_revision");
    if (*d < 0 || std::floor(*d) != *d)
      throw Error(Errc::InvalidArgument, "expected_revision must be a non-negative integer");
    return static_cast<std::uint64_t>(*d);
  }
  return std::nullopt;
}

std::optional<std::string> optional_string(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_string()) throw Error(Errc::InvalidArgument, std::string(key) + " must be a string");
  return j[key].get<std::string>();
}

std::string required_string(const json& j, const char* key) {
  auto v = optional_string(j, key);
  if (!v) throw Error(Errc::InvalidArgument, std::string("missing ") + key);
  return *v;
}

Selection selection_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw Error(Errc::InvalidArgument, "selection must be kind:id");
    const auto kind = selection_kind_from_string(std::string_view(s).substr(0, colon));
    if (!kind) throw Error(Errc::InvalidArgument, "unknown selection kind");
    return {*kind, s.substr(colon + 1)};
  }
  if (!j.is_object()) throw Error(Errc::InvalidArgument, "selection must be an object or kind:id");
  const auto kind = selection_kind_from_string(required_string(j, "kind"));
  if (!kind) throw Error(Errc::InvalidArgument, "unknown selection kind");
  return {*kind, required_string(j, "id")};
}

Store open_store(const std::filesystem::path& path, const Store::Clock& clock) {
  if (!path.empty() && std::filesystem::exists(path)) return Store(load_collage(path), clock);
  return Store(clock);
}

}  // namespace

Service::Service(ServiceConfig config, Store::Clock clock, Fetcher fetcher)
    : config_(std::move(config)),
      clock_(std::move(clock)),
      fetcher_(std::move(fetcher)),
      server_(std::make_unique<httplib::Server>()),
      store_(open_store(config_.data_path, clock_)),
      published_(store_.snapshot()) {
  if (!(config_.eps_screen_px > 0.0)) throw Error(Errc::InvalidArgument, "eps must be positive");
  if (!config_.events_path.empty() && std::filesystem::exists(config_.events_path)) {
    std::ifstream in(config_.events_path);
    if (!in) throw Error(Errc::IoFailure, "cannot read " + config_.events_path.string());
    activity_ = ActivityLog::read_tsv(in);
  }
  install_routes();
}

Service::~Service() { stop(); }

bool Service::listen(const std::string& host, int port) {
  if (bind(host, port) < 0) return false;
  return serve();
}

int Service::bind(const std::string& host, int port) {
  port_ = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  return port_;
}

bool Service::serve() { return server_->listen_after_bind(); }

void Service::stop() {
  if (server_) server_->stop();
}

void Service::wait_until_ready() const { server_->wait_until_ready(); }

std::shared_ptr<const Collage> Service::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return published_;
}

Viewport Service::last_viewport() const {
  std::lock_guard lock(snapshot_mutex_);
  return last_viewport_ ? *last_viewport_ : published_->viewport;
}

template <class Mutation>
std::uint64_t Service::mutate(std::optional<std::uint64_t> expected, Mutation&& m) {
  std::lock_guard write(write_mutex_);
  if (expected && *expected != store_.revision())
    throw Error(Errc::RevisionConflict, "expected revision " + std::to_string(*expected) +
                                            ", current is " + std::to_string(store_.revision()));
  std::forward<Mutation>(m)();
  const auto snap = store_.snapshot();
  {
    std::lock_guard lock(snapshot_mutex_);
    published_ = snap;
  }
  if (!config_.data_path.empty()) save_collage(config_.data_path, *snap);
  return snap->revision;
}

void Service::record_event(const std::string& user_key, EventType type, std::optional<Timestamp> at) {
  std::lock_guard write(write_mutex_);
  const Timestamp ts = at.value_or(clock_());
  activity_.record(user_key, type, ts);
  if (config_.events_path.empty()) return;
  std::ofstream out(config_.events_path, std::ios::app);
  out << format_rfc3339(ts) << '\t' << user_key << '\t' << to_string(type) << '\n';
  if (!out) throw Error(Errc::IoFailure, "cannot append to " + config_.events_path.string());
}

void Service::install_routes() {
  auto& s = *server_;
  const std::string local_user = "local";

  s.Post("/fragments/from-url", guarded([this, local_user](const httplib::Request& req,
                                                           httplib::Response& res) {
    const json body = parse_body(req);
    const auto url = required_string(body, "url");
    if (!parse_url(url)) throw Error(Errc::InvalidArgument, "not an http(s) url: " + url);
    const auto expected = expected_revision(req, body);
    const auto request = request_from_page(fetcher_(url));
    FragmentId id;
    const auto rev = mutate(expected, [&] { id = store_.ingest_fragment(request); });
    record_event(local_user, EventType::FragmentCreated, std::nullopt);
    send_json(res, 201, {{"id", id}, {"revision", rev}});
  }));

  s.Post("/fragments", guarded([this, local_user](const httplib::Request& req,
                                                  httplib::Response& res) {
    const json body = parse_body(req);
    IngestRequest r;
    const auto kind = fragment_kind_from_string(required_string(body, "kind"));
    if (!kind) throw Error(Errc::InvalidArgument, "unknown fragment kind");
    r.kind = *kind;
    r.text = optional_string(body, "text").value_or("");
    r.source_url = optional_string(body, "source_url");
    r.source_locator = optional_string(body, "source_locator");
    r.thumbnail_ref = optional_string(body, "thumbnail_ref");
    r.favicon_ref = optional_string(body, "favicon_ref");
    FragmentId id;
    const auto rev = mutate(expected_revision(req, body), [&] { id = store_.ingest_fragment(r); });
    record_event(local_user, EventType::FragmentCreated, std::nullopt);
    send_json(res, 201, {{"id", id}, {"revision", rev}});
  }));

  s.Post(R"(/fragments/([^/]+)/placement)",
         guarded([this](const httplib::Request& req, httplib::Response& res) {
           const json body = parse_body(req);
           const FragmentId id = req.matches[1];
           const json& rect = body.contains("placement") ? body["placement"] : body;
           json plain = json::object();
           for (const char* k : {"x", "y", "width", "height"})
             if (rect.contains(k)) plain[k] = rect[k];
           const auto expected = expected_revision(req, body);
           if (!snapshot()->find(id)) throw Error(Errc::UnknownId, "no fragment " + id);
           const Placement p = placement_from_json(plain);
           const auto rev = mutate(expected, [&] { store_.place_fragment(id, p); });
           send_json(res, 200, {{"revision", rev}});
         }));

  s.Delete(R"(/fragments/([^/]+))", guarded([this](const httplib::Request& req,
                                                   httplib::Response& res) {
    const json body = parse_body(req);
    const FragmentId id = req.matches[1];
    const auto rev = mutate(expected_revision(req, body), [&] { store_.remove_fragment(id); });
    send_json(res, 200, {{"revision", rev}});
  }));

  s.Post("/notes", guarded([this, local_user](const httplib::Request& req, httplib::Response& res) {
    const json body = parse_body(req);
    const auto text = optional_string(body, "text").value_or("");
    if (!body.contains("placement")) throw Error(Errc::InvalidArgument, "missing placement");
    const Placement p = placement_from_json(body["placement"]);
    FragmentId id;
    const auto rev = mutate(expected_revision(req, body), [&] { id = store_.create_note(text, p); });
    record_event(local_user, EventType::FragmentCreated, std::nullopt);
    send_json(res, 201, {{"id", id}, {"revision", rev}});
  }));

  s.Post("/containers", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const json body = parse_body(req);
    const auto label = optional_string(body, "label").value_or("");
    Rgb color;
    if (body.contains("color")) {
      const auto& c = body["color"];
      if (!c.is_array() || c.size() != 3)
        throw Error(Errc::InvalidArgument, "color must be [r, g, b]");
      std::array<std::uint8_t, 3> rgb{};
      for (std::size_t i = 0; i < 3; ++i) {
        if (!c[i].is_number_integer() || c[i].get<int>() < 0 || c[i].get<int>() > 255)
          throw Error(Errc::InvalidArgument, "color channels must be integers in 0..255");
        rgb[i] = static_cast<std::uint8_t>(c[i].get<int>());
      }
      color = {rgb[0], rgb[1], rgb[2]};
    }
    if (!body.contains("member_ids") || !body["member_ids"].is_array())
      throw Error(Errc::InvalidArgument, "member_ids must be an array");
    const auto members = body["member_ids"].get<std::vector<FragmentId>>();
    ContainerId id;
    const auto rev = mutate(expected_revision(req, body),
                            [&] { id = store_.create_container(label, color, members); });
    send_json(res, 201, {{"id", id}, {"revision", rev}});
  }));

  s.Get("/inbox", guarded([this](const httplib::Request&, httplib::Response& res) {
    const auto snap = snapshot();
    json frags = json::array();
    for (const auto& id : snap->inbox) frags.push_back(fragment_to_json(snap->fragments.at(id)));
    send_json(res, 200, {{"revision", snap->revision}, {"fragments", std::move(frags)}});
  }));

  const auto view_params = [this](const httplib::Request& req) {
    ViewParams params;
    params.eps_screen_px = query_number(req, "eps").value_or(config_.eps_screen_px);
    if (!(params.eps_screen_px > 0.0)) throw Error(Errc::InvalidArgument, "eps must be positive");
    return params;
  };
  const auto viewport_from_query = [this](const httplib::Request& req) {
    Viewport v = last_viewport();
    v.center.x = query_number(req, "cx").value_or(v.center.x);
    v.center.y = query_number(req, "cy").value_or(v.center.y);
    v.scale = query_number(req, "scale").value_or(v.scale);
    v.screen_size.width = query_number(req, "w").value_or(v.screen_size.width);
    v.screen_size.height = query_number(req, "h").value_or(v.screen_size.height);
    if (!v.valid()) throw Error(Errc::InvalidArgument, "viewport needs positive scale and size");
    return v;
  };

  s.Get("/view", guarded([this, view_params, viewport_from_query](const httplib::Request& req,
                                                                   httplib::Response& res) {
    const std::uint64_t generation = ++view_generation_;
    const Viewport viewport = viewport_from_query(req);
    const ViewParams params = view_params(req);
    {
      std::lock_guard lock(snapshot_mutex_);
      last_viewport_ = viewport;
    }
    const auto snap = snapshot();
    auto view = compute_view(*snap, viewport, params, &label_cache_,
                             [&] { return view_generation_.load() != generation; });
    if (req.has_param("sel")) {
      const auto overlay = select(*snap, view.clusters, selection_from_json(json(req.get_param_value("sel"))));
      apply_overlay(view, overlay);
    }
    send_json(res, 200, view_to_json(view));
  }));

  s.Post("/select", guarded([this, view_params](const httplib::Request& req,
                                                httplib::Response& res) {
    const json body = parse_body(req);
    if (!body.contains("selection")) throw Error(Errc::InvalidArgument, "missing selection");
    const Selection sel = selection_from_json(body["selection"]);
    const Viewport viewport =
        body.contains("viewport") ? viewport_from_json(body["viewport"]) : last_viewport();
    ViewParams params = view_params(req);
    if (body.contains("eps")) params.eps_screen_px = body["eps"].get<double>();
    if (!(params.eps_screen_px > 0.0)) throw Error(Errc::InvalidArgument, "eps must be positive");
    const auto snap = snapshot();
    const auto view = compute_view(*snap, viewport, params, &label_cache_);
    send_json(res, 200, overlay_to_json(select(*snap, view.clusters, sel)));
  }));

  s.Get("/kwic", guarded([this](const httplib::Request& req, httplib::Response& res) {
    if (!req.has_param("fragment") || !req.has_param("stem"))
      throw Error(Errc::InvalidArgument, "fragment and stem are required");
    const auto window = query_number(req, "window").value_or(40.0);
    if (window < 0 || std::floor(window) != window)
      throw Error(Errc::InvalidArgument, "window must be a non-negative integer");
    const auto snap = snapshot();
    const FragmentId id = req.get_param_value("fragment");
    const auto* f = snap->find(id);
    if (!f) throw Error(Errc::UnknownId, "no fragment " + id);
    const auto hits = kwic(id, f->text, req.get_param_value("stem"), static_cast<std::size_t>(window));
    send_json(res, 200, {{"hits", kwic_to_json(hits)}});
  }));

  s.Get("/search-url", guarded([this, view_params, viewport_from_query](const httplib::Request& req,
                                                                         httplib::Response& res) {
    if (!req.has_param("cluster")) throw Error(Errc::InvalidArgument, "cluster is required");
    const auto key = req.get_param_value("cluster");
    const auto snap = snapshot();
    const auto view = compute_view(*snap, viewport_from_query(req), view_params(req), &label_cache_);
    const auto it = std::find_if(view.clusters.begin(), view.clusters.end(),
                                 [&](const ClusterView& c) { return c.key == key; });
    if (it == view.clusters.end()) throw Error(Errc::UnknownId, "no cluster " + key);
    send_json(res, 200, {{"url", search_url(it->labels)}});
  }));

  s.Get("/collage", guarded([this](const httplib::Request&, httplib::Response& res) {
    const auto snap = snapshot();
    res.set_header("X-Revision", std::to_string(snap->revision));
    send_json(res, 200, collage_to_json(*snap));
  }));

  s.Put("/collage", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const json body = parse_body(req);
    Collage next = collage_from_json(body);
    const auto rev = mutate(expected_revision(req, json::object()),
                            [&] { store_.replace(std::move(next)); });
    send_json(res, 200, {{"revision", rev}});
  }));

  s.Post("/events", guarded([this, local_user](const httplib::Request& req,
                                               httplib::Response& res) {
    const json body = parse_body(req);
    const auto type = event_type_from_string(required_string(body, "type"));
    if (!type) throw Error(Errc::InvalidArgument, "unknown event type");
    std::optional<Timestamp> at;
    if (const auto ts = optional_string(body, "timestamp")) at = parse_rfc3339(*ts);
    record_event(optional_string(body, "user_key").value_or(local_user), *type, at);
    res.status = 204;
  }));

  if (config_.static_dir) s.set_mount_point("/", config_.static_dir->string());
}

}  // namespace collage
