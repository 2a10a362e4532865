// ic: command-line front end for the collage engine.

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>

#include "collage/analytics.hpp"
#include "collage/collage_io.hpp"
#include "collage/error.hpp"
#include "collage/service.hpp"
#include "collage/svg.hpp"
#include "collage/zoomview.hpp"

namespace {

collage::Service* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

collage::Collage load_or_empty(const std::filesystem::path& path) {
  if (std::filesystem::exists(path)) return collage::load_collage(path);
  return {};
}

std::filesystem::path events_path_for(const std::filesystem::path& data) {
  auto p = data;
  p += ".events.tsv";
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zoomable collage engine"};
  app.require_subcommand(1);

  const std::string default_data = collage::default_data_path().string();

  auto* serve = app.add_subcommand("serve", "Run the local HTTP service");
  int port = collage::kDefaultPort;
  std::string host = "127.0.0.1";
  std::string serve_data = default_data;
  double eps = 40.0;
  std::string static_dir;
  serve->add_option("--port", port, "TCP port")->capture_default_str();
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--data", serve_data, "Collage file")->capture_default_str();
  serve->add_option("--eps", eps, "Default clustering distance in screen pixels")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  serve->add_option("--static", static_dir, "Directory of UI assets served at /");

  auto* ingest = app.add_subcommand("ingest", "Add a fragment to a collage file");
  std::string url;
  std::string text;
  std::string source_url;
  std::string ingest_out = default_data;
  auto* url_opt = ingest->add_option("--url", url, "Fetch a page and ingest its text");
  auto* text_opt = ingest->add_option("--text", text, "Ingest text (a note unless --source-url is given)");
  ingest->add_option("--source-url", source_url, "Source of --text; makes it a text snippet")
      ->needs(text_opt);
  ingest->add_option("--out", ingest_out, "Collage file to update")->capture_default_str();
  url_opt->excludes(text_opt);

  auto* snapshot = app.add_subcommand("snapshot", "Render the view of a collage to SVG");
  std::string snap_data = default_data;
  std::string snap_out = "out.svg";
  std::optional<double> snap_scale;
  std::optional<double> snap_cx;
  std::optional<double> snap_cy;
  std::optional<double> snap_w;
  std::optional<double> snap_h;
  double snap_eps = 40.0;
  snapshot->add_option("--data", snap_data, "Collage file")->capture_default_str();
  snapshot->add_option("--scale", snap_scale, "Zoom scale (screen px per world unit)")
      ->check(CLI::PositiveNumber);
  snapshot->add_option("--cx", snap_cx, "Viewport centre x (world)");
  snapshot->add_option("--cy", snap_cy, "Viewport centre y (world)");
  snapshot->add_option("--width", snap_w, "Screen width in px")->check(CLI::PositiveNumber);
  snapshot->add_option("--height", snap_h, "Screen height in px")->check(CLI::PositiveNumber);
  snapshot->add_option("--eps", snap_eps, "Clustering distance in screen pixels")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  snapshot->add_option("--out", snap_out, "Output SVG path")->capture_default_str();

  auto* analyze = app.add_subcommand("analyze", "Cluster users by activity strategy");
  std::string log_path;
  double analyze_eps = collage::kStrategyEps;
  analyze->add_option("--log", log_path, "Activity log (timestamp, user_key, event_type)")
      ->required()
      ->check(CLI::ExistingFile);
  analyze->add_option("--eps", analyze_eps, "Distance threshold after standardization")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  auto* export_cmd = app.add_subcommand("export", "Print a collage file as JSON");
  std::string export_data = default_data;
  export_cmd->add_option("--data", export_data, "Collage file")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) {
      collage::ServiceConfig config;
      config.data_path = serve_data;
      config.events_path = events_path_for(serve_data);
      config.eps_screen_px = eps;
      if (!static_dir.empty()) config.static_dir = static_dir;
      collage::Service service(config);
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      const int bound = service.bind(host, port);
      if (bound < 0) {
        std::cerr << "ic: cannot bind " << host << ":" << port << "\n";
        return 1;
      }
      std::cout << "listening on http://" << host << ":" << bound << std::endl;
      const bool ok = service.serve();
      g_service = nullptr;
      return ok ? 0 : 1;
    }

    if (*ingest) {
      if (url.empty() && text.empty()) {
        std::cerr << "ic ingest: one of --url or --text is required\n";
        return 2;
      }
      collage::Store store(load_or_empty(ingest_out));
      collage::FragmentId id;
      if (!url.empty()) {
        id = store.ingest_fragment(collage::request_from_page(collage::fetch_url(url)));
      } else if (!source_url.empty()) {
        collage::IngestRequest r;
        r.kind = collage::FragmentKind::TextSnippet;
        r.text = text;
        r.source_url = source_url;
        id = store.ingest_fragment(r);
      } else {
        collage::IngestRequest r;
        r.kind = collage::FragmentKind::Note;
        r.text = text;
        id = store.ingest_fragment(r);
      }
      store.save(ingest_out);
      std::cout << id << "\n";
      return 0;
    }

    if (*snapshot) {
      const auto c = collage::load_collage(snap_data);
      collage::Viewport v = c.viewport;
      if (snap_scale) v.scale = *snap_scale;
      if (snap_cx) v.center.x = *snap_cx;
      if (snap_cy) v.center.y = *snap_cy;
      if (snap_w) v.screen_size.width = *snap_w;
      if (snap_h) v.screen_size.height = *snap_h;
      collage::ViewParams params;
      params.eps_screen_px = snap_eps;
      const auto view = collage::compute_view(c, v, params);
      std::ofstream out(snap_out, std::ios::binary);
      out << collage::render_svg(view, c);
      if (!out) {
        std::cerr << "ic snapshot: cannot write " << snap_out << "\n";
        return 1;
      }
      return 0;
    }

    if (*analyze) {
      std::ifstream in(log_path);
      const auto log = collage::ActivityLog::read_tsv(in);
      const auto users = log.users();
      const auto samples = log.samples();
      const auto partition = collage::strategy_clusters(samples, analyze_eps);
      std::cout << partition.size() << " clusters\n";
      for (std::size_t k = 0; k < partition.size(); ++k) {
        std::cout << "cluster " << k + 1 << ":";
        for (const auto i : partition[k]) {
          const auto& s = samples[i];
          std::cout << " " << users[i] << "(" << s[0] << "," << s[1] << "," << s[2] << ")";
        }
        std::cout << "\n";
      }
      return 0;
    }

    if (*export_cmd) {
      std::cout << collage::collage_to_json(collage::load_collage(export_data)).dump(2) << "\n";
      return 0;
    }
  } catch (const collage::Error& e) {
    std::cerr << "ic: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "ic: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
