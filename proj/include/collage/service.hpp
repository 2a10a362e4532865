#pragma once

// Local HTTP facade over the store and the view, selection and analytics engines.

#include <atomic>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "collage/analytics.hpp"
#include "collage/store.hpp"
#include "collage/zoomview.hpp"

namespace httplib {
class Server;
}

namespace collage {

inline constexpr int kDefaultPort = 8642;
inline constexpr const char* kDefaultDataFile = "collage.json";

/// IC_DATA if set and non-empty, else collage.json in the working directory.
std::filesystem::path default_data_path();

struct FetchedPage {
  std::string url;
  std::string body;
};

using Fetcher = std::function<FetchedPage(const std::string& url)>;

/// HTTP(S) GET following redirects. Throws FetchFailure.
FetchedPage fetch_url(const std::string& url);

/// Drops script, style and comment subtrees and all tags, decodes common
/// entities and collapses runs of whitespace to single spaces.
std::string html_to_text(std::string_view html);

/// The icon a <link rel="...icon..."> declares, resolved against `page_url`;
/// otherwise the site root /favicon.ico.
std::string favicon_url(std::string_view page_url, std::string_view html);

/// A Document ingest request for a fetched page.
IngestRequest request_from_page(const FetchedPage& page);

struct ServiceConfig {
  std::filesystem::path data_path = kDefaultDataFile;
  /// Activity events are appended here; empty disables the log file.
  std::filesystem::path events_path;
  double eps_screen_px = 40.0;
  std::optional<std::filesystem::path> static_dir;
};

/// Owns the store and the HTTP routes. Writes are serialized and persisted to
/// data_path after every mutation; reads work on immutable snapshots.
class Service {
 public:
  explicit Service(ServiceConfig config, Store::Clock clock = now_ms, Fetcher fetcher = fetch_url);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds and blocks until stop(). Port 0 picks a free port; see port().
  bool listen(const std::string& host, int port);
  /// Binds without blocking; returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Blocks serving a socket bound by bind().
  bool serve();
  void stop();
  void wait_until_ready() const;
  int port() const { return port_; }

  std::shared_ptr<const Collage> snapshot() const;
  const ActivityLog& activity() const { return activity_; }

 private:
  void install_routes();
  template <class Mutation>
  std::uint64_t mutate(std::optional<std::uint64_t> expected_revision, Mutation&& m);
  void record_event(const std::string& user_key, EventType type, std::optional<Timestamp> at);
  Viewport last_viewport() const;

  ServiceConfig config_;
  Store::Clock clock_;
  Fetcher fetcher_;
  std::unique_ptr<httplib::Server> server_;
  Store store_;
  std::mutex write_mutex_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const Collage> published_;
  std::optional<Viewport> last_viewport_;
  LabelCache label_cache_;
  std::atomic<std::uint64_t> view_generation_{0};
  ActivityLog activity_;
  int port_ = -1;
};

}  // namespace collage
