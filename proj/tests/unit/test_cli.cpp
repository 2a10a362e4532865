#include <doctest.h>

#include <httplib.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "collage/collage_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(IC_BINARY) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf{};
  while (const auto n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("collage_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const std::string kData = std::string(TEST_DATA_DIR);

}  // namespace

TEST_CASE("snapshot renders three closed hulls deterministically") {
  const auto dir = scratch("snapshot");
  const auto a = dir / "a.svg";
  const auto b = dir / "b.svg";
  REQUIRE(run("snapshot --data " + kData + "/three_clusters.json --scale 0.5 --out " + a.string()).status == 0);
  REQUIRE(run("snapshot --data " + kData + "/three_clusters.json --scale 0.5 --out " + b.string()).status == 0);
  const auto svg = slurp(a);
  CHECK(svg == slurp(b));
  CHECK(count(svg, "<path") == 3);
  CHECK(count(svg, " Z\"") == 3);
  CHECK(count(svg, "<text class=\"label\"") <= 15);
  CHECK(count(svg, "<text class=\"label\"") > 0);
  fs::remove_all(dir);
}

TEST_CASE("analyze prints the three strategy groups") {
  const auto r = run("analyze --log " + kData + "/fig7_activity.tsv");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("3 clusters\n", 0) == 0);
  CHECK(r.out.find("cluster 1: u1(140,18,6)\n") != std::string::npos);
  CHECK(r.out.find("cluster 3: u7(48,62,41) u8(40,55,34)\n") != std::string::npos);
}

TEST_CASE("ingest and export") {
  const auto dir = scratch("ingest");
  const auto file = dir / "c.json";
  const auto note = run("ingest --text 'my hypothesis' --out " + file.string());
  CHECK(note.status == 0);
  CHECK(note.out == "f1\n");
  const auto snippet = run("ingest --text 'solar wind' --source-url https://example.org --out " + file.string());
  CHECK(snippet.out == "f2\n");
  const auto c = collage::load_collage(file);
  CHECK(c.fragments.at("f1").kind == collage::FragmentKind::Note);
  CHECK(c.fragments.at("f2").kind == collage::FragmentKind::TextSnippet);
  CHECK(c.inbox.size() == 2);

  const auto exported = run("export --data " + file.string());
  CHECK(exported.status == 0);
  CHECK(collage::model_equal(collage::collage_from_json(nlohmann::json::parse(exported.out)), c));

  CHECK(run("ingest --out " + file.string()).status != 0);
  CHECK(run("export --data " + (dir / "absent.json").string()).status == 1);
  fs::remove_all(dir);
}

TEST_CASE("serve answers the inbox endpoint") {
  const auto dir = scratch("serve");
  const auto file = dir / "c.json";
  fs::copy_file(kData + "/three_clusters.json", file);
  const int port = 18642;
  const std::string cmd = std::string(IC_BINARY) + " serve --port " + std::to_string(port) +
                          " --data " + file.string() + " > " + (dir / "log").string() +
                          " 2>&1 & echo $! > " + (dir / "pid").string();
  REQUIRE(std::system(cmd.c_str()) == 0);
  httplib::Client client("127.0.0.1", port);
  httplib::Result res;
  for (int attempt = 0; attempt < 100 && !res; ++attempt) {
    res = client.Get("/inbox");
    if (!res) std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(nlohmann::json::parse(res->body).at("fragments").size() == 1);
  const auto pid = slurp(dir / "pid");
  CHECK(std::system(("kill " + pid).c_str()) == 0);
  std::this_thread::sleep_for(std::chrono::milliseconds(200));
  fs::remove_all(dir);
}
