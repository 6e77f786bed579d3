#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "selord/cache.hpp"
#include "selord/job.hpp"

using namespace selord;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  static fs::path dir = [] {
    std::random_device rd;
    fs::path p = fs::temp_directory_path() / ("selord-test-" + std::to_string(rd()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

RunOptions cached_at(const fs::path& path) {
  RunOptions o;
  o.cache_path = path;
  return o;
}

RunOptions no_cache() {
  RunOptions o;
  o.use_cache = false;
  return o;
}

struct Process {
  int exit_code;
  std::string out;
};

Process run_cli(const std::string& args, const std::string& input) {
  fs::path in = scratch_dir() / "job.json";
  std::ofstream(in) << input;
  std::string cmd = std::string("SELORD_CACHE='") + (scratch_dir() / "cli-cache.json").string() + "' '" +
                    SELORD_CLI + "' " + args + " < '" + in.string() + "' 2>/dev/null";
  Process p{0, ""};
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) p.out.append(buf, n);
  int status = pclose(pipe);
  p.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return p;
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

const json kExample = json::parse(R"({
  "d": "-23", "p": "3", "ram": [], "g": ["-1", "-1", "0", "1"],
  "order": {"family": "multiplier", "prime": {"ell": "59", "which": 0}}
})");

}  // namespace

TEST_CASE("td and chamber jobs") {
  json td = json::parse(R"({"prime": "3",
    "L1": [["1","0","0"],["0","1","0"],["0","0","1"]],
    "L2": [["3","0","0"],["0","1","0"],["0","0","1"]]})");
  RunResult r = run_job("td", td, no_cache());
  CHECK(r.exit_code == 0);
  CHECK(r.document["outcome"]["type_distance"] == 1);
  CHECK(r.document["subcommand"] == "td");
  CHECK(r.document["version"] == kVersion);
  CHECK(r.document["job"] == td);

  json ch = json::parse(R"({"prime": "3", "frame": [["1","0","0"],["0","1","0"],["0","0","1"]]})");
  RunResult c = run_job("chamber", ch, no_cache());
  CHECK(c.exit_code == 0);
  REQUIRE(c.document["outcome"]["vertices"].size() == 3);
  CHECK(c.document["outcome"]["type_distances"][0][2] == 2);
  CHECK(c.document["outcome"]["type_distances"][2][0] == 1);
}

TEST_CASE("malformed jobs are input errors") {
  for (const char* bad : {R"({"prime": "4", "L1": [["1"]], "L2": [["1"]]})",
                          R"({"prime": "3", "L1": [["1","x"],["0","1"]], "L2": [["1","0"],["0","1"]]})",
                          R"({"prime": "3", "L1": [["1","0"],["0","0"]], "L2": [["1","0"],["0","1"]]})",
                          R"({"L1": [], "L2": []})"}) {
    RunResult r = run_job("td", json::parse(bad), no_cache());
    CHECK(r.exit_code == 1);
    CHECK(r.document["error"]["kind"] == "input");
    CHECK(r.document["error"]["message"].is_string());
  }
  CHECK(run_job("classgroup", json::parse(R"({"d": "-12"})"), no_cache()).exit_code == 1);
  CHECK(run_job("classgroup", json::parse(R"({"d": "12345678901234567890x"})"), no_cache()).exit_code == 1);
  CHECK(run_job("nonsense", json::object(), no_cache()).exit_code == 1);
  json reducible = kExample;
  reducible["g"] = json::array({"-1", "0", "0", "1"});
  CHECK(run_job("verdict", reducible, no_cache()).exit_code == 1);
}

TEST_CASE("classgroup, split and rho jobs") {
  RunResult cg = run_job("classgroup", json::parse(R"({"d": "-23"})"), no_cache());
  CHECK(cg.exit_code == 0);
  CHECK(cg.document["outcome"]["h"] == 3);
  CHECK(cg.document["outcome"]["structure"] == json::array({"3"}));

  json split = json::parse(R"({"d": "-23", "g": ["-1","-1","0","1"], "prime": {"ell": "59", "which": 1}})");
  RunResult s = run_job("split", split, no_cache());
  CHECK(s.exit_code == 0);
  CHECK(s.document["outcome"]["splits_completely"] == true);
  split["prime"]["ell"] = "23";
  split["prime"]["which"] = 0;
  CHECK(run_job("split", split, no_cache()).exit_code == 2);

  json rho = json::parse(R"({"d": "-23", "p": "3", "ram": [],
    "dev1": [{"prime": {"ell": "2", "which": 0}, "basis": [["2","0","0"],["0","1","0"],["0","0","1"]]}],
    "dev2": [{"prime": {"ell": "2", "which": 0}, "basis": [["2","0","0"],["0","1","0"],["0","0","1"]]}]})");
  RunResult r = run_job("rho", rho, no_cache());
  CHECK(r.exit_code == 0);
  CHECK(r.document["outcome"]["identity"] == true);
  rho["dev2"] = json::array();
  CHECK(run_job("rho", rho, no_cache()).document["outcome"]["identity"] == false);
}

TEST_CASE("verdict and parametrize jobs") {
  RunResult v = run_job("verdict", kExample, no_cache());
  CHECK(v.exit_code == 0);
  CHECK(v.document["outcome"]["selective"] == true);
  CHECK(v.document["outcome"]["fraction"] == "1/3");
  CHECK_FALSE(v.document.contains("certificates"));

  RunOptions certs = no_cache();
  certs.certificates = true;
  RunResult vc = run_job("verdict", kExample, certs);
  CHECK(vc.document["certificates"].size() > 0);
  CHECK(vc.document["outcome"] == v.document["outcome"]);

  RunOptions tiny = no_cache();
  tiny.bound = 5;
  RunResult vi = run_job("verdict", kExample, tiny);
  CHECK(vi.exit_code == 2);
  CHECK(vi.document["outcome"]["fraction"].is_null());

  RunResult p = run_job("parametrize", kExample, no_cache());
  CHECK(p.exit_code == 0);
  CHECK(p.document["outcome"]["orders"].size() == 3);
  CHECK(p.document["outcome"]["admissible_count"] == 1);
}

TEST_CASE("class group cache") {
  const fs::path path = scratch_dir() / "cache.json";
  fs::remove(path);
  CacheOptions on{true, path};
  auto fresh = load_class_group(-3299, {false, {}});
  auto first = load_class_group(-3299, on);
  CHECK(fs::exists(path));
  CHECK(first->elements() == fresh->elements());
  auto second = load_class_group(-3299, on);
  CHECK(second->elements() == fresh->elements());
  json stored = read_json(path);
  CHECK(stored["groups"]["-3299"].size() == 27);

  // A damaged entry is recomputed, not trusted.
  stored["groups"]["-3299"].erase(stored["groups"]["-3299"].begin() + 3);
  std::ofstream(path) << stored.dump();
  CHECK(load_class_group(-3299, on)->elements() == fresh->elements());
  CHECK(read_json(path)["groups"]["-3299"].size() == 27);

  // A wrong form with the right count.
  stored = read_json(path);
  stored["groups"]["-3299"][5] = json::array({"1", "1", "825"});
  std::ofstream(path) << stored.dump();
  CHECK(load_class_group(-3299, on)->elements() == fresh->elements());

  // An unreadable file is rebuilt.
  std::ofstream(path) << "{not json";
  CHECK(load_class_group(-23, on)->order() == 3);
  CHECK(read_json(path)["groups"].contains("-23"));

  // Cached and uncached runs agree.
  RunResult a = run_job("verdict", kExample, cached_at(path));
  RunResult b = run_job("verdict", kExample, no_cache());
  CHECK(a.document["outcome"] == b.document["outcome"]);
}

TEST_CASE("command-line binary") {
  Process ok = run_cli("classgroup", R"({"d": "-23"})");
  CHECK(ok.exit_code == 0);
  CHECK(json::parse(ok.out)["outcome"]["h"] == 3);

  Process bad = run_cli("classgroup", "{not json");
  CHECK(bad.exit_code == 1);
  CHECK(json::parse(bad.out)["error"]["kind"] == "input");

  Process unknown = run_cli("frobnicate", "{}");
  CHECK(unknown.exit_code != 0);

  std::string example = kExample.dump();
  Process v1 = run_cli("verdict", example);
  Process v2 = run_cli("verdict --no-cache", example);
  REQUIRE(v1.exit_code == 0);
  CHECK(json::parse(v1.out)["outcome"] == json::parse(v2.out)["outcome"]);
  Process indet = run_cli("verdict --bound 5", example);
  CHECK(indet.exit_code == 2);
  CHECK(json::parse(indet.out)["outcome"]["cond1"]["outcome"] == "indeterminate");
}

TEST_CASE("golden jobs in process") {
  for (const auto& entry : fs::directory_iterator(SELORD_GOLDEN_DIR)) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().filename().string());
    json golden = read_json(entry.path());
    RunResult r = run_job(golden["subcommand"], golden["job"], no_cache());
    CHECK(r.exit_code == golden["exit_code"]);
    if (golden.contains("outcome")) CHECK(r.document["outcome"] == golden["outcome"]);
    if (golden.contains("error")) CHECK(r.document["error"] == golden["error"]);
  }
}
