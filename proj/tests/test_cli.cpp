// Tests for the experiment-runner binary: determinism of artifacts,
// manifest completeness, config/flag plumbing, and error records.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const fs::path kWork = fs::temp_directory_path() / "vnlab_cli_test";

int run_cli(const std::string& args) {
  std::string cmd = std::string(VNLAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// All files except run.log (which records wall time and is documented as
// non-deterministic and unhashed).
std::map<std::string, std::string> dir_contents(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::string name = e.path().filename().string();
    if (name == "run.log") continue;
    out[name] = slurp(e.path());
  }
  return out;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void check_deterministic_run(const std::string& sub, unsigned seed) {
  fs::path a = kWork / (sub + "_a"), b = kWork / (sub + "_b");
  fs::remove_all(a);
  fs::remove_all(b);
  std::ostringstream cmd1, cmd2;
  cmd1 << sub << " --seed " << seed << " --out " << a.string();
  cmd2 << sub << " --seed " << seed << " --out " << b.string();
  REQUIRE(run_cli(cmd1.str()) == 0);
  REQUIRE(run_cli(cmd2.str()) == 0);
  auto ca = dir_contents(a), cb = dir_contents(b);
  REQUIRE(!ca.empty());
  CHECK(ca.size() == cb.size());
  for (const auto& [name, content] : ca) {
    INFO("file: ", name);
    REQUIRE(cb.count(name) == 1);
    CHECK(content == cb.at(name));  // byte-identical
  }
  // Manifest completeness: every emitted file (minus run.log) is hashed, and
  // the recorded hashes match the bytes on disk.
  json manifest = json::parse(ca.at("manifest.json"));
  const json& hashes = manifest.at("files");
  for (const auto& [name, content] : ca) {
    INFO("hashed file: ", name);
    REQUIRE(hashes.contains(name));
    if (name == "manifest.json") continue;  // self-hash covers the pre-entry body
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(content)));
    CHECK(hashes.at(name).get<std::string>() == buf);
  }
  CHECK(hashes.size() == ca.size());
}

}  // namespace

TEST_CASE("repeated runs with identical seed are byte-identical, manifests complete") {
  fs::create_directories(kWork);
  check_deterministic_run("selftest", 11);
  check_deterministic_run("mpz", 7);
}

TEST_CASE("every subcommand: determinism and manifest across two runs") {
  fs::create_directories(kWork);
  // Small parameter files keep the suite fast.
  fs::path cfg = kWork / "small.json";
  {
    std::ofstream out(cfg);
    out << R"({"parameters": {"grid_count": 256, "N_list": [64, 128, 256]}})";
  }
  // decompose needs a grid fine enough for its wave-packet band limit, so it
  // gets its own parameter file.
  fs::path dcfg = kWork / "small_decompose.json";
  {
    std::ofstream out(dcfg);
    out << R"({"parameters": {"grid_count": 512, "tile_count": 12}})";
  }
  for (const std::string sub :
       {std::string("sharpness"), std::string("lepingle"), std::string("mpz"),
        std::string("nlft"), std::string("decompose")}) {
    fs::path a = kWork / (sub + "_ca"), b = kWork / (sub + "_cb");
    fs::remove_all(a);
    fs::remove_all(b);
    const fs::path& use_cfg = sub == "decompose" ? dcfg : cfg;
    std::string base = sub + " --config " + use_cfg.string() + " --seed 21 --out ";
    INFO("subcommand: ", sub);
    REQUIRE(run_cli(base + a.string()) == 0);
    REQUIRE(run_cli(base + b.string()) == 0);
    auto ca = dir_contents(a), cb = dir_contents(b);
    REQUIRE(!ca.empty());
    CHECK(ca == cb);
    json manifest = json::parse(ca.at("manifest.json"));
    CHECK(manifest.at("files").size() == ca.size());
    CHECK(manifest.at("config").at("seed").get<int>() == 21);
  }
}

TEST_CASE("different seeds give different artifacts") {
  fs::create_directories(kWork);
  fs::path a = kWork / "seed_a", b = kWork / "seed_b";
  fs::remove_all(a);
  fs::remove_all(b);
  REQUIRE(run_cli("mpz --seed 1 --out " + a.string()) == 0);
  REQUIRE(run_cli("mpz --seed 2 --out " + b.string()) == 0);
  CHECK(slurp(a / "summary.json") != slurp(b / "summary.json"));
}

TEST_CASE("flags override config-file values") {
  fs::create_directories(kWork);
  fs::path cfg = kWork / "override.json";
  {
    std::ofstream out(cfg);
    out << R"({"experiment": "mpz", "seed": 1, "output_dir": ")"
        << (kWork / "from_config").string() << R"("})";
  }
  fs::path flag_dir = kWork / "from_flag";
  fs::remove_all(flag_dir);
  fs::remove_all(kWork / "from_config");
  REQUIRE(run_cli("mpz --config " + cfg.string() + " --seed 9 --out " + flag_dir.string()) == 0);
  CHECK(fs::exists(flag_dir / "summary.json"));
  CHECK(!fs::exists(kWork / "from_config"));
  json manifest = json::parse(slurp(flag_dir / "manifest.json"));
  CHECK(manifest.at("config").at("seed").get<int>() == 9);
}

TEST_CASE("precondition violations exit nonzero with a machine-readable record") {
  fs::create_directories(kWork);
  fs::path cfg = kWork / "bad.json";
  {
    std::ofstream out(cfg);
    out << R"({"parameters": {"p": 3.5}})";  // mpz requires 1 <= p < 2
  }
  fs::path dir = kWork / "bad_out";
  fs::remove_all(dir);
  CHECK(run_cli("mpz --config " + cfg.string() + " --out " + dir.string()) != 0);
  json err = json::parse(slurp(dir / "error.json"));
  CHECK(err.contains("error"));
  CHECK(err.at("experiment").get<std::string>() == "mpz");

  // Mismatched experiment name in the config is also rejected.
  fs::path cfg2 = kWork / "mismatch.json";
  {
    std::ofstream out(cfg2);
    out << R"({"experiment": "nlft"})";
  }
  CHECK(run_cli("mpz --config " + cfg2.string() + " --out " + dir.string()) != 0);
}
