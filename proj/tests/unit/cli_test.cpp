#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hashmac/cli/commands.hpp"
#include "hashmac/core/errors.hpp"

using namespace hashmac;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "hashmac-sim");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hashmac_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write_text(const fs::path& path, const std::string& text) {
  std::ofstream(path) << text;
  return path;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t count_prefix(const std::string& text, const std::string& prefix) {
  std::size_t n = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0 ? 1 : 0;
  return n;
}

const char* kTiny = R"({"name": "tiny", "counts": {"devices": 3, "cluster_heads": 1, "base_stations": 1},
  "traffic": {"packet_interval_ticks": 200000}, "duration_ticks": 1500000})";

}  // namespace

TEST_CASE("seed ranges") {
  CHECK(cli::parse_seed_range("5") == std::vector<std::uint64_t>{5});
  CHECK(cli::parse_seed_range("1..3") == std::vector<std::uint64_t>{1, 2, 3});
  CHECK(cli::parse_seed_range("4..4") == std::vector<std::uint64_t>{4});
  CHECK_THROWS_AS(cli::parse_seed_range("3..1"), ConfigError);
  CHECK_THROWS_AS(cli::parse_seed_range("a..b"), ConfigError);
  CHECK_THROWS_AS(cli::parse_seed_range(""), ConfigError);
}

TEST_CASE("missing scenario file exits 2 naming the path") {
  const Outcome o = invoke({"run", "--scenario", "/nonexistent/nowhere.json"});
  CHECK(o.code == cli::kExitConfig);
  CHECK(o.err.find("/nonexistent/nowhere.json") != std::string::npos);
}

TEST_CASE("malformed scenario exits 2 naming the key") {
  const fs::path dir = scratch_dir("malformed");
  const fs::path p = write_text(dir / "bad.json", R"({"counts": {"devices": "many"}, "duration_ticks": 1})");
  const Outcome o = invoke({"run", "--scenario", p.string(), "--out", dir.string()});
  CHECK(o.code == cli::kExitConfig);
  CHECK(o.err.find("counts.devices") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("usage errors exit 2") {
  CHECK(invoke({}).code == cli::kExitConfig);
  CHECK(invoke({"run"}).code == cli::kExitConfig);
  CHECK(invoke({"run", "--scenario", "x.json", "--format", "xml"}).code == cli::kExitConfig);
  CHECK(invoke({"run", "--scenario", "x.json", "--seed", "1", "--seeds", "1..2"}).code == cli::kExitConfig);
  CHECK(invoke({"frobnicate"}).code == cli::kExitConfig);
}

TEST_CASE("--help lists every flag") {
  const Outcome top = invoke({"--help"});
  CHECK(top.code == cli::kExitOk);
  for (const char* sub : {"run", "compare", "attack-suite", "presets"}) CHECK(top.out.find(sub) != std::string::npos);
  const Outcome run = invoke({"run", "--help"});
  CHECK(run.code == cli::kExitOk);
  for (const char* flag : {"--scenario", "--seed", "--seeds", "--mode", "--out", "--format", "--verbose"}) {
    CAPTURE(flag);
    CHECK(run.out.find(flag) != std::string::npos);
  }
}

TEST_CASE("run writes reports and honours --mode and --format") {
  const fs::path dir = scratch_dir("run");
  const fs::path p = write_text(dir / "tiny.json", kTiny);
  const Outcome o = invoke({"run", "--scenario", p.string(), "--out", dir.string(), "--mode", "dsdv", "--format", "csv",
                            "--seed", "9"});
  CHECK(o.code == cli::kExitOk);
  CHECK(fs::exists(dir / "tiny_dsdv_9.csv"));
  CHECK_FALSE(fs::exists(dir / "tiny_dsdv_9.json"));
  CHECK(read_text(dir / "tiny_dsdv_9.csv").find("energy_mean_mJ,dsdv,") != std::string::npos);
  CHECK(invoke({"run", "--scenario", p.string(), "--mode", "aodv"}).code == cli::kExitConfig);
  fs::remove_all(dir);
}

TEST_CASE("run -v writes a trace next to the report") {
  const fs::path dir = scratch_dir("trace");
  const fs::path p = write_text(dir / "tiny.json", kTiny);
  CHECK(invoke({"run", "--scenario", p.string(), "--out", dir.string(), "-v"}).code == cli::kExitOk);
  const std::string trace = read_text(dir / "tiny_hashmac_1.trace");
  CHECK(trace.find(",register,") != std::string::npos);
  CHECK(trace.find(",data_recv,") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("compare over ten seeds writes ten delta rows per metric") {
  const fs::path dir = scratch_dir("compare");
  const fs::path p = write_text(dir / "tiny.json", kTiny);
  const Outcome o = invoke({"compare", "--scenario", p.string(), "--out", dir.string(), "--seeds", "1..10",
                            "--format", "csv"});
  CHECK(o.code == cli::kExitOk);
  CHECK(o.out.find("hashmac_energy_saving_pct=") != std::string::npos);
  const std::string csv = read_text(dir / "tiny_compare.csv");
  CHECK(count_prefix(csv, "energy_saving_pct,seed=") == 10);
  CHECK(count_prefix(csv, "plr_ratio_delta,seed=") == 10);
  CHECK(fs::exists(dir / "tiny_hashmac_10.csv"));
  CHECK(fs::exists(dir / "tiny_dsdv_10.csv"));
  fs::remove_all(dir);
}

TEST_CASE("compare with zero duration reports zero deltas") {
  const fs::path dir = scratch_dir("compare_zero");
  const fs::path p = write_text(dir / "zero.json", R"({"name": "zero",
    "counts": {"devices": 3, "cluster_heads": 1, "base_stations": 1}, "duration_ticks": 0})");
  CHECK(invoke({"compare", "--scenario", p.string(), "--out", dir.string(), "--format", "csv"}).code == cli::kExitOk);
  const std::string csv = read_text(dir / "zero_compare.csv");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    CAPTURE(line);
    CHECK(line.substr(line.rfind(',') + 1) == "0");
    ++rows;
  }
  CHECK(rows > 0);
  fs::remove_all(dir);
}

TEST_CASE("attack-suite runs every kind against every layer") {
  const fs::path dir = scratch_dir("suite");
  const fs::path p = write_text(dir / "s.json", R"({"name": "s",
    "counts": {"devices": 6, "cluster_heads": 2, "base_stations": 2}, "duration_ticks": 2000000,
    "traffic": {"packet_interval_ticks": 0},
    "attacks": [{"kind": "dos", "count": 5, "rate": 10, "start_tick": 1000000}]})");
  const Outcome o = invoke({"attack-suite", "--scenario", p.string(), "--out", dir.string()});
  CHECK(o.code == cli::kExitOk);
  const std::string csv = read_text(dir / "s_attack_suite_1.csv");
  CHECK(count_prefix(csv, "attacks_injected,") == 18);
  CHECK(csv.find("attacker_allows,sybil:bs,0") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("suite cells keep the template's pacing") {
  Scenario base;
  base.name = "b";
  base.mode = RoutingMode::BaselineDsdv;
  base.attacks.push_back({AttackKind::DoS, 42, TargetLayer::Device, 5, 3.0});
  const Scenario cell = cli::suite_cell(base, AttackKind::Spoofing, TargetLayer::BaseStation);
  REQUIRE(cell.attacks.size() == 1);
  CHECK(cell.attacks[0].kind == AttackKind::Spoofing);
  CHECK(cell.attacks[0].target_layer == TargetLayer::BaseStation);
  CHECK(cell.attacks[0].count == 42);
  CHECK(cell.attacks[0].rate == 3.0);
  CHECK(cell.mode == RoutingMode::HashMacDsdv);
  CHECK(cell.name == "b_spoofing_bs");
}

TEST_CASE("presets lists the bundled scenarios") {
  const Outcome o = invoke({"presets"});
  CHECK(o.code == cli::kExitOk);
  CHECK(o.out.find("table1_small") != std::string::npos);
  CHECK(o.out.find("desk_dos") != std::string::npos);
}
