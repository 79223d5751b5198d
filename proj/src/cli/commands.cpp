#include "hashmac/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "hashmac/core/errors.hpp"
#include "hashmac/sim/kernel.hpp"

#ifndef HASHMAC_DEFAULT_PRESET_DIR
#define HASHMAC_DEFAULT_PRESET_DIR "presets"
#endif

namespace hashmac::cli {
namespace {

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    throw ConfigError("--seeds: '" + std::string(text) + "' is not a valid " + std::string(what));
  }
  return v;
}

std::vector<std::uint64_t> seeds_for(const CliConfig& config, const Scenario& base) {
  if (!config.seeds.empty()) return config.seeds;
  return {base.seed};
}

Scenario with_seed(Scenario s, std::uint64_t seed) {
  s.seed = seed;
  return s;
}

void write_all(const std::vector<MetricsReport>& reports, const CliConfig& config, std::ostream& out) {
  for (const auto& r : reports) {
    for (const auto& path : write_report(r, config.out_dir, config.format)) out << "wrote " << path.string() << '\n';
  }
}

std::filesystem::path trace_dir_for(const CliConfig& config) {
  return config.verbosity > 0 ? config.out_dir : std::filesystem::path{};
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace

std::vector<std::uint64_t> parse_seed_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) return {parse_u64(text, "seed")};
  const std::uint64_t lo = parse_u64(text.substr(0, dots), "range start");
  const std::uint64_t hi = parse_u64(text.substr(dots + 2), "range end");
  if (hi < lo) throw ConfigError("--seeds: range end is below its start");
  if (hi - lo >= 100'000) throw ConfigError("--seeds: range too large");
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
  return out;
}

std::vector<MetricsReport> run_all(const std::vector<Scenario>& scenarios, unsigned threads,
                                   const std::filesystem::path& trace_dir) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, scenarios.size())));

  std::vector<MetricsReport> reports(scenarios.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      try {
        Simulation sim(scenarios[i]);
        std::ostringstream trace;
        if (!trace_dir.empty()) sim.set_trace(&trace);
        reports[i] = sim.run();
        if (!trace_dir.empty()) {
          std::error_code ec;
          std::filesystem::create_directories(trace_dir, ec);
          write_file_atomic(trace_dir / (report_stem(reports[i]) + ".trace"), trace.str());
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
  return reports;
}

double energy_saving_pct(const MetricsReport& hashmac, const MetricsReport& baseline) {
  const double base = energy_mean(baseline, NodeRole::Device).value_or(0.0);
  const double ours = energy_mean(hashmac, NodeRole::Device).value_or(0.0);
  if (base <= 0.0) return 0.0;
  return (base - ours) / base * 100.0;
}

void add_compare_rows(CsvRows& rows, const MetricsReport& hashmac, const MetricsReport& baseline) {
  const std::string slice = "seed=" + std::to_string(hashmac.seed);
  const double e_h = energy_mean(hashmac, NodeRole::Device).value_or(0.0);
  const double e_d = energy_mean(baseline, NodeRole::Device).value_or(0.0);
  rows.add("energy_mean_mJ_hashmac", slice, e_h);
  rows.add("energy_mean_mJ_dsdv", slice, e_d);
  rows.add("energy_mean_mJ_delta", slice, e_h - e_d);
  rows.add("energy_saving_pct", slice, energy_saving_pct(hashmac, baseline));
  rows.add("plr_ratio_delta", slice, plr(hashmac).ratio - plr(baseline).ratio);
  rows.add("plr_absolute_delta", slice,
           static_cast<double>(plr(hashmac).absolute) - static_cast<double>(plr(baseline).absolute));
  rows.add("latency_mean_ticks_delta", slice, latency_mean(hashmac).value_or(0.0) - latency_mean(baseline).value_or(0.0));
  const auto p95 = [](const MetricsReport& r) { return static_cast<double>(latency_percentile(r, 95.0).value_or(0)); };
  rows.add("latency_p95_ticks_delta", slice, p95(hashmac) - p95(baseline));
}

Scenario suite_cell(const Scenario& base, AttackKind kind, TargetLayer layer) {
  Scenario s = base;
  AttackSpec spec = base.attacks.empty() ? AttackSpec{} : base.attacks.front();
  if (base.attacks.empty()) {
    spec.count = 100;
    spec.start_tick = base.protocol.warmup_ticks;
  }
  spec.kind = kind;
  spec.target_layer = layer;
  s.attacks = {spec};
  s.mode = RoutingMode::HashMacDsdv;
  s.name = base.name + "_" + std::string(to_string(kind)) + "_" + std::string(to_string(layer));
  return s;
}

int cmd_run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Scenario base = load_scenario(config.scenario_path);
    if (config.mode) base.mode = *config.mode;
    std::vector<Scenario> runs;
    for (std::uint64_t seed : seeds_for(config, base)) runs.push_back(with_seed(base, seed));
    const auto reports = run_all(runs, 0, trace_dir_for(config));
    write_all(reports, config, out);
    for (const auto& r : reports) {
      const Plr loss = plr(r);
      out << r.scenario << " mode=" << r.mode << " seed=" << r.seed << " sent=" << r.packets_sent
          << " received=" << r.packets_received << " plr=" << format_number(loss.ratio);
      if (auto rate = detection_rate(r)) out << " detection_rate=" << format_number(*rate);
      out << '\n';
    }
    return kExitOk;
  });
}

int cmd_compare(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario base = load_scenario(config.scenario_path);
    const auto seeds = seeds_for(config, base);
    std::vector<Scenario> runs;
    for (std::uint64_t seed : seeds) {
      Scenario h = with_seed(base, seed);
      h.mode = RoutingMode::HashMacDsdv;
      Scenario d = h;
      d.mode = RoutingMode::BaselineDsdv;
      runs.push_back(std::move(h));
      runs.push_back(std::move(d));
    }
    const auto reports = run_all(runs, 0, trace_dir_for(config));
    write_all(reports, config, out);

    CsvRows rows;
    double saving_sum = 0.0;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      const auto& h = reports[2 * i];
      const auto& d = reports[2 * i + 1];
      add_compare_rows(rows, h, d);
      const double saving = energy_saving_pct(h, d);
      saving_sum += saving;
      out << "seed=" << seeds[i] << " energy_mean_mJ hashmac=" << format_number(energy_mean(h, NodeRole::Device).value_or(0))
          << " dsdv=" << format_number(energy_mean(d, NodeRole::Device).value_or(0))
          << " saving_pct=" << format_number(saving) << '\n';
    }
    const auto path = config.out_dir / (base.name + "_compare.csv");
    write_file_atomic(path, rows.str());
    out << "wrote " << path.string() << '\n';
    out << "hashmac_energy_saving_pct=" << format_number(saving_sum / static_cast<double>(seeds.size())) << '\n';
    return kExitOk;
  });
}

int cmd_attack_suite(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario base = load_scenario(config.scenario_path);
    const auto seeds = seeds_for(config, base);
    std::vector<Scenario> runs;
    for (std::uint64_t seed : seeds) {
      for (AttackKind kind : kAllAttackKinds) {
        for (TargetLayer layer : kAllTargetLayers) runs.push_back(suite_cell(with_seed(base, seed), kind, layer));
      }
    }
    const auto reports = run_all(runs, 0, trace_dir_for(config));
    write_all(reports, config, out);

    std::size_t i = 0;
    for (std::uint64_t seed : seeds) {
      CsvRows rows;
      out << "seed=" << seed << '\n';
      out << std::left << std::setw(22) << "kind" << std::setw(6) << "layer" << std::right << std::setw(10) << "injected"
          << std::setw(10) << "detected" << std::setw(9) << "allowed" << std::setw(16) << "detection_rate" << std::setw(10)
          << "captured" << std::setw(9) << "decoded" << '\n';
      for (AttackKind kind : kAllAttackKinds) {
        for (TargetLayer layer : kAllTargetLayers) {
          const MetricsReport& r = reports[i++];
          const AttackCell cell = r.attack_totals(kind, layer);
          const auto rate = detection_rate(r, kind, layer);
          const std::string slice = std::string(to_string(kind)) + ":" + std::string(to_string(layer));
          rows.add("attacks_injected", slice, cell.injected);
          rows.add("attacks_detected", slice, cell.detected);
          rows.add("attacker_allows", slice, cell.allowed);
          if (rate) rows.add("detection_rate", slice, *rate);
          rows.add("captured_packets", slice, r.captured_packets);
          rows.add("decoded_packets", slice, r.decoded_packets);
          out << std::left << std::setw(22) << to_string(kind) << std::setw(6) << to_string(layer) << std::right
              << std::setw(10) << cell.injected << std::setw(10) << cell.detected << std::setw(9) << cell.allowed
              << std::setw(16) << (rate ? format_number(*rate) : std::string("-")) << std::setw(10) << r.captured_packets
              << std::setw(9) << r.decoded_packets << '\n';
        }
      }
      const auto path = config.out_dir / (base.name + "_attack_suite_" + std::to_string(seed) + ".csv");
      write_file_atomic(path, rows.str());
      out << "wrote " << path.string() << '\n';
    }
    return kExitOk;
  });
}

int cmd_presets(const std::filesystem::path& dir, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) throw ConfigError("preset directory not found: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      const Scenario s = load_scenario(f);
      out << std::left << std::setw(28) << s.name << " devices=" << s.counts.devices << " ch=" << s.counts.cluster_heads
          << " bs=" << s.counts.base_stations << " loss=" << format_number(s.channel.loss_prob)
          << " attacks=" << s.attacks.size() << " mode=" << to_string(s.mode) << "  " << f.string() << '\n';
    }
    return kExitOk;
  });
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hash-MAC-DSDV network simulator"};
  app.require_subcommand(1);

  // Each subcommand binds its own storage; CLI11 resets shared targets.
  struct Bound {
    CliConfig config;
    std::optional<std::uint64_t> seed;
    std::string seeds_text;
    std::string mode_text;
    std::string format_text = "both";
  };
  std::filesystem::path default_out = "out";
  if (const char* env = std::getenv("HASHMAC_SIM_OUT"); env != nullptr && *env != '\0') default_out = env;
  std::filesystem::path preset_dir = HASHMAC_DEFAULT_PRESET_DIR;
  if (const char* env = std::getenv("HASHMAC_SIM_PRESETS"); env != nullptr && *env != '\0') preset_dir = env;

  auto add_common = [&](CLI::App* sub, Bound& b, bool with_mode) {
    b.config.out_dir = default_out;
    sub->add_option("--scenario", b.config.scenario_path, "Scenario JSON file")->required();
    auto* seed_opt = sub->add_option("--seed", b.seed, "Seed override");
    sub->add_option("--seeds", b.seeds_text, "Inclusive seed range A..B")->excludes(seed_opt);
    if (with_mode) sub->add_option("--mode", b.mode_text, "Routing mode: hashmac or dsdv");
    sub->add_option("--out", b.config.out_dir, "Output directory (default $HASHMAC_SIM_OUT or ./out)");
    sub->add_option("--format", b.format_text, "Report format: csv, json or both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    sub->add_flag("-v,--verbose", b.config.verbosity, "Also write a tick,node,event,detail trace per run");
  };

  Bound run_b;
  Bound compare_b;
  Bound suite_b;
  auto* run_cmd = app.add_subcommand("run", "Run one scenario");
  add_common(run_cmd, run_b, true);
  auto* compare_cmd = app.add_subcommand("compare", "Run Hash-MAC-DSDV and plain DSDV on the same scenario");
  add_common(compare_cmd, compare_b, false);
  auto* suite_cmd = app.add_subcommand("attack-suite", "Run every attack kind against every layer");
  add_common(suite_cmd, suite_b, false);
  auto* presets_cmd = app.add_subcommand("presets", "List the bundled scenario presets");
  presets_cmd->add_option("--dir", preset_dir, "Preset directory (default $HASHMAC_SIM_PRESETS or the bundled set)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  if (presets_cmd->parsed()) return cmd_presets(preset_dir, out, err);

  Bound& b = run_cmd->parsed() ? run_b : compare_cmd->parsed() ? compare_b : suite_b;
  b.config.subcommand = run_cmd->parsed() ? "run" : compare_cmd->parsed() ? "compare" : "attack-suite";
  const int rc = guarded(err, [&] {
    if (b.seed) b.config.seeds = {*b.seed};
    if (!b.seeds_text.empty()) b.config.seeds = parse_seed_range(b.seeds_text);
    if (!b.mode_text.empty()) {
      b.config.mode = parse_routing_mode(b.mode_text);
      if (!b.config.mode) throw ConfigError("--mode: unknown mode '" + b.mode_text + "' (hashmac, dsdv)");
    }
    b.config.format = parse_report_format(b.format_text).value_or(ReportFormat::Both);
    return kExitOk;
  });
  if (rc != kExitOk) return rc;

  if (b.config.subcommand == "run") return cmd_run(b.config, out, err);
  if (b.config.subcommand == "compare") return cmd_compare(b.config, out, err);
  return cmd_attack_suite(b.config, out, err);
}

}  // namespace hashmac::cli
