#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hashmac/metrics/report.hpp"
#include "hashmac/metrics/writer.hpp"
#include "hashmac/sim/scenario.hpp"

namespace hashmac::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;

struct CliConfig {
  std::string subcommand;
  std::filesystem::path scenario_path;
  std::filesystem::path out_dir = "out";
  std::vector<std::uint64_t> seeds;  // empty: the scenario's own seed
  std::optional<RoutingMode> mode;
  ReportFormat format = ReportFormat::Both;
  int verbosity = 0;
};

/// "A..B" inclusive, or a single number. Throws ConfigError.
std::vector<std::uint64_t> parse_seed_range(std::string_view text);

/// Runs every scenario, `threads` at a time; results keep input order.
std::vector<MetricsReport> run_all(const std::vector<Scenario>& scenarios, unsigned threads = 0,
                                   const std::filesystem::path& trace_dir = {});

/// Relative saving of Hash-MAC over baseline in mean per-device energy, in
/// percent. 0 when the baseline consumed nothing.
double energy_saving_pct(const MetricsReport& hashmac, const MetricsReport& baseline);

/// `metric,slice,value` delta rows (hashmac - dsdv) for one seed.
void add_compare_rows(CsvRows& rows, const MetricsReport& hashmac, const MetricsReport& baseline);

/// The base scenario with its attack list replaced by a single attack of the
/// given cell. Count, rate and start come from the base's first attack.
Scenario suite_cell(const Scenario& base, AttackKind kind, TargetLayer layer);

int cmd_run(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_attack_suite(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_presets(const std::filesystem::path& dir, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; returns the process exit code.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hashmac::cli
