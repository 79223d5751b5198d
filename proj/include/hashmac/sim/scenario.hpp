#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hashmac/core/mac_address.hpp"
#include "hashmac/routing/routing_table.hpp"
#include "hashmac/sim/attack.hpp"

namespace hashmac {

struct NodeCounts {
  std::uint32_t devices = 1;
  std::uint32_t cluster_heads = 1;
  std::uint32_t base_stations = 1;
};

/// Independent Bernoulli loss per hop; latency = airtime + base + U[0, jitter].
struct ChannelModel {
  double loss_prob = 0.0;
  SimTime base_ticks = 1000;
  SimTime jitter_ticks = 500;
};

struct TrafficModel {
  SimTime packet_interval_ticks = kTicksPerSecond;  // 0 disables data traffic
  std::uint32_t payload_bytes = 128;
};

/// Knobs the scheme leaves open. All optional in scenario files.
struct ProtocolParams {
  SimTime freshness_window_ticks = kTicksPerSecond;
  SimTime warmup_ticks = kTicksPerSecond;
  std::uint32_t bootstrap_rounds = 3;
  std::uint32_t advert_rounds = 3;
  SimTime round_interval_ticks = 200'000;
  SimTime dsdv_period_ticks = 15 * kTicksPerSecond;
  SimTime processing_ticks = 100;
  double initial_energy_mah = 60'000.0;
  double battery_voltage = 3.0;
};

struct LinkBreak {
  SimTime tick = 0;
  NodeId a = kNoNode;
  NodeId b = kNoNode;
};

struct Scenario {
  std::string name = "scenario";
  NodeCounts counts;
  ChannelModel channel;
  TrafficModel traffic;
  std::vector<AttackSpec> attacks;
  std::uint64_t seed = 1;
  SimTime duration_ticks = 10 * kTicksPerSecond;
  RoutingMode mode = RoutingMode::HashMacDsdv;
  std::vector<MacAddress48> macs;  // optional, one per legitimate node in id order
  ProtocolParams protocol;
  std::vector<LinkBreak> link_breaks;

  std::size_t legit_node_count() const {
    return static_cast<std::size_t>(counts.devices) + counts.cluster_heads + counts.base_stations;
  }
};

/// Throws ConfigError naming the offending key.
Scenario parse_scenario(const std::string& json_text, const std::string& default_name = "scenario");
Scenario load_scenario(const std::filesystem::path& path);

/// Checks counts, channel and attack ranges; throws ConfigError citing the
/// violated constraint.
void validate(const Scenario& scenario);

std::string to_json(const Scenario& scenario);

}  // namespace hashmac
