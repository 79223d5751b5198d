#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hashmac/core/types.hpp"
#include "hashmac/sim/attack.hpp"

namespace hashmac {

struct AttackCell {
  std::uint64_t injected = 0;  // active requests sent by attackers
  std::uint64_t detected = 0;  // denied and (alarmed or blacklisted)
  std::uint64_t allowed = 0;   // false accepts
  friend bool operator==(const AttackCell&, const AttackCell&) = default;
};

enum class DropCause : std::uint8_t { NoRoute, ChannelLoss, DeadNode, AuthDenied };

std::string_view to_string(DropCause cause);

/// Everything one run measured. Immutable once the run completes.
struct MetricsReport {
  std::string scenario;
  std::string mode;
  std::uint64_t seed = 0;

  std::map<AttackCellKey, AttackCell> attacks;
  std::uint64_t captured_packets = 0;
  std::uint64_t decoded_packets = 0;

  std::uint64_t packets_sent = 0;
  std::uint64_t packets_received = 0;
  std::map<DropCause, std::uint64_t> drops;  // data packets only, tallied at each drop site
  std::vector<SimTime> latency_samples;

  std::map<NodeId, double> energy_per_node;  // consumed mJ, legitimate nodes
  std::map<NodeId, NodeRole> node_roles;

  std::uint64_t alarms_raised = 0;
  std::uint64_t duplicates_suppressed = 0;
  std::uint64_t legit_denials = 0;
  std::uint64_t route_poisoning_rejected = 0;
  std::uint64_t control_losses = 0;
  std::uint64_t dead_nodes = 0;
  std::map<NodeRole, std::uint64_t> route_updates_sent;
  std::map<NodeRole, std::uint64_t> route_updates_steady;  // sent after warm-up

  std::uint64_t drop_events() const;
  AttackCell attack_totals(std::optional<AttackKind> kind = std::nullopt,
                           std::optional<TargetLayer> layer = std::nullopt) const;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

/// Packet-loss as the plain difference sent - received, and as a fraction.
struct Plr {
  std::uint64_t absolute = 0;
  double ratio = 0.0;
};

Plr plr(const MetricsReport& report);

/// detected / injected over the requested slice; nullopt when nothing was
/// injected there.
std::optional<double> detection_rate(const MetricsReport& report, std::optional<AttackKind> kind = std::nullopt,
                                     std::optional<TargetLayer> layer = std::nullopt);

/// Nearest-rank percentile of the latency samples, p in (0, 100].
std::optional<SimTime> latency_percentile(const MetricsReport& report, double p);
std::optional<double> latency_mean(const MetricsReport& report);

/// Mean consumed energy over nodes of one role, in mJ.
std::optional<double> energy_mean(const MetricsReport& report, NodeRole role);
double energy_total(const MetricsReport& report);

}  // namespace hashmac
