#include "hashmac/metrics/report.hpp"

#include <algorithm>
#include <cmath>

namespace hashmac {

std::string_view to_string(DropCause cause) {
  switch (cause) {
    case DropCause::NoRoute:
      return "no_route";
    case DropCause::ChannelLoss:
      return "channel_loss";
    case DropCause::DeadNode:
      return "dead_node";
    case DropCause::AuthDenied:
      return "auth_denied";
  }
  return "unknown";
}

std::uint64_t MetricsReport::drop_events() const {
  std::uint64_t total = 0;
  for (const auto& [cause, n] : drops) total += n;
  return total;
}

AttackCell MetricsReport::attack_totals(std::optional<AttackKind> kind, std::optional<TargetLayer> layer) const {
  AttackCell sum;
  for (const auto& [key, cell] : attacks) {
    if (kind && key.kind != *kind) continue;
    if (layer && key.layer != *layer) continue;
    sum.injected += cell.injected;
    sum.detected += cell.detected;
    sum.allowed += cell.allowed;
  }
  return sum;
}

Plr plr(const MetricsReport& report) {
  Plr out;
  if (report.packets_sent == 0) return out;
  out.absolute = report.packets_sent - std::min(report.packets_received, report.packets_sent);
  out.ratio = static_cast<double>(out.absolute) / static_cast<double>(report.packets_sent);
  return out;
}

std::optional<double> detection_rate(const MetricsReport& report, std::optional<AttackKind> kind,
                                     std::optional<TargetLayer> layer) {
  const AttackCell cell = report.attack_totals(kind, layer);
  if (cell.injected == 0) return std::nullopt;
  return static_cast<double>(cell.detected) / static_cast<double>(cell.injected);
}

std::optional<SimTime> latency_percentile(const MetricsReport& report, double p) {
  if (report.latency_samples.empty()) return std::nullopt;
  std::vector<SimTime> sorted = report.latency_samples;
  std::sort(sorted.begin(), sorted.end());
  const double rank = std::ceil(p / 100.0 * static_cast<double>(sorted.size()));
  const std::size_t idx = static_cast<std::size_t>(std::clamp(rank, 1.0, static_cast<double>(sorted.size()))) - 1;
  return sorted[idx];
}

std::optional<double> latency_mean(const MetricsReport& report) {
  if (report.latency_samples.empty()) return std::nullopt;
  long double sum = 0;
  for (SimTime t : report.latency_samples) sum += t;
  return static_cast<double>(sum / report.latency_samples.size());
}

std::optional<double> energy_mean(const MetricsReport& report, NodeRole role) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& [id, mj] : report.energy_per_node) {
    auto it = report.node_roles.find(id);
    if (it == report.node_roles.end() || it->second != role) continue;
    sum += mj;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

double energy_total(const MetricsReport& report) {
  double sum = 0.0;
  for (const auto& [id, mj] : report.energy_per_node) sum += mj;
  return sum;
}

}  // namespace hashmac
