#include "hashmac/metrics/writer.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <system_error>

#include <json.hpp>

#include "hashmac/core/errors.hpp"

namespace hashmac {
namespace {

using json = nlohmann::json;

std::string cell_slice(const AttackCellKey& key) {
  return std::string(to_string(key.kind)) + ":" + std::string(to_string(key.layer));
}

std::optional<NodeRole> parse_role(std::string_view text) {
  for (NodeRole r : {NodeRole::Device, NodeRole::ClusterHead, NodeRole::BaseStation, NodeRole::Attacker}) {
    if (to_string(r) == text) return r;
  }
  return std::nullopt;
}

std::optional<DropCause> parse_drop_cause(std::string_view text) {
  for (DropCause c : {DropCause::NoRoute, DropCause::ChannelLoss, DropCause::DeadNode, DropCause::AuthDenied}) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::Csv;
  if (text == "json") return ReportFormat::Json;
  if (text == "both") return ReportFormat::Both;
  return std::nullopt;
}

std::string format_number(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

CsvRows::CsvRows() : text_("metric,slice,value\n") {}

void CsvRows::add(std::string_view metric, std::string_view slice, std::string_view value) {
  text_.append(metric).append(",").append(slice).append(",").append(value).append("\n");
}

void CsvRows::add(std::string_view metric, std::string_view slice, std::uint64_t value) {
  add(metric, slice, std::string_view(std::to_string(value)));
}

void CsvRows::add(std::string_view metric, std::string_view slice, double value) {
  add(metric, slice, std::string_view(format_number(value)));
}

std::string to_csv(const MetricsReport& r) {
  CsvRows rows;
  const Plr loss = plr(r);
  rows.add("packets_sent", "all", r.packets_sent);
  rows.add("packets_received", "all", r.packets_received);
  rows.add("plr_absolute", "all", loss.absolute);
  rows.add("plr_ratio", "all", loss.ratio);
  rows.add("drop_events", "all", r.drop_events());
  for (DropCause c : {DropCause::NoRoute, DropCause::ChannelLoss, DropCause::DeadNode, DropCause::AuthDenied}) {
    auto it = r.drops.find(c);
    rows.add("drops", to_string(c), it == r.drops.end() ? std::uint64_t{0} : it->second);
  }

  rows.add("latency_samples", "all", static_cast<std::uint64_t>(r.latency_samples.size()));
  if (auto mean = latency_mean(r)) rows.add("latency_mean_ticks", "all", *mean);
  for (auto [name, p] : {std::pair{"latency_p50_ticks", 50.0}, {"latency_p95_ticks", 95.0}, {"latency_p99_ticks", 99.0}}) {
    if (auto v = latency_percentile(r, p)) rows.add(name, "all", static_cast<std::uint64_t>(*v));
  }

  if (auto e = energy_mean(r, NodeRole::Device)) rows.add("energy_mean_mJ", r.mode, *e);
  if (auto e = energy_mean(r, NodeRole::ClusterHead)) rows.add("energy_mean_ch_mJ", r.mode, *e);
  if (auto e = energy_mean(r, NodeRole::BaseStation)) rows.add("energy_mean_bs_mJ", r.mode, *e);
  rows.add("energy_total_mJ", r.mode, energy_total(r));

  rows.add("alarms_raised", "all", r.alarms_raised);
  rows.add("duplicates_suppressed", "all", r.duplicates_suppressed);
  rows.add("legit_denials", "all", r.legit_denials);
  rows.add("route_poisoning_rejected", "all", r.route_poisoning_rejected);
  rows.add("control_losses", "all", r.control_losses);
  rows.add("dead_nodes", "all", r.dead_nodes);
  for (NodeRole role : {NodeRole::Device, NodeRole::ClusterHead, NodeRole::BaseStation}) {
    auto sent = r.route_updates_sent.find(role);
    rows.add("route_updates_sent", to_string(role), sent == r.route_updates_sent.end() ? std::uint64_t{0} : sent->second);
  }
  for (NodeRole role : {NodeRole::Device, NodeRole::ClusterHead, NodeRole::BaseStation}) {
    auto steady = r.route_updates_steady.find(role);
    rows.add("route_updates_steady", to_string(role),
             steady == r.route_updates_steady.end() ? std::uint64_t{0} : steady->second);
  }

  for (const auto& [key, cell] : r.attacks) {
    const std::string slice = cell_slice(key);
    rows.add("attacks_injected", slice, cell.injected);
    rows.add("attacks_detected", slice, cell.detected);
    rows.add("attacker_allows", slice, cell.allowed);
    if (auto rate = detection_rate(r, key.kind, key.layer)) rows.add("detection_rate", slice, *rate);
  }
  if (!r.attacks.empty()) {
    if (auto rate = detection_rate(r)) rows.add("detection_rate", "all", *rate);
    for (TargetLayer layer : kAllTargetLayers) {
      if (auto rate = detection_rate(r, std::nullopt, layer)) {
        rows.add("detection_rate", "layer=" + std::string(to_string(layer)), *rate);
      }
    }
  }
  rows.add("captured_packets", "all", r.captured_packets);
  rows.add("decoded_packets", "all", r.decoded_packets);

  for (const auto& [id, mj] : r.energy_per_node) rows.add("energy_node_mJ", std::to_string(id), mj);
  return rows.str();
}

std::string to_json(const MetricsReport& r) {
  json j;
  j["scenario"] = r.scenario;
  j["mode"] = r.mode;
  j["seed"] = r.seed;
  json attacks = json::array();
  for (const auto& [key, cell] : r.attacks) {
    attacks.push_back({{"kind", to_string(key.kind)},
                       {"target_layer", to_string(key.layer)},
                       {"injected", cell.injected},
                       {"detected", cell.detected},
                       {"allowed", cell.allowed}});
  }
  j["attacks"] = attacks;
  j["captured_packets"] = r.captured_packets;
  j["decoded_packets"] = r.decoded_packets;
  j["packets_sent"] = r.packets_sent;
  j["packets_received"] = r.packets_received;
  json drops = json::object();
  for (const auto& [cause, n] : r.drops) drops[std::string(to_string(cause))] = n;
  j["drops"] = drops;
  j["latency_samples"] = r.latency_samples;
  json energy = json::array();
  for (const auto& [id, mj] : r.energy_per_node) {
    auto role = r.node_roles.find(id);
    energy.push_back({{"node", id},
                      {"role", role == r.node_roles.end() ? "unknown" : to_string(role->second)},
                      {"consumed_mJ", mj}});
  }
  j["energy_per_node"] = energy;
  j["alarms_raised"] = r.alarms_raised;
  j["duplicates_suppressed"] = r.duplicates_suppressed;
  j["legit_denials"] = r.legit_denials;
  j["route_poisoning_rejected"] = r.route_poisoning_rejected;
  j["control_losses"] = r.control_losses;
  j["dead_nodes"] = r.dead_nodes;
  auto by_role = [](const std::map<NodeRole, std::uint64_t>& m) {
    json o = json::object();
    for (const auto& [role, n] : m) o[std::string(to_string(role))] = n;
    return o;
  };
  j["route_updates_sent"] = by_role(r.route_updates_sent);
  j["route_updates_steady"] = by_role(r.route_updates_steady);
  return j.dump(2) + "\n";
}

MetricsReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed report JSON: ") + e.what());
  }
  try {
    MetricsReport r;
    r.scenario = j.at("scenario").get<std::string>();
    r.mode = j.at("mode").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& a : j.at("attacks")) {
      auto kind = parse_attack_kind(a.at("kind").get<std::string>());
      auto layer = parse_target_layer(a.at("target_layer").get<std::string>());
      if (!kind || !layer) throw ConfigError("attacks: unknown kind or layer");
      r.attacks[{*kind, *layer}] =
          AttackCell{a.at("injected").get<std::uint64_t>(), a.at("detected").get<std::uint64_t>(),
                     a.at("allowed").get<std::uint64_t>()};
    }
    r.captured_packets = j.at("captured_packets").get<std::uint64_t>();
    r.decoded_packets = j.at("decoded_packets").get<std::uint64_t>();
    r.packets_sent = j.at("packets_sent").get<std::uint64_t>();
    r.packets_received = j.at("packets_received").get<std::uint64_t>();
    for (const auto& [name, n] : j.at("drops").items()) {
      auto cause = parse_drop_cause(name);
      if (!cause) throw ConfigError("drops: unknown cause " + name);
      r.drops[*cause] = n.get<std::uint64_t>();
    }
    r.latency_samples = j.at("latency_samples").get<std::vector<SimTime>>();
    for (const auto& e : j.at("energy_per_node")) {
      const auto id = e.at("node").get<NodeId>();
      r.energy_per_node[id] = e.at("consumed_mJ").get<double>();
      if (auto role = parse_role(e.at("role").get<std::string>())) r.node_roles[id] = *role;
    }
    r.alarms_raised = j.at("alarms_raised").get<std::uint64_t>();
    r.duplicates_suppressed = j.at("duplicates_suppressed").get<std::uint64_t>();
    r.legit_denials = j.at("legit_denials").get<std::uint64_t>();
    r.route_poisoning_rejected = j.at("route_poisoning_rejected").get<std::uint64_t>();
    r.control_losses = j.at("control_losses").get<std::uint64_t>();
    r.dead_nodes = j.at("dead_nodes").get<std::uint64_t>();
    auto read_roles = [](const json& o, std::map<NodeRole, std::uint64_t>& out) {
      for (const auto& [name, n] : o.items()) {
        if (auto role = parse_role(name)) out[*role] = n.get<std::uint64_t>();
      }
    };
    read_roles(j.at("route_updates_sent"), r.route_updates_sent);
    read_roles(j.at("route_updates_steady"), r.route_updates_steady);
    return r;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("report JSON: ") + e.what());
  }
}

std::string report_stem(const MetricsReport& report) {
  return report.scenario + "_" + report.mode + "_" + std::to_string(report.seed);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("write failed for " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IoError("cannot move report into place at " + path.string() + ": " + ec.message());
  }
}

std::vector<std::filesystem::path> write_report(const MetricsReport& report, const std::filesystem::path& out_dir,
                                                ReportFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  const std::string stem = report_stem(report);
  if (format == ReportFormat::Csv || format == ReportFormat::Both) {
    written.push_back(out_dir / (stem + ".csv"));
    write_file_atomic(written.back(), to_csv(report));
  }
  if (format == ReportFormat::Json || format == ReportFormat::Both) {
    written.push_back(out_dir / (stem + ".json"));
    write_file_atomic(written.back(), to_json(report));
  }
  return written;
}

}  // namespace hashmac
