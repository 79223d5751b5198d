#include "hashmac/sim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hashmac/core/errors.hpp"

namespace hashmac {
namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& what) { throw ConfigError(key + ": " + what); }

const json* child(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& require_object(const json& obj, const char* key, const std::string& path) {
  const json* v = child(obj, key);
  if (v == nullptr) fail(path, "missing required key");
  if (!v->is_object()) fail(path, "expected an object");
  return *v;
}

std::uint64_t read_uint(const json& obj, const char* key, const std::string& path, std::optional<std::uint64_t> dflt) {
  const json* v = child(obj, key);
  if (v == nullptr) {
    if (!dflt) fail(path, "missing required key");
    return *dflt;
  }
  if (!v->is_number_integer() || (v->is_number_integer() && !v->is_number_unsigned() && v->get<std::int64_t>() < 0)) {
    fail(path, "expected a non-negative integer");
  }
  return v->get<std::uint64_t>();
}

double read_double(const json& obj, const char* key, const std::string& path, std::optional<double> dflt) {
  const json* v = child(obj, key);
  if (v == nullptr) {
    if (!dflt) fail(path, "missing required key");
    return *dflt;
  }
  if (!v->is_number()) fail(path, "expected a number");
  return v->get<double>();
}

std::string read_string(const json& obj, const char* key, const std::string& path, std::optional<std::string> dflt) {
  const json* v = child(obj, key);
  if (v == nullptr) {
    if (!dflt) fail(path, "missing required key");
    return *dflt;
  }
  if (!v->is_string()) fail(path, "expected a string");
  return v->get<std::string>();
}

std::uint32_t narrow32(std::uint64_t v, const std::string& path) {
  if (v > std::numeric_limits<std::uint32_t>::max()) fail(path, "value too large");
  return static_cast<std::uint32_t>(v);
}

AttackSpec parse_attack(const json& j, const std::string& path, const ProtocolParams& protocol) {
  if (!j.is_object()) fail(path, "expected an object");
  AttackSpec spec;
  const std::string kind_text = read_string(j, "kind", path + ".kind", std::nullopt);
  auto kind = parse_attack_kind(kind_text);
  if (!kind) fail(path + ".kind", "unknown attack kind '" + kind_text + "'");
  spec.kind = *kind;
  spec.count = narrow32(read_uint(j, "count", path + ".count", 1), path + ".count");
  const std::string layer_text =
      read_string(j, "target_layer", path + ".target_layer", std::string(to_string(default_layer(spec.kind))));
  auto layer = parse_target_layer(layer_text);
  if (!layer) fail(path + ".target_layer", "unknown layer '" + layer_text + "' (device, ch, bs)");
  spec.target_layer = *layer;
  spec.start_tick = read_uint(j, "start_tick", path + ".start_tick", protocol.warmup_ticks);
  spec.rate = read_double(j, "rate", path + ".rate", 10.0);
  return spec;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text, const std::string& default_name) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("<root>: expected an object");

  Scenario s;
  s.name = read_string(root, "name", "name", default_name);

  const json& counts = require_object(root, "counts", "counts");
  s.counts.devices = narrow32(read_uint(counts, "devices", "counts.devices", std::nullopt), "counts.devices");
  s.counts.cluster_heads =
      narrow32(read_uint(counts, "cluster_heads", "counts.cluster_heads", std::nullopt), "counts.cluster_heads");
  s.counts.base_stations =
      narrow32(read_uint(counts, "base_stations", "counts.base_stations", std::nullopt), "counts.base_stations");

  if (const json* channel = child(root, "channel")) {
    if (!channel->is_object()) fail("channel", "expected an object");
    s.channel.loss_prob = read_double(*channel, "loss_prob", "channel.loss_prob", 0.0);
    if (const json* latency = child(*channel, "latency")) {
      if (!latency->is_object()) fail("channel.latency", "expected an object");
      s.channel.base_ticks = read_uint(*latency, "base_ticks", "channel.latency.base_ticks", s.channel.base_ticks);
      s.channel.jitter_ticks =
          read_uint(*latency, "jitter_ticks", "channel.latency.jitter_ticks", s.channel.jitter_ticks);
    }
  }

  if (const json* traffic = child(root, "traffic")) {
    if (!traffic->is_object()) fail("traffic", "expected an object");
    s.traffic.packet_interval_ticks =
        read_uint(*traffic, "packet_interval_ticks", "traffic.packet_interval_ticks", s.traffic.packet_interval_ticks);
    s.traffic.payload_bytes = narrow32(
        read_uint(*traffic, "payload_bytes", "traffic.payload_bytes", s.traffic.payload_bytes), "traffic.payload_bytes");
  }

  if (const json* protocol = child(root, "protocol")) {
    if (!protocol->is_object()) fail("protocol", "expected an object");
    auto& p = s.protocol;
    p.freshness_window_ticks =
        read_uint(*protocol, "freshness_window_ticks", "protocol.freshness_window_ticks", p.freshness_window_ticks);
    p.warmup_ticks = read_uint(*protocol, "warmup_ticks", "protocol.warmup_ticks", p.warmup_ticks);
    p.bootstrap_rounds = narrow32(
        read_uint(*protocol, "bootstrap_rounds", "protocol.bootstrap_rounds", p.bootstrap_rounds), "protocol.bootstrap_rounds");
    p.advert_rounds = narrow32(read_uint(*protocol, "advert_rounds", "protocol.advert_rounds", p.advert_rounds),
                               "protocol.advert_rounds");
    p.round_interval_ticks =
        read_uint(*protocol, "round_interval_ticks", "protocol.round_interval_ticks", p.round_interval_ticks);
    p.dsdv_period_ticks = read_uint(*protocol, "dsdv_period_ticks", "protocol.dsdv_period_ticks", p.dsdv_period_ticks);
    p.processing_ticks = read_uint(*protocol, "processing_ticks", "protocol.processing_ticks", p.processing_ticks);
    p.initial_energy_mah =
        read_double(*protocol, "initial_energy_mah", "protocol.initial_energy_mah", p.initial_energy_mah);
    p.battery_voltage = read_double(*protocol, "battery_voltage", "protocol.battery_voltage", p.battery_voltage);
  }

  if (const json* attacks = child(root, "attacks")) {
    if (!attacks->is_array()) fail("attacks", "expected an array");
    for (std::size_t i = 0; i < attacks->size(); ++i) {
      s.attacks.push_back(parse_attack((*attacks)[i], "attacks[" + std::to_string(i) + "]", s.protocol));
    }
  }

  s.seed = read_uint(root, "seed", "seed", s.seed);
  s.duration_ticks = read_uint(root, "duration_ticks", "duration_ticks", std::nullopt);

  const std::string mode_text = read_string(root, "mode", "mode", "hashmac");
  auto mode = parse_routing_mode(mode_text);
  if (!mode) fail("mode", "unknown mode '" + mode_text + "' (hashmac, dsdv)");
  s.mode = *mode;

  if (const json* macs = child(root, "macs")) {
    if (!macs->is_array()) fail("macs", "expected an array of MAC strings");
    for (std::size_t i = 0; i < macs->size(); ++i) {
      const std::string path = "macs[" + std::to_string(i) + "]";
      if (!(*macs)[i].is_string()) fail(path, "expected a MAC string");
      auto mac = MacAddress48::parse((*macs)[i].get<std::string>());
      if (!mac) fail(path, "not a MAC address (aa:bb:cc:dd:ee:ff)");
      s.macs.push_back(*mac);
    }
  }

  if (const json* breaks = child(root, "link_breaks")) {
    if (!breaks->is_array()) fail("link_breaks", "expected an array");
    for (std::size_t i = 0; i < breaks->size(); ++i) {
      const std::string path = "link_breaks[" + std::to_string(i) + "]";
      const json& b = (*breaks)[i];
      if (!b.is_object()) fail(path, "expected an object");
      s.link_breaks.push_back(LinkBreak{read_uint(b, "tick", (path + ".tick").c_str(), std::nullopt),
                                        narrow32(read_uint(b, "a", path + ".a", std::nullopt), path + ".a"),
                                        narrow32(read_uint(b, "b", path + ".b", std::nullopt), path + ".b")});
    }
  }

  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_scenario(text.str(), path.stem().string());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void validate(const Scenario& s) {
  const auto& c = s.counts;
  if (c.devices == 0) fail("counts.devices", "must be positive");
  if (c.cluster_heads == 0) fail("counts.cluster_heads", "must be positive");
  if (c.base_stations == 0) fail("counts.base_stations", "must be positive");
  if (c.cluster_heads > c.devices) fail("counts.cluster_heads", "must not exceed counts.devices (every CH needs a device)");
  if (c.base_stations > c.cluster_heads) {
    fail("counts.base_stations", "must not exceed counts.cluster_heads (every BS needs a CH)");
  }
  if (!(s.channel.loss_prob >= 0.0 && s.channel.loss_prob <= 1.0)) fail("channel.loss_prob", "must lie in [0, 1]");
  if (s.traffic.payload_bytes == 0) fail("traffic.payload_bytes", "must be positive");
  if (s.protocol.round_interval_ticks == 0) fail("protocol.round_interval_ticks", "must be positive");
  if (s.protocol.dsdv_period_ticks == 0) fail("protocol.dsdv_period_ticks", "must be positive");
  if (!(s.protocol.initial_energy_mah > 0.0)) fail("protocol.initial_energy_mah", "must be positive");
  if (!(s.protocol.battery_voltage > 0.0)) fail("protocol.battery_voltage", "must be positive");
  for (std::size_t i = 0; i < s.attacks.size(); ++i) {
    const auto& a = s.attacks[i];
    const std::string path = "attacks[" + std::to_string(i) + "]";
    if (a.count == 0) fail(path + ".count", "must be positive");
    if (!(a.rate > 0.0) || !std::isfinite(a.rate)) fail(path + ".rate", "must be a positive number");
  }
  if (!s.macs.empty()) {
    if (s.macs.size() != s.legit_node_count()) {
      fail("macs", "expected " + std::to_string(s.legit_node_count()) + " entries (one per BS, CH and device)");
    }
    std::set<MacAddress48> seen(s.macs.begin(), s.macs.end());
    if (seen.size() != s.macs.size()) fail("macs", "MAC addresses must be unique");
  }
  const std::size_t n = s.legit_node_count();
  for (std::size_t i = 0; i < s.link_breaks.size(); ++i) {
    const auto& b = s.link_breaks[i];
    if (b.a >= n || b.b >= n || b.a == b.b) {
      fail("link_breaks[" + std::to_string(i) + "]", "endpoints must be two distinct legitimate node ids");
    }
  }
}

std::string to_json(const Scenario& s) {
  json root;
  root["name"] = s.name;
  root["counts"] = {{"devices", s.counts.devices},
                    {"cluster_heads", s.counts.cluster_heads},
                    {"base_stations", s.counts.base_stations}};
  root["channel"] = {{"loss_prob", s.channel.loss_prob},
                     {"latency", {{"base_ticks", s.channel.base_ticks}, {"jitter_ticks", s.channel.jitter_ticks}}}};
  root["traffic"] = {{"packet_interval_ticks", s.traffic.packet_interval_ticks},
                     {"payload_bytes", s.traffic.payload_bytes}};
  json attacks = json::array();
  for (const auto& a : s.attacks) {
    attacks.push_back({{"kind", to_string(a.kind)},
                       {"count", a.count},
                       {"target_layer", to_string(a.target_layer)},
                       {"start_tick", a.start_tick},
                       {"rate", a.rate}});
  }
  root["attacks"] = attacks;
  root["seed"] = s.seed;
  root["duration_ticks"] = s.duration_ticks;
  root["mode"] = to_string(s.mode);
  const auto& p = s.protocol;
  root["protocol"] = {{"freshness_window_ticks", p.freshness_window_ticks},
                      {"warmup_ticks", p.warmup_ticks},
                      {"bootstrap_rounds", p.bootstrap_rounds},
                      {"advert_rounds", p.advert_rounds},
                      {"round_interval_ticks", p.round_interval_ticks},
                      {"dsdv_period_ticks", p.dsdv_period_ticks},
                      {"processing_ticks", p.processing_ticks},
                      {"initial_energy_mah", p.initial_energy_mah},
                      {"battery_voltage", p.battery_voltage}};
  if (!s.macs.empty()) {
    json macs = json::array();
    for (const auto& m : s.macs) macs.push_back(m.to_string());
    root["macs"] = macs;
  }
  if (!s.link_breaks.empty()) {
    json breaks = json::array();
    for (const auto& b : s.link_breaks) breaks.push_back({{"tick", b.tick}, {"a", b.a}, {"b", b.b}});
    root["link_breaks"] = breaks;
  }
  return root.dump(2) + "\n";
}

}  // namespace hashmac
