#include "hashmac/sim/kernel.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "hashmac/protocol/registration.hpp"
#include "hashmac/sim/rng.hpp"

namespace hashmac {
namespace {

constexpr std::size_t kPacketBytes = 128;

std::string join_ids(const std::vector<NodeId>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += '+';
    out += std::to_string(ids[i]);
  }
  return out;
}

std::string_view message_kind(const Message& m) {
  struct Visitor {
    std::string_view operator()(const DataPacket&) const { return "data"; }
    std::string_view operator()(const RouteUpdateMessage& r) const {
      return r.kind == UpdateKind::FullDump ? "route_dump" : "route_inc";
    }
    std::string_view operator()(const Advertisement&) const { return "advert"; }
    std::string_view operator()(const AlarmMessage&) const { return "alarm"; }
    std::string_view operator()(const AttackRequest&) const { return "attack"; }
  };
  return std::visit(Visitor{}, m);
}

MacAddress48 fabricated_mac(std::mt19937_64& rng) {
  std::uint64_t v = rng() & 0xFFFF'FFFF'FFFFull;
  v = (v & ~(0x01ull << 40)) | (0x02ull << 40);
  return MacAddress48::from_u64(v);
}

}  // namespace

Simulation::Simulation(Scenario scenario)
    : scenario_(std::move(scenario)),
      topo_(build_topology(scenario_)),
      channel_rng_(make_rng(scenario_.seed, RngStream::Channel)),
      attack_rng_(make_rng(scenario_.seed, RngStream::Attacks)) {
  const auto& h = topo_.hierarchy;
  const std::size_t n = h.size();
  const std::size_t legit = topo_.legit_count();

  routing_.reserve(n);
  for (const auto& node : h.nodes()) routing_.emplace_back(node.id, node.mac, scenario_.mode, legit);
  auth_.resize(n);
  registries_.resize(topo_.base_stations.size());
  for (NodeId bs : topo_.base_stations) advert_sources_.emplace_back(bs);

  const std::uint64_t budget_fj =
      battery_budget_fj(scenario_.protocol.initial_energy_mah, scenario_.protocol.battery_voltage);
  const double budget_mj = battery_budget_mj(scenario_.protocol.initial_energy_mah, scenario_.protocol.battery_voltage);
  energy_.assign(n, EnergyAccount(budget_fj, budget_mj));
  dead_.assign(n, false);
  received_.assign(n, 0);

  traffic_rng_.reserve(topo_.devices.size());
  for (std::size_t i = 0; i < topo_.devices.size(); ++i) {
    traffic_rng_.push_back(make_rng(scenario_.seed, RngStream::Traffic, i));
  }

  // Attack targets and identities are fixed up front, independent of event order.
  for (std::size_t i = 0; i < scenario_.attacks.size(); ++i) {
    const AttackSpec& spec = scenario_.attacks[i];
    const auto& pool = spec.target_layer == TargetLayer::Device        ? topo_.devices
                       : spec.target_layer == TargetLayer::ClusterHead ? topo_.cluster_heads
                                                                       : topo_.base_stations;
    attack_targets_.push_back(pool[uniform_below(attack_rng_, pool.size())]);

    std::vector<MacAddress48> macs;
    const MacAddress48 own = h.node(topo_.attackers[i]).mac;
    switch (spec.kind) {
      case AttackKind::Sybil:
        for (std::uint32_t k = 0; k < spec.count; ++k) {
          MacAddress48 mac;
          do {
            mac = fabricated_mac(attack_rng_);
          } while (std::any_of(h.nodes().begin(), h.nodes().end(), [&](const NodeInfo& x) { return x.mac == mac; }) ||
                   std::find(macs.begin(), macs.end(), mac) != macs.end());
          macs.push_back(mac);
        }
        break;
      case AttackKind::BsImpersonation: {
        MacAddress48 mac;
        do {
          mac = fabricated_mac(attack_rng_);
        } while (std::any_of(h.nodes().begin(), h.nodes().end(), [&](const NodeInfo& x) { return x.mac == mac; }));
        macs.push_back(mac);
        break;
      }
      case AttackKind::DoS:
      case AttackKind::DeviceImpersonation:
        macs.push_back(own);
        break;
      case AttackKind::Spoofing:
      case AttackKind::Eavesdrop:
        break;
    }
    attack_macs_.push_back(std::move(macs));
    report_.attacks[{spec.kind, spec.target_layer}];
  }
}

const MacRegistry& Simulation::registry(NodeId bs) const {
  const auto it = std::find(topo_.base_stations.begin(), topo_.base_stations.end(), bs);
  return registries_.at(static_cast<std::size_t>(it - topo_.base_stations.begin()));
}

void Simulation::schedule(SimTime at, NodeId target, EventPayload payload) {
  queue_.push(SimEvent{at, next_tiebreak_++, target, std::move(payload)});
}

void Simulation::trace(NodeId node, std::string_view event, const std::string& detail) {
  if (trace_ == nullptr) return;
  *trace_ << now_ << ',';
  if (node != kNoNode) *trace_ << node;
  *trace_ << ',' << event << ',' << detail << '\n';
}

const MetricsReport& Simulation::run() {
  if (finished_) return report_;
  report_.scenario = scenario_.name;
  report_.mode = std::string(to_string(scenario_.mode));
  report_.seed = scenario_.seed;

  if (hashmac()) register_devices();
  start_timers();
  while (!queue_.empty()) {
    SimEvent ev = queue_.top();
    queue_.pop();
    now_ = ev.at;
    dispatch(ev);
  }
  finish();
  finished_ = true;
  return report_;
}

void Simulation::register_devices() {
  const auto& h = topo_.hierarchy;
  for (NodeId dev : topo_.devices) {
    const NodeId ch = h.parent(dev);
    const NodeId bs = h.parent(ch);
    const auto idx = static_cast<std::size_t>(
        std::find(topo_.base_stations.begin(), topo_.base_stations.end(), bs) - topo_.base_stations.begin());
    const RegistrationRequest req{dev, h.node(dev).mac, ch, 0};
    const RegistrationResult res = handle_registration(req, h, bs, registries_[idx]);
    if (res.status == RegistrationStatus::Registered) {
      trace(bs, "register", "dev=" + std::to_string(dev) + " via=" + std::to_string(ch) + " ok");
    } else {
      trace(bs, "register", "dev=" + std::to_string(dev) + " denied=" + std::string(to_string(res.denial)));
    }
  }
}

void Simulation::start_timers() {
  const auto& p = scenario_.protocol;
  const SimTime end = scenario_.duration_ticks;
  const std::size_t legit = topo_.legit_count();

  for (std::uint32_t r = 0; r < p.bootstrap_rounds; ++r) {
    const SimTime at = r * p.round_interval_ticks;
    if (at >= end) break;
    for (NodeId id = 0; id < legit; ++id) schedule(at, id, BootstrapTimer{});
  }
  if (hashmac()) {
    for (std::uint32_t r = 0; r < p.advert_rounds; ++r) {
      const SimTime at = r * p.round_interval_ticks + p.round_interval_ticks / 2;
      if (at >= end) break;
      for (NodeId bs : topo_.base_stations) schedule(at, bs, AdvertTimer{});
    }
  } else if (p.dsdv_period_ticks > 0) {
    auto phases = make_rng(scenario_.seed, RngStream::Phases);
    for (NodeId id = 0; id < legit; ++id) {
      const SimTime at = p.warmup_ticks + uniform_below(phases, p.dsdv_period_ticks);
      if (at < end) schedule(at, id, PeriodicDumpTimer{});
    }
  }

  const SimTime interval = scenario_.traffic.packet_interval_ticks;
  if (interval > 0 && topo_.devices.size() > 1) {
    for (std::size_t i = 0; i < topo_.devices.size(); ++i) {
      const SimTime at = p.warmup_ticks + uniform_below(traffic_rng_[i], interval);
      if (at < end) schedule(at, topo_.devices[i], TrafficTimer{});
    }
  }

  for (std::size_t i = 0; i < scenario_.attacks.size(); ++i) {
    const AttackSpec& spec = scenario_.attacks[i];
    if (spec.kind == AttackKind::Eavesdrop) continue;
    if (spec.start_tick < end && spec.count > 0) schedule(spec.start_tick, topo_.attackers[i], AttackStepTimer{i, 0});
  }
  for (std::size_t i = 0; i < scenario_.link_breaks.size(); ++i) {
    const SimTime at = scenario_.link_breaks[i].tick;
    if (at < end) schedule(at, kNoNode, LinkBreakTimer{i});
  }
}

void Simulation::dispatch(const SimEvent& ev) {
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Delivery>) {
          on_delivery(ev.target, p);
        } else if constexpr (std::is_same_v<T, TrafficTimer>) {
          on_traffic(ev.target);
        } else if constexpr (std::is_same_v<T, PeriodicDumpTimer>) {
          on_periodic_dump(ev.target);
        } else if constexpr (std::is_same_v<T, BootstrapTimer>) {
          on_bootstrap(ev.target);
        } else if constexpr (std::is_same_v<T, AdvertTimer>) {
          on_advert(ev.target);
        } else if constexpr (std::is_same_v<T, AttackStepTimer>) {
          on_attack_step(ev.target, p);
        } else if constexpr (std::is_same_v<T, LinkBreakTimer>) {
          on_link_break(p);
        }
      },
      ev.payload);
}

bool Simulation::charge(NodeId node, Activity activity, SimTime ticks) {
  if (topo_.hierarchy.role(node) == NodeRole::Attacker) return true;
  if (dead_[node]) return false;
  if (!energy_[node].charge(power_, activity, now_, ticks)) {
    dead_[node] = true;
    ++report_.dead_nodes;
    trace(node, "dead", "energy depleted");
    return false;
  }
  return true;
}

void Simulation::capture(NodeId node) {
  for (std::size_t i = 0; i < scenario_.attacks.size(); ++i) {
    const AttackSpec& spec = scenario_.attacks[i];
    if (spec.kind == AttackKind::Eavesdrop && attack_targets_[i] == node && now_ >= spec.start_tick) {
      ++report_.captured_packets;
    }
  }
}

bool Simulation::link_up(NodeId a, NodeId b) const {
  return !broken_links_.contains({std::min(a, b), std::max(a, b)});
}

std::vector<NodeId> Simulation::neighbors(NodeId node) const {
  std::vector<NodeId> out;
  for (NodeId n : topo_.hierarchy.links(node)) {
    if (link_up(node, n)) out.push_back(n);
  }
  return out;
}

bool Simulation::transmit(NodeId from, const std::vector<NodeId>& to, std::shared_ptr<const Message> msg,
                          std::size_t bytes, std::string_view kind) {
  const SimTime airtime = airtime_for(bytes);
  if (!charge(from, Activity::Tx, airtime)) return false;
  trace(from, "tx", std::string(kind) + " to=" + join_ids(to) + " bytes=" + std::to_string(bytes));
  capture(from);
  const bool is_data = std::holds_alternative<DataPacket>(*msg);
  for (NodeId dst : to) {
    const bool lost = uniform_unit(channel_rng_) < scenario_.channel.loss_prob;
    const SimTime jitter = uniform_below(channel_rng_, scenario_.channel.jitter_ticks + 1);
    if (lost) {
      trace(dst, "lost", std::string(kind) + " from=" + std::to_string(from));
      if (is_data) {
        drop_data(dst, std::get<DataPacket>(*msg), DropCause::ChannelLoss);
      } else if (!std::holds_alternative<AttackRequest>(*msg)) {
        ++report_.control_losses;
      }
      continue;
    }
    schedule(now_ + airtime + scenario_.channel.base_ticks + jitter, dst, Delivery{from, msg});
  }
  return true;
}

void Simulation::on_delivery(NodeId to, const Delivery& d) {
  const Message& msg = *d.message;
  if (dead_[to]) {
    trace(to, "dead_drop", std::string(message_kind(msg)) + " from=" + std::to_string(d.from));
    if (const auto* pkt = std::get_if<DataPacket>(&msg)) drop_data(to, *pkt, DropCause::DeadNode);
    return;
  }
  std::size_t bytes = kPacketBytes;
  if (const auto* r = std::get_if<RouteUpdateMessage>(&msg)) bytes = r->wire_size(scenario_.mode);
  if (const auto* a = std::get_if<Advertisement>(&msg)) bytes = a->wire_size();
  if (!charge(to, Activity::Rx, airtime_for(bytes)) ||
      !charge(to, Activity::Normal, scenario_.protocol.processing_ticks)) {
    if (const auto* pkt = std::get_if<DataPacket>(&msg)) drop_data(to, *pkt, DropCause::DeadNode);
    return;
  }
  ++received_[to];
  capture(to);

  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DataPacket>) {
          handle_data(to, d.from, m);
        } else if constexpr (std::is_same_v<T, RouteUpdateMessage>) {
          handle_route_update(to, d.from, m);
        } else if constexpr (std::is_same_v<T, Advertisement>) {
          handle_advertisement(to, d.from, m);
        } else if constexpr (std::is_same_v<T, AlarmMessage>) {
          handle_alarm(to, m);
        } else if constexpr (std::is_same_v<T, AttackRequest>) {
          handle_attack(to, d.from, m);
        }
      },
      msg);
}

// Data traffic

void Simulation::on_traffic(NodeId device) {
  if (dead_[device]) return;
  const auto idx = static_cast<std::size_t>(device - topo_.devices.front());
  auto& rng = traffic_rng_[idx];
  std::size_t pick = uniform_below(rng, topo_.devices.size() - 1);
  if (pick >= idx) ++pick;

  const NodeInfo& self = topo_.hierarchy.node(device);
  const DataPacket pkt{next_packet_id_++, device, topo_.devices[pick], now_, self.mac, self.digest};
  ++report_.packets_sent;
  trace(device, "data_send", "id=" + std::to_string(pkt.id) + " dest=" + std::to_string(pkt.dest));
  forward_data(device, pkt);

  const SimTime next = now_ + scenario_.traffic.packet_interval_ticks;
  if (next < scenario_.duration_ticks) schedule(next, device, TrafficTimer{});
}

void Simulation::drop_data(NodeId at, const DataPacket& pkt, DropCause cause) {
  ++report_.drops[cause];
  trace(at, "drop", "id=" + std::to_string(pkt.id) + " cause=" + std::string(to_string(cause)));
}

void Simulation::forward_data(NodeId at, const DataPacket& pkt) {
  const auto nh = routing_[at].next_hop(pkt.dest);
  if (!nh || !link_up(at, *nh)) {
    drop_data(at, pkt, DropCause::NoRoute);
    return;
  }
  if (!transmit(at, {*nh}, std::make_shared<const Message>(pkt), scenario_.traffic.payload_bytes, "data")) {
    drop_data(at, pkt, DropCause::DeadNode);
  }
}

void Simulation::handle_data(NodeId at, NodeId from, const DataPacket& pkt) {
  if (hashmac()) {
    const AuthRequest req{pkt.origin_mac, pkt.origin_digest, pkt.origin, pkt.dest, pkt.created};
    const NodeRole role = topo_.hierarchy.role(at);
    const ChainContext chain{role == NodeRole::BaseStation ? &registry(at) : nullptr, &topo_.hierarchy, at, from};
    const LayeredVerdict lv = authenticate_at(role, req, auth_[at], now_, scenario_.protocol.freshness_window_ticks,
                                              role == NodeRole::BaseStation ? &chain : nullptr);
    if (!lv.verdict.allowed()) {
      ++report_.legit_denials;
      trace(at, "auth", "mac=" + pkt.origin_mac.to_string() + " deny=" + std::string(to_string(lv.verdict.deny_reason)));
      deny_and_alarm(at, pkt.origin_mac, lv);
      drop_data(at, pkt, DropCause::AuthDenied);
      return;
    }
  }
  if (at == pkt.dest) {
    ++report_.packets_received;
    report_.latency_samples.push_back(now_ - pkt.created);
    trace(at, "data_recv", "id=" + std::to_string(pkt.id) + " latency=" + std::to_string(now_ - pkt.created));
    return;
  }
  forward_data(at, pkt);
}

// Routing

void Simulation::on_bootstrap(NodeId node) {
  if (dead_[node]) return;
  send_dumps(node);
}

void Simulation::on_periodic_dump(NodeId node) {
  if (dead_[node]) return;
  routing_[node].advance_own_seq();
  send_dumps(node);
  const SimTime next = now_ + scenario_.protocol.dsdv_period_ticks;
  if (next < scenario_.duration_ticks) schedule(next, node, PeriodicDumpTimer{});
}

void Simulation::send_dumps(NodeId node) {
  for (NodeId nb : neighbors(node)) send_route_update(node, nb, routing_[node].full_dump(nb));
}

void Simulation::send_route_update(NodeId from, NodeId to, RouteUpdateMessage msg) {
  if (msg.entries.empty()) return;
  const std::size_t bytes = msg.wire_size(scenario_.mode);
  const std::string_view kind = msg.kind == UpdateKind::FullDump ? "route_dump" : "route_inc";
  if (!transmit(from, {to}, std::make_shared<const Message>(std::move(msg)), bytes, kind)) return;
  const NodeRole role = topo_.hierarchy.role(from);
  ++report_.route_updates_sent[role];
  if (now_ >= scenario_.protocol.warmup_ticks) ++report_.route_updates_steady[role];
}

void Simulation::handle_route_update(NodeId at, NodeId from, const RouteUpdateMessage& msg) {
  std::vector<NodeId> changed;
  RoutingTable& table = routing_[at];
  for (const auto& entry : msg.entries) {
    const UpdateResult res = table.update_route(entry, from, now_);
    if (res.outcome == UpdateOutcome::Rejected) continue;
    const RoutingEntry* e = table.find(entry.dest);
    trace(at, "route",
          "dest=" + std::to_string(entry.dest) + " via=" + std::to_string(from) + " hops=" +
              std::to_string(e->hop_count) + " seq=" + std::to_string(e->seq) +
              (res.outcome == UpdateOutcome::Installed ? " installed" : " replaced"));
    if (res.significant) changed.push_back(entry.dest);
  }
  propagate_changes(at, changed);
}

void Simulation::propagate_changes(NodeId node, const std::vector<NodeId>& changed) {
  if (changed.empty()) return;
  for (NodeId nb : neighbors(node)) send_route_update(node, nb, routing_[node].incremental(changed, nb));
}

void Simulation::on_link_break(const LinkBreakTimer& timer) {
  const LinkBreak& lb = scenario_.link_breaks[timer.index];
  broken_links_.insert({std::min(lb.a, lb.b), std::max(lb.a, lb.b)});
  trace(kNoNode, "link_break", std::to_string(lb.a) + "-" + std::to_string(lb.b));
  for (auto [self, other] : {std::pair{lb.a, lb.b}, std::pair{lb.b, lb.a}}) {
    if (dead_[self]) continue;
    propagate_changes(self, routing_[self].break_link(other, now_));
  }
}

// Advertisements

void Simulation::on_advert(NodeId bs) {
  if (dead_[bs]) return;
  const auto idx = static_cast<std::size_t>(
      std::find(topo_.base_stations.begin(), topo_.base_stations.end(), bs) - topo_.base_stations.begin());
  auto adv = advert_sources_[idx].next(registries_[idx]);
  if (!adv) return;
  const ApplyResult own = apply_advertisement(*adv, auth_[bs], &routing_[bs]);
  trace(bs, "advert", "seq=" + std::to_string(adv->seq) + " entries=" + std::to_string(adv->entries.size()) +
                          " added=" + std::to_string(own.added.size()));
  const std::size_t bytes = adv->wire_size();
  transmit(bs, neighbors(bs), std::make_shared<const Message>(std::move(*adv)), bytes, "advert");
}

void Simulation::handle_advertisement(NodeId at, NodeId from, const Advertisement& adv) {
  const ApplyResult res = apply_advertisement(adv, auth_[at], &routing_[at]);
  if (res.outcome == ApplyOutcome::Stale) {
    trace(at, "adv_stale", "origin=" + std::to_string(adv.origin_bs) + " seq=" + std::to_string(adv.seq));
    return;
  }
  trace(at, "adv_apply",
        "origin=" + std::to_string(adv.origin_bs) + " seq=" + std::to_string(adv.seq) +
            " added=" + std::to_string(res.added.size()));

  // Public chain: the origin reaches every BS directly; each BS then floods
  // its own local chains, and cluster heads pass it on to their devices.
  const NodeRole role = topo_.hierarchy.role(at);
  if (role == NodeRole::Device) return;
  std::vector<NodeId> next;
  for (NodeId c : topo_.hierarchy.children(at)) {
    if (c != from && link_up(at, c)) next.push_back(c);
  }
  if (next.empty()) return;
  transmit(at, next, std::make_shared<const Message>(adv), adv.wire_size(), "advert");
}

// Authentication, alarms, attacks

void Simulation::deny_and_alarm(NodeId at, const MacAddress48& offender, const LayeredVerdict& lv) {
  if (!lv.verdict.alarm) return;
  if (auth_[at].blacklist(offender)) trace(at, "blacklist", "mac=" + offender.to_string());
  ++report_.alarms_raised;
  const auto deliveries = raise_alarm(at, offender, lv.scope, topo_.hierarchy);
  trace(at, "alarm", "offender=" + offender.to_string() + " receivers=" + std::to_string(deliveries.size()));
  if (deliveries.empty()) return;
  std::vector<NodeId> to;
  for (const auto& d : deliveries) {
    if (link_up(at, d.to)) to.push_back(d.to);
  }
  if (to.empty()) return;
  transmit(at, to, std::make_shared<const Message>(deliveries.front().message), AlarmMessage::kWireSize, "alarm");
}

void Simulation::handle_alarm(NodeId at, const AlarmMessage& msg) {
  if (auth_[at].blacklist(msg.offender_mac)) trace(at, "blacklist", "mac=" + msg.offender_mac.to_string());
  const auto relays = relay_alarm(at, msg, topo_.hierarchy);
  std::vector<NodeId> to;
  for (const auto& d : relays) {
    if (link_up(at, d.to)) to.push_back(d.to);
  }
  if (to.empty()) return;
  transmit(at, to, std::make_shared<const Message>(relays.front().message), AlarmMessage::kWireSize, "alarm");
}

void Simulation::on_attack_step(NodeId attacker, const AttackStepTimer& step) {
  const AttackSpec& spec = scenario_.attacks[step.spec];
  const NodeId target = attack_targets_[step.spec];
  const auto& macs = attack_macs_[step.spec];

  AuthRequest req;
  req.src = attacker;
  req.dst = target;
  req.timestamp = now_;
  switch (spec.kind) {
    case AttackKind::Sybil:
      req.claimed_mac = macs[step.index];
      req.presented_digest = mac_digest(req.claimed_mac);
      break;
    case AttackKind::Spoofing: {
      const NodeId victim = topo_.devices[uniform_below(attack_rng_, topo_.devices.size())];
      req.claimed_mac = topo_.hierarchy.node(victim).mac;
      const Digest128 genuine = mac_digest(req.claimed_mac);
      do {
        std::array<std::uint8_t, Digest128::kSize> raw{};
        for (auto& b : raw) b = static_cast<std::uint8_t>(attack_rng_());
        req.presented_digest = Digest128(raw);
      } while (req.presented_digest == genuine);
      break;
    }
    default:
      req.claimed_mac = macs.front();
      req.presented_digest = mac_digest(req.claimed_mac);
      break;
  }

  ++report_.attacks[{spec.kind, spec.target_layer}].injected;
  trace(attacker, "attack",
        "kind=" + std::string(to_string(spec.kind)) + " target=" + std::to_string(target) +
            " mac=" + req.claimed_mac.to_string());
  transmit(attacker, {target}, std::make_shared<const Message>(AttackRequest{step.spec, req}), kPacketBytes,
           "attack");

  const SimTime interval = std::max<SimTime>(1, static_cast<SimTime>(static_cast<double>(kTicksPerSecond) / spec.rate));
  const SimTime next = now_ + interval;
  if (step.index + 1 < spec.count && next < scenario_.duration_ticks) {
    schedule(next, attacker, AttackStepTimer{step.spec, step.index + 1});
  }
}

void Simulation::handle_attack(NodeId at, NodeId from, const AttackRequest& req) {
  const AttackSpec& spec = scenario_.attacks[req.spec];
  AttackCell& cell = report_.attacks[{spec.kind, spec.target_layer}];
  if (!hashmac()) {
    // Plain DSDV has no authentication layer.
    ++cell.allowed;
    trace(at, "auth", "mac=" + req.auth.claimed_mac.to_string() + " allow");
    return;
  }
  const NodeRole role = topo_.hierarchy.role(at);
  const ChainContext chain{role == NodeRole::BaseStation ? &registry(at) : nullptr, &topo_.hierarchy, at, from};
  const LayeredVerdict lv = authenticate_at(role, req.auth, auth_[at], now_, scenario_.protocol.freshness_window_ticks,
                                            role == NodeRole::BaseStation ? &chain : nullptr);
  if (lv.verdict.allowed()) {
    ++cell.allowed;
    trace(at, "auth", "mac=" + req.auth.claimed_mac.to_string() + " allow");
    return;
  }
  trace(at, "auth",
        "mac=" + req.auth.claimed_mac.to_string() + " deny=" + std::string(to_string(lv.verdict.deny_reason)));
  if (lv.verdict.alarm || lv.verdict.deny_reason == DenyReason::Blacklisted) ++cell.detected;
  deny_and_alarm(at, req.auth.claimed_mac, lv);
}

void Simulation::finish() {
  const SimTime end = scenario_.duration_ticks;
  for (NodeId id = 0; id < topo_.legit_count(); ++id) {
    if (!dead_[id]) energy_[id].settle(power_, end);
    report_.energy_per_node[id] = energy_[id].consumed_mj();
    report_.node_roles[id] = topo_.hierarchy.role(id);
  }
  for (NodeId id = 0; id < auth_.size(); ++id) {
    report_.duplicates_suppressed += auth_[id].duplicates_suppressed();
    report_.route_poisoning_rejected += routing_[id].poisoning_rejections();
  }
}

MetricsReport run(const Scenario& scenario) {
  Simulation sim(scenario);
  return sim.run();
}

}  // namespace hashmac
