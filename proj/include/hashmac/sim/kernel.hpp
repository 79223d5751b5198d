#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <queue>
#include <random>
#include <set>
#include <variant>
#include <vector>

#include "hashmac/metrics/report.hpp"
#include "hashmac/protocol/alarm.hpp"
#include "hashmac/protocol/authentication.hpp"
#include "hashmac/protocol/registry.hpp"
#include "hashmac/routing/routing_table.hpp"
#include "hashmac/sim/energy.hpp"
#include "hashmac/sim/scenario.hpp"
#include "hashmac/sim/topology.hpp"

namespace hashmac {

/// End-to-end sensor reading from one device to another.
struct DataPacket {
  std::uint64_t id = 0;
  NodeId origin = kNoNode;
  NodeId dest = kNoNode;
  SimTime created = 0;
  MacAddress48 origin_mac;
  Digest128 origin_digest;
};

/// Request sent by an attacker node straight to its target.
struct AttackRequest {
  std::size_t spec = 0;
  AuthRequest auth;
};

using Message = std::variant<DataPacket, RouteUpdateMessage, Advertisement, AlarmMessage, AttackRequest>;

struct Delivery {
  NodeId from = kNoNode;
  std::shared_ptr<const Message> message;
};

struct TrafficTimer {};
struct PeriodicDumpTimer {};
struct BootstrapTimer {};
struct AdvertTimer {};
struct AttackStepTimer {
  std::size_t spec = 0;
  std::uint32_t index = 0;
};
struct LinkBreakTimer {
  std::size_t index = 0;
};

using EventPayload =
    std::variant<Delivery, TrafficTimer, PeriodicDumpTimer, BootstrapTimer, AdvertTimer, AttackStepTimer, LinkBreakTimer>;

/// Events with equal `at` dispatch in `tiebreak` (scheduling) order.
struct SimEvent {
  SimTime at = 0;
  std::uint64_t tiebreak = 0;
  NodeId target = kNoNode;
  EventPayload payload;
};

struct SimEventLater {
  bool operator()(const SimEvent& a, const SimEvent& b) const {
    return a.at != b.at ? a.at > b.at : a.tiebreak > b.tiebreak;
  }
};

/// One deterministic run of a scenario. Single-threaded; independent
/// instances share nothing and may run concurrently.
class Simulation {
 public:
  explicit Simulation(Scenario scenario);

  /// Event log, one `tick,node,event,detail` line per event.
  void set_trace(std::ostream* trace) { trace_ = trace; }

  /// Runs to completion; a second call returns the same report.
  const MetricsReport& run();

  const Scenario& scenario() const { return scenario_; }
  const Topology& topology() const { return topo_; }
  const RoutingTable& routing(NodeId id) const { return routing_.at(id); }
  const NodeAuthState& auth_state(NodeId id) const { return auth_.at(id); }
  const MacRegistry& registry(NodeId bs) const;
  const EnergyAccount& energy(NodeId id) const { return energy_.at(id); }
  bool alive(NodeId id) const { return !dead_.at(id); }
  SimTime now() const { return now_; }

  /// Per-node processing tally, for the energy-conservation check.
  const std::vector<std::uint64_t>& received_messages() const { return received_; }

 private:
  void schedule(SimTime at, NodeId target, EventPayload payload);
  void dispatch(const SimEvent& ev);
  void trace(NodeId node, std::string_view event, const std::string& detail);

  void register_devices();
  void start_timers();

  void on_traffic(NodeId device);
  void on_periodic_dump(NodeId node);
  void on_bootstrap(NodeId node);
  void on_advert(NodeId bs);
  void on_attack_step(NodeId attacker, const AttackStepTimer& step);
  void on_link_break(const LinkBreakTimer& timer);
  void on_delivery(NodeId to, const Delivery& d);

  void handle_data(NodeId at, NodeId from, const DataPacket& pkt);
  void handle_route_update(NodeId at, NodeId from, const RouteUpdateMessage& msg);
  void handle_advertisement(NodeId at, NodeId from, const Advertisement& adv);
  void handle_alarm(NodeId at, const AlarmMessage& msg);
  void handle_attack(NodeId at, NodeId from, const AttackRequest& req);

  void forward_data(NodeId at, const DataPacket& pkt);
  void drop_data(NodeId at, const DataPacket& pkt, DropCause cause);
  void send_dumps(NodeId node);
  void send_route_update(NodeId from, NodeId to, RouteUpdateMessage msg);
  void propagate_changes(NodeId node, const std::vector<NodeId>& changed);
  void deny_and_alarm(NodeId at, const MacAddress48& offender, const LayeredVerdict& lv);

  /// Unicast or broadcast: one transmission, independent loss and latency per
  /// receiver. Returns false if the sender is dead.
  bool transmit(NodeId from, const std::vector<NodeId>& to, std::shared_ptr<const Message> msg, std::size_t bytes,
                std::string_view kind);
  bool charge(NodeId node, Activity activity, SimTime ticks);
  void capture(NodeId node);
  std::vector<NodeId> neighbors(NodeId node) const;
  bool link_up(NodeId a, NodeId b) const;
  bool hashmac() const { return scenario_.mode == RoutingMode::HashMacDsdv; }
  bool originating() const { return now_ < scenario_.duration_ticks; }
  void finish();

  Scenario scenario_;
  Topology topo_;
  PowerProfile power_;
  std::vector<RoutingTable> routing_;
  std::vector<NodeAuthState> auth_;
  std::vector<MacRegistry> registries_;  // indexed by BS position
  std::vector<AdvertisementSource> advert_sources_;
  std::vector<EnergyAccount> energy_;
  std::vector<bool> dead_;
  std::vector<std::uint64_t> received_;
  std::vector<std::mt19937_64> traffic_rng_;
  std::mt19937_64 channel_rng_;
  std::mt19937_64 attack_rng_;
  std::vector<NodeId> attack_targets_;
  std::vector<std::vector<MacAddress48>> attack_macs_;
  std::set<std::pair<NodeId, NodeId>> broken_links_;

  std::priority_queue<SimEvent, std::vector<SimEvent>, SimEventLater> queue_;
  std::uint64_t next_tiebreak_ = 0;
  std::uint64_t next_packet_id_ = 0;
  SimTime now_ = 0;
  std::ostream* trace_ = nullptr;
  bool finished_ = false;
  MetricsReport report_;
};

/// Builds, runs and returns the report of one scenario.
MetricsReport run(const Scenario& scenario);

}  // namespace hashmac
