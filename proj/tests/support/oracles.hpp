#pragma once

#include <algorithm>
#include <deque>
#include <random>
#include <string>
#include <vector>

#include "hashmac/core/hierarchy.hpp"
#include "hashmac/protocol/registration.hpp"
#include "hashmac/sim/rng.hpp"
#include "hashmac/sim/topology.hpp"
#include "hashmac/routing/routing_table.hpp"
#include "hashmac/sim/scenario.hpp"

namespace hashmac::testing {

inline constexpr std::uint32_t kUnreached = 0xFFFFFFFF;

/// Hop distances from `src` over an adjacency list.
inline std::vector<std::uint32_t> bfs(const std::vector<std::vector<NodeId>>& adj, NodeId src) {
  std::vector<std::uint32_t> dist(adj.size(), kUnreached);
  std::deque<NodeId> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop_front();
    for (NodeId v : adj[u]) {
      if (dist[v] == kUnreached) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
    }
  }
  return dist;
}

/// Physical link graph of the legitimate nodes.
inline std::vector<std::vector<NodeId>> link_graph(const Hierarchy& h, std::size_t legit) {
  std::vector<std::vector<NodeId>> adj(legit);
  for (NodeId id = 0; id < legit; ++id) adj[id] = h.links(id);
  return adj;
}

/// Follows next_hop from `src` to `dest`; every step must strictly lower the
/// remaining hop count. Returns the path, or an empty vector on a loop/miss.
template <typename TableAt>
std::vector<NodeId> walk(TableAt&& table_at, NodeId src, NodeId dest, std::size_t limit) {
  std::vector<NodeId> path{src};
  NodeId at = src;
  while (at != dest) {
    const RoutingEntry* e = table_at(at).find(dest);
    if (e == nullptr || !e->reachable() || path.size() > limit) return {};
    const NodeId nh = e->next_hop;
    const RoutingEntry* next = table_at(nh).find(dest);
    if (nh != dest && (next == nullptr || next->hop_count >= e->hop_count)) return {};
    path.push_back(nh);
    at = nh;
  }
  return path;
}

inline Scenario small_scenario(std::uint32_t devices, std::uint32_t chs, std::uint32_t bss, SimTime duration) {
  Scenario s;
  s.name = "test";
  s.counts = {devices, chs, bss};
  s.channel = {0.0, 1000, 500};
  s.traffic.packet_interval_ticks = 0;
  s.duration_ticks = duration;
  return s;
}

struct ChainTally {
  std::uint64_t attempts = 0;
  std::uint64_t direct_or_wrong_chain = 0;
  std::uint64_t own_chain = 0;
  std::uint64_t violations = 0;
};

/// Randomized registration attempts against the topology of `scenario`. The
/// expected verdict comes from how each request was constructed, not from the
/// hierarchy queries the implementation uses.
inline ChainTally registration_chain_trial(const Scenario& scenario, std::uint64_t seed, std::size_t attempts) {
  const Topology topo = build_topology(scenario);
  const Hierarchy& h = topo.hierarchy;
  std::vector<MacRegistry> registries(topo.base_stations.size());
  std::mt19937_64 rng(seed);
  auto pick = [&](const std::vector<NodeId>& v) { return v[uniform_below(rng, v.size())]; };
  const std::size_t C = topo.cluster_heads.size();
  const std::size_t B = topo.base_stations.size();

  ChainTally tally;
  for (std::size_t i = 0; i < attempts; ++i) {
    const std::size_t dev_index = uniform_below(rng, topo.devices.size());
    const NodeId dev = topo.devices[dev_index];
    const std::size_t own_ch_index = dev_index % C;
    const std::size_t own_bs_index = own_ch_index % B;
    RegistrationRequest req{dev, h.node(dev).mac, std::nullopt, i};
    std::size_t bs_index = uniform_below(rng, B);
    bool expect_registered = false;
    switch (uniform_below(rng, 4)) {
      case 0:  // straight to a BS
        break;
      case 1:  // through the device's own CH to the BS that owns it
        req.via_ch = topo.cluster_heads[own_ch_index];
        bs_index = own_bs_index;
        expect_registered = true;
        break;
      case 2: {  // through some CH to a BS that does not own it
        if (B == 1) break;
        const std::size_t ch_index = uniform_below(rng, C);
        req.via_ch = topo.cluster_heads[ch_index];
        do {
          bs_index = uniform_below(rng, B);
        } while (bs_index == ch_index % B);
        break;
      }
      default: {  // a CH owned by the BS, but not the device's cluster
        std::vector<NodeId> foreign;
        for (std::size_t c = 0; c < C; ++c) {
          if (c % B == bs_index && c != own_ch_index) foreign.push_back(topo.cluster_heads[c]);
        }
        if (!foreign.empty()) req.via_ch = pick(foreign);
        break;
      }
    }
    const NodeId bs = topo.base_stations[bs_index];
    const RegistrationResult res = handle_registration(req, h, bs, registries[bs_index]);
    const bool registered = res.status == RegistrationStatus::Registered;
    ++tally.attempts;
    if (expect_registered) {
      ++tally.own_chain;
    } else {
      ++tally.direct_or_wrong_chain;
    }
    if (registered != expect_registered) ++tally.violations;
  }
  for (std::size_t b = 0; b < B; ++b) {
    for (const auto& [mac, entry] : registries[b].entries()) {
      const std::size_t ch_pos = static_cast<std::size_t>(
          std::find(topo.cluster_heads.begin(), topo.cluster_heads.end(), entry.chain.ch) - topo.cluster_heads.begin());
      if (ch_pos >= C || ch_pos % B != b || entry.chain.bs != topo.base_stations[b]) ++tally.violations;
      if (entry.digest != mac_digest(mac)) ++tally.violations;
    }
  }
  return tally;
}

}  // namespace hashmac::testing
