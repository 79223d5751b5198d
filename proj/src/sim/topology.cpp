#include "hashmac/sim/topology.hpp"

#include <set>
#include <sstream>

#include "hashmac/core/errors.hpp"
#include "hashmac/sim/rng.hpp"

namespace hashmac {
namespace {

// Locally administered, unicast, never all-zero.
MacAddress48 random_mac(std::mt19937_64& rng) {
  std::uint64_t v = rng() & 0xFFFF'FFFF'FFFFull;
  v = (v & ~(0x01ull << 40)) | (0x02ull << 40);
  return MacAddress48::from_u64(v);
}

}  // namespace

Topology build_topology(const Scenario& scenario) {
  validate(scenario);
  const auto& c = scenario.counts;
  const std::size_t legit = scenario.legit_node_count();

  std::vector<MacAddress48> macs = scenario.macs;
  std::set<MacAddress48> used(macs.begin(), macs.end());
  if (macs.empty()) {
    auto rng = make_rng(scenario.seed, RngStream::Macs);
    while (macs.size() < legit) {
      const MacAddress48 mac = random_mac(rng);
      if (used.insert(mac).second) macs.push_back(mac);
    }
  }

  std::set<Digest128> digests;
  for (const auto& mac : macs) {
    if (!digests.insert(mac_digest(mac)).second) {
      throw ConfigError("macs: digest collision for " + mac.to_string());
    }
  }

  Topology topo;
  std::size_t next_mac = 0;
  for (std::uint32_t i = 0; i < c.base_stations; ++i) {
    topo.base_stations.push_back(topo.hierarchy.add_node(NodeRole::BaseStation, macs[next_mac++]));
  }
  for (std::uint32_t j = 0; j < c.cluster_heads; ++j) {
    const NodeId bs = topo.base_stations[j % c.base_stations];
    topo.cluster_heads.push_back(topo.hierarchy.add_node(NodeRole::ClusterHead, macs[next_mac++], bs));
  }
  for (std::uint32_t k = 0; k < c.devices; ++k) {
    const NodeId ch = topo.cluster_heads[k % c.cluster_heads];
    topo.devices.push_back(topo.hierarchy.add_node(NodeRole::Device, macs[next_mac++], ch));
  }

  auto rng = make_rng(scenario.seed, RngStream::AttackerMacs);
  for (std::size_t a = 0; a < scenario.attacks.size(); ++a) {
    MacAddress48 mac;
    do {
      mac = random_mac(rng);
    } while (!used.insert(mac).second);
    topo.attackers.push_back(topo.hierarchy.add_node(NodeRole::Attacker, mac));
  }
  return topo;
}

std::string topology_dump(const Topology& topology) {
  std::ostringstream out;
  out << "id,role,parent,mac,digest\n";
  for (const auto& n : topology.hierarchy.nodes()) {
    out << n.id << ',' << to_string(n.role) << ',';
    if (n.parent != kNoNode) out << n.parent;
    out << ',' << n.mac.to_string() << ',' << n.digest.to_hex() << '\n';
  }
  return out.str();
}

}  // namespace hashmac
