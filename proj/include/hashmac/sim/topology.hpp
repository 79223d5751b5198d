#pragma once

#include <string>
#include <vector>

#include "hashmac/core/hierarchy.hpp"
#include "hashmac/sim/scenario.hpp"

namespace hashmac {

/// Node ids: base stations first, then cluster heads, then devices, then one
/// attacker node per AttackSpec.
struct Topology {
  Hierarchy hierarchy;
  std::vector<NodeId> base_stations;
  std::vector<NodeId> cluster_heads;
  std::vector<NodeId> devices;
  std::vector<NodeId> attackers;  // attackers[i] belongs to scenario.attacks[i]

  std::size_t legit_count() const { return base_stations.size() + cluster_heads.size() + devices.size(); }
};

/// Device k joins CH k mod C, CH j joins BS j mod B. MACs come from the
/// scenario or a seeded generator; duplicates and digest collisions are
/// rejected with ConfigError.
Topology build_topology(const Scenario& scenario);

/// `id,role,parent,mac,digest` per node; stable for a fixed seed.
std::string topology_dump(const Topology& topology);

}  // namespace hashmac
