#include "hashmac/core/types.hpp"

namespace hashmac {

std::string_view to_string(NodeRole role) {
  switch (role) {
    case NodeRole::Device:
      return "device";
    case NodeRole::ClusterHead:
      return "cluster_head";
    case NodeRole::BaseStation:
      return "base_station";
    case NodeRole::Attacker:
      return "attacker";
  }
  return "unknown";
}

}  // namespace hashmac
