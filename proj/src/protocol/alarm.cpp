#include "hashmac/protocol/alarm.hpp"

namespace hashmac {

std::vector<AlarmDelivery> raise_alarm(NodeId origin, const MacAddress48& offender, AlarmScope scope,
                                       const Hierarchy& topology) {
  std::vector<AlarmDelivery> out;
  const AlarmMessage base{origin, offender, false};
  switch (scope) {
    case AlarmScope::None:
      break;
    case AlarmScope::ClusterPeers: {
      const NodeId ch = topology.parent(origin);
      for (NodeId peer : topology.children(ch)) {
        if (peer != origin) out.push_back({peer, base});
      }
      break;
    }
    case AlarmScope::Cluster:
      for (NodeId device : topology.children(origin)) out.push_back({device, base});
      break;
    case AlarmScope::BsSubtree:
      for (NodeId ch : topology.children(origin)) out.push_back({ch, AlarmMessage{origin, offender, true}});
      break;
  }
  return out;
}

std::vector<AlarmDelivery> relay_alarm(NodeId ch, const AlarmMessage& received, const Hierarchy& topology) {
  std::vector<AlarmDelivery> out;
  if (!received.relay_to_cluster) return out;
  for (NodeId device : topology.children(ch)) {
    out.push_back({device, AlarmMessage{received.origin, received.offender_mac, false}});
  }
  return out;
}

}  // namespace hashmac
