#pragma once

#include <vector>

#include "hashmac/core/hierarchy.hpp"
#include "hashmac/protocol/authentication.hpp"

namespace hashmac {

struct AlarmMessage {
  NodeId origin = kNoNode;
  MacAddress48 offender_mac;
  bool relay_to_cluster = false;  // set on BS -> CH hops

  static constexpr std::size_t kWireSize = 128;
};

struct AlarmDelivery {
  NodeId to = kNoNode;
  AlarmMessage message;
};

/// First-hop alarm deliveries for a denial at `origin`.
std::vector<AlarmDelivery> raise_alarm(NodeId origin, const MacAddress48& offender, AlarmScope scope,
                                       const Hierarchy& topology);

/// Deliveries a cluster head makes when relaying a base-station alarm.
std::vector<AlarmDelivery> relay_alarm(NodeId ch, const AlarmMessage& received, const Hierarchy& topology);

}  // namespace hashmac
