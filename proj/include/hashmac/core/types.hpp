#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace hashmac {

/// Simulated time in ticks. One tick is one microsecond.
using SimTime = std::uint64_t;

inline constexpr SimTime kTicksPerSecond = 1'000'000;

using NodeId = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

enum class NodeRole : std::uint8_t { Device, ClusterHead, BaseStation, Attacker };

std::string_view to_string(NodeRole role);

}  // namespace hashmac
