#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string_view>

#include "hashmac/core/types.hpp"

namespace hashmac {

enum class AttackKind : std::uint8_t { Sybil, Spoofing, DoS, DeviceImpersonation, BsImpersonation, Eavesdrop };
enum class TargetLayer : std::uint8_t { Device, ClusterHead, BaseStation };

inline constexpr AttackKind kAllAttackKinds[] = {AttackKind::Sybil,
                                                 AttackKind::Spoofing,
                                                 AttackKind::DoS,
                                                 AttackKind::DeviceImpersonation,
                                                 AttackKind::BsImpersonation,
                                                 AttackKind::Eavesdrop};
inline constexpr TargetLayer kAllTargetLayers[] = {TargetLayer::Device, TargetLayer::ClusterHead,
                                                   TargetLayer::BaseStation};

std::string_view to_string(AttackKind kind);
std::string_view to_string(TargetLayer layer);
std::optional<AttackKind> parse_attack_kind(std::string_view text);
std::optional<TargetLayer> parse_target_layer(std::string_view text);

NodeRole role_of(TargetLayer layer);
TargetLayer default_layer(AttackKind kind);

/// `count` requests spaced 1/rate seconds apart from `start_tick`. Eavesdrop
/// is passive: it listens to the target from `start_tick` and ignores count.
struct AttackSpec {
  AttackKind kind = AttackKind::DoS;
  std::uint32_t count = 1;
  TargetLayer target_layer = TargetLayer::Device;
  SimTime start_tick = 0;
  double rate = 10.0;  // requests per simulated second
};

struct AttackCellKey {
  AttackKind kind;
  TargetLayer layer;
  friend auto operator<=>(const AttackCellKey&, const AttackCellKey&) = default;
};

}  // namespace hashmac
