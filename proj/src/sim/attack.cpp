#include "hashmac/sim/attack.hpp"

namespace hashmac {

std::string_view to_string(AttackKind kind) {
  switch (kind) {
    case AttackKind::Sybil:
      return "sybil";
    case AttackKind::Spoofing:
      return "spoofing";
    case AttackKind::DoS:
      return "dos";
    case AttackKind::DeviceImpersonation:
      return "device_impersonation";
    case AttackKind::BsImpersonation:
      return "bs_impersonation";
    case AttackKind::Eavesdrop:
      return "eavesdrop";
  }
  return "unknown";
}

std::string_view to_string(TargetLayer layer) {
  switch (layer) {
    case TargetLayer::Device:
      return "device";
    case TargetLayer::ClusterHead:
      return "ch";
    case TargetLayer::BaseStation:
      return "bs";
  }
  return "unknown";
}

std::optional<AttackKind> parse_attack_kind(std::string_view text) {
  for (AttackKind kind : kAllAttackKinds) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

std::optional<TargetLayer> parse_target_layer(std::string_view text) {
  for (TargetLayer layer : kAllTargetLayers) {
    if (to_string(layer) == text) return layer;
  }
  return std::nullopt;
}

NodeRole role_of(TargetLayer layer) {
  switch (layer) {
    case TargetLayer::Device:
      return NodeRole::Device;
    case TargetLayer::ClusterHead:
      return NodeRole::ClusterHead;
    case TargetLayer::BaseStation:
      return NodeRole::BaseStation;
  }
  return NodeRole::Device;
}

TargetLayer default_layer(AttackKind kind) {
  return kind == AttackKind::BsImpersonation ? TargetLayer::BaseStation : TargetLayer::Device;
}

}  // namespace hashmac
