#include "hashmac/protocol/authentication.hpp"

#include "hashmac/routing/routing_table.hpp"

namespace hashmac {

std::string_view to_string(DenyReason reason) {
  switch (reason) {
    case DenyReason::None:
      return "none";
    case DenyReason::UnknownMac:
      return "unknown_mac";
    case DenyReason::DigestMismatch:
      return "digest_mismatch";
    case DenyReason::StaleTimestamp:
      return "stale_timestamp";
    case DenyReason::WrongChain:
      return "wrong_chain";
    case DenyReason::Blacklisted:
      return "blacklisted";
  }
  return "unknown";
}

AuthVerdict authenticate(const AuthRequest& req, const MacTable& table, SimTime now, SimTime freshness_window) {
  const Digest128* known = table.find(req.claimed_mac);
  if (known == nullptr) return AuthVerdict::deny(DenyReason::UnknownMac, true);
  if (*known != req.presented_digest) return AuthVerdict::deny(DenyReason::DigestMismatch, true);
  // A request stamped in the future is treated as fresh.
  if (now > req.timestamp && now - req.timestamp > freshness_window) {
    return AuthVerdict::deny(DenyReason::StaleTimestamp, false);
  }
  return AuthVerdict::allow();
}

AlarmScope alarm_scope_for(NodeRole role) {
  switch (role) {
    case NodeRole::Device:
      return AlarmScope::ClusterPeers;
    case NodeRole::ClusterHead:
      return AlarmScope::Cluster;
    case NodeRole::BaseStation:
      return AlarmScope::BsSubtree;
    case NodeRole::Attacker:
      break;
  }
  return AlarmScope::None;
}

bool NodeAuthState::accept_seq(NodeId origin, std::uint64_t seq) {
  auto [it, inserted] = last_seq_.try_emplace(origin, seq);
  if (inserted) return true;
  if (seq <= it->second) {
    ++duplicates_suppressed_;
    return false;
  }
  it->second = seq;
  return true;
}

std::optional<std::uint64_t> NodeAuthState::last_seq(NodeId origin) const {
  auto it = last_seq_.find(origin);
  if (it == last_seq_.end()) return std::nullopt;
  return it->second;
}

LayeredVerdict authenticate_at(NodeRole role, const AuthRequest& req, NodeAuthState& state, SimTime now,
                               SimTime freshness_window, const ChainContext* chain) {
  if (state.is_blacklisted(req.claimed_mac)) {
    return {AuthVerdict::deny(DenyReason::Blacklisted, false), AlarmScope::None};
  }

  AuthVerdict verdict = authenticate(req, state.lookup_table(), now, freshness_window);

  const bool digest_checked =
      verdict.allowed() || verdict.deny_reason == DenyReason::StaleTimestamp;
  if (digest_checked && role == NodeRole::BaseStation && chain != nullptr && chain->registry != nullptr &&
      chain->topology != nullptr && chain->topology->owns(chain->self, chain->arrived_from)) {
    const RegistryEntry* entry = chain->registry->find(req.claimed_mac);
    if (entry == nullptr || entry->chain.ch != chain->arrived_from) {
      verdict = AuthVerdict::deny(DenyReason::WrongChain, true);
    }
  }

  LayeredVerdict out{verdict, AlarmScope::None};
  if (verdict.alarm) out.scope = alarm_scope_for(role);
  return out;
}

ApplyResult apply_advertisement(const Advertisement& adv, NodeAuthState& state, RoutingTable* routing) {
  if (!state.accept_seq(adv.origin_bs, adv.seq)) return {ApplyOutcome::Stale, {}};
  ApplyResult result{ApplyOutcome::Applied, state.table().merge(adv.entries)};
  if (routing != nullptr) {
    for (const auto& row : result.added) routing->refresh_digest(row.node, row.mac, row.digest);
  }
  return result;
}

}  // namespace hashmac
