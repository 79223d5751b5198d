#pragma once

#include <map>
#include <optional>
#include <set>
#include <string_view>

#include "hashmac/core/hierarchy.hpp"
#include "hashmac/protocol/advertisement.hpp"

namespace hashmac {

struct AuthRequest {
  MacAddress48 claimed_mac;
  Digest128 presented_digest;
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  SimTime timestamp = 0;
};

enum class AuthOutcome : std::uint8_t { Allow, Deny };

enum class DenyReason : std::uint8_t { None, UnknownMac, DigestMismatch, StaleTimestamp, WrongChain, Blacklisted };

std::string_view to_string(DenyReason reason);

/// Allow implies no alarm and no deny reason.
struct AuthVerdict {
  AuthOutcome outcome = AuthOutcome::Allow;
  bool alarm = false;
  DenyReason deny_reason = DenyReason::None;

  static AuthVerdict allow() { return {}; }
  static AuthVerdict deny(DenyReason reason, bool alarm) { return {AuthOutcome::Deny, alarm, reason}; }
  bool allowed() const { return outcome == AuthOutcome::Allow; }
  friend bool operator==(const AuthVerdict&, const AuthVerdict&) = default;
};

/// One-way check of a request against a MAC table. The first failing check in
/// the order unknown MAC, digest mismatch, stale timestamp decides the reason;
/// the first two raise an alarm, staleness does not.
AuthVerdict authenticate(const AuthRequest& req, const MacTable& table, SimTime now, SimTime freshness_window);

/// Who hears an alarm raised at a given layer.
enum class AlarmScope : std::uint8_t {
  None,
  ClusterPeers,  // device origin: the other devices of its cluster
  Cluster,       // cluster-head origin: its devices
  BsSubtree,     // base-station origin: its cluster heads, relayed to their devices
};

AlarmScope alarm_scope_for(NodeRole role);

/// Receive-side state of one node: learned MAC table, blacklist and the last
/// advertisement seq seen per origin.
class NodeAuthState {
 public:
  MacTable& table() { return table_; }
  const MacTable& table() const { return table_; }

  /// Returns true when the MAC was not blacklisted before.
  bool blacklist(const MacAddress48& mac) { return blacklist_.insert(mac).second; }
  bool is_blacklisted(const MacAddress48& mac) const { return blacklist_.contains(mac); }
  const std::set<MacAddress48>& blacklisted() const { return blacklist_; }

  /// Records `seq` for `origin` if it is newer than anything seen. Replays and
  /// out-of-order advertisements return false and count as suppressed.
  bool accept_seq(NodeId origin, std::uint64_t seq);
  std::optional<std::uint64_t> last_seq(NodeId origin) const;

  /// Table consulted for a verification; counted.
  const MacTable& lookup_table() {
    ++table_lookups_;
    return table_;
  }
  std::uint64_t table_lookups() const { return table_lookups_; }
  std::uint64_t duplicates_suppressed() const { return duplicates_suppressed_; }

 private:
  MacTable table_;
  std::set<MacAddress48> blacklist_;
  std::map<NodeId, std::uint64_t> last_seq_;
  std::uint64_t table_lookups_ = 0;
  std::uint64_t duplicates_suppressed_ = 0;
};

/// Extra check a base station runs on requests coming up one of its own
/// cluster heads: the claimed MAC must be registered through that cluster.
struct ChainContext {
  const MacRegistry* registry = nullptr;
  const Hierarchy* topology = nullptr;
  NodeId self = kNoNode;
  NodeId arrived_from = kNoNode;
};

struct LayeredVerdict {
  AuthVerdict verdict;
  AlarmScope scope = AlarmScope::None;  // None unless verdict.alarm
};

/// The same check at any layer. Blacklisted MACs are denied before the table
/// is consulted and do not raise a second alarm.
LayeredVerdict authenticate_at(NodeRole role, const AuthRequest& req, NodeAuthState& state, SimTime now,
                               SimTime freshness_window, const ChainContext* chain = nullptr);

enum class ApplyOutcome : std::uint8_t { Applied, Stale };

struct ApplyResult {
  ApplyOutcome outcome = ApplyOutcome::Stale;
  std::vector<AdvertisedMac> added;
};

/// Merges a fresh advertisement into the node's table and refreshes digests
/// of matching routes. Stale or replayed advertisements are ignored and
/// counted as suppressed duplicates.
ApplyResult apply_advertisement(const Advertisement& adv, NodeAuthState& state, RoutingTable* routing);

}  // namespace hashmac
