#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hashmac/core/mac_address.hpp"
#include "hashmac/core/md5.hpp"
#include "hashmac/core/types.hpp"

namespace hashmac {

enum class RoutingMode : std::uint8_t { HashMacDsdv, BaselineDsdv };

std::string_view to_string(RoutingMode mode);
std::optional<RoutingMode> parse_routing_mode(std::string_view text);

inline constexpr std::uint16_t kInfiniteHops = 0xFFFF;

/// One row of a digest-augmented DSDV table. Even seq = reachable, odd = broken.
struct RoutingEntry {
  NodeId dest = kNoNode;
  MacAddress48 dest_mac;
  Digest128 dest_digest;
  NodeId next_hop = kNoNode;
  std::uint16_t hop_count = kInfiniteHops;
  std::uint32_t seq = 0;
  SimTime installed_at = 0;

  bool reachable() const { return seq % 2 == 0 && hop_count != kInfiniteHops; }
  friend bool operator==(const RoutingEntry&, const RoutingEntry&) = default;
};

struct AdvertisedRoute {
  NodeId dest = kNoNode;
  MacAddress48 dest_mac;
  Digest128 dest_digest;
  std::uint16_t hop_count = 0;
  std::uint32_t seq = 0;
};

enum class UpdateKind : std::uint8_t { FullDump, Incremental };

struct RouteUpdateMessage {
  NodeId origin = kNoNode;
  UpdateKind kind = UpdateKind::FullDump;
  std::vector<AdvertisedRoute> entries;

  /// 8-byte header plus 15 bytes per entry (dest, MAC, hops, seq); Hash-MAC
  /// entries also carry the 16-byte digest.
  std::size_t wire_size(RoutingMode mode) const;
};

enum class UpdateOutcome : std::uint8_t { Installed, Replaced, Rejected };

struct UpdateResult {
  UpdateOutcome outcome = UpdateOutcome::Rejected;
  /// Next hop, hop count or reachability changed; such changes are
  /// propagated immediately, sequence-only refreshes wait for the next dump.
  bool significant = false;
};

/// Per-node DSDV table. In Hash-MAC mode every advertised entry must carry
/// the MD5 of its destination MAC; entries that do not are dropped and counted
/// as route-poisoning attempts.
class RoutingTable {
 public:
  RoutingTable(NodeId self, const MacAddress48& self_mac, RoutingMode mode, std::size_t node_count_hint = 0);

  NodeId self() const { return self_; }
  RoutingMode mode() const { return mode_; }

  UpdateResult update_route(const AdvertisedRoute& advertised, NodeId via, SimTime now);

  /// Next hop towards `dest`, or nullopt when there is no usable route.
  std::optional<NodeId> next_hop(NodeId dest) const;

  const RoutingEntry* find(NodeId dest) const;
  std::vector<RoutingEntry> entries() const;
  std::size_t size() const { return size_; }

  /// Whole table for `neighbor`, minus routes learned from it (split horizon).
  RouteUpdateMessage full_dump(NodeId neighbor) const;
  RouteUpdateMessage incremental(std::span<const NodeId> changed, NodeId neighbor) const;

  /// Marks every route through `neighbor` broken (odd seq, infinite hops).
  /// Returns the affected destinations.
  std::vector<NodeId> break_link(NodeId neighbor, SimTime now);

  /// Bumps the node's own sequence number by two (stays even).
  void advance_own_seq();

  /// Overwrites the digest of the route to `dest` when the MAC matches.
  bool refresh_digest(NodeId dest, const MacAddress48& mac, const Digest128& digest);

  std::uint64_t poisoning_rejections() const { return poisoning_rejections_; }

 private:
  RoutingEntry* slot(NodeId dest);
  static AdvertisedRoute advertise(const RoutingEntry& e);

  NodeId self_;
  RoutingMode mode_;
  std::vector<RoutingEntry> rows_;  // indexed by dest; dest == kNoNode marks an empty slot
  std::size_t size_ = 0;
  std::uint64_t poisoning_rejections_ = 0;
};

/// CSV route dump, one `node,dest,next_hop,hops,seq` row per entry.
std::string route_dump_csv(const RoutingTable& table);

}  // namespace hashmac
