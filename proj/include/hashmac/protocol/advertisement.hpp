#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "hashmac/protocol/registry.hpp"

namespace hashmac {

class RoutingTable;

struct AdvertisedMac {
  NodeId node = kNoNode;
  MacAddress48 mac;
  Digest128 digest;
  friend bool operator==(const AdvertisedMac&, const AdvertisedMac&) = default;
};

/// Public-chain broadcast of a base station's registered MACs.
struct Advertisement {
  NodeId origin_bs = kNoNode;
  std::uint64_t seq = 0;
  std::vector<AdvertisedMac> entries;

  /// 8-byte header + 22 bytes (MAC + digest) per entry.
  std::size_t wire_size() const { return 8 + 22 * entries.size(); }
};

/// Snapshot of every registered (mac, digest) pair, or nullopt for an empty
/// registry. Throws std::logic_error if a stored digest does not match its MAC.
std::optional<Advertisement> build_advertisement(const MacRegistry& registry, NodeId origin, std::uint64_t seq);

/// Hands out strictly increasing advertisement sequence numbers for one BS.
class AdvertisementSource {
 public:
  explicit AdvertisementSource(NodeId origin) : origin_(origin) {}
  std::optional<Advertisement> next(const MacRegistry& registry);
  std::uint64_t last_seq() const { return seq_; }

 private:
  NodeId origin_;
  std::uint64_t seq_ = 0;
};

/// MAC -> digest table a node learned from advertisements. Sorted by MAC.
class MacTable {
 public:
  const Digest128* find(const MacAddress48& mac) const;
  bool contains(const MacAddress48& mac) const { return find(mac) != nullptr; }
  std::size_t size() const { return rows_.size(); }
  std::span<const AdvertisedMac> entries() const { return rows_; }

  /// Union with `incoming`; returns the rows that were not present before.
  std::vector<AdvertisedMac> merge(std::span<const AdvertisedMac> incoming);

 private:
  std::vector<AdvertisedMac> rows_;
};

}  // namespace hashmac
