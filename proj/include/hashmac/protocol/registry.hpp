#pragma once

#include <compare>
#include <map>

#include "hashmac/core/mac_address.hpp"
#include "hashmac/core/md5.hpp"
#include "hashmac/core/types.hpp"

namespace hashmac {

/// The local chain (CH) and public chain (BS) a MAC was registered through.
struct ChainRef {
  NodeId bs = kNoNode;
  NodeId ch = kNoNode;
  friend auto operator<=>(const ChainRef&, const ChainRef&) = default;
};

struct RegistryEntry {
  NodeId device = kNoNode;
  Digest128 digest;
  ChainRef chain;
  SimTime registered_at = 0;
  friend bool operator==(const RegistryEntry&, const RegistryEntry&) = default;
};

/// MAC -> digest table held by a base station (public chain) or a cluster
/// head (local chain). Stored digests always equal mac_digest(key).
class MacRegistry {
 public:
  enum class InsertResult { Added, AlreadyPresent, Conflict };

  InsertResult insert(NodeId device, const MacAddress48& mac, ChainRef chain, SimTime at);

  const RegistryEntry* find(const MacAddress48& mac) const;
  bool contains(const MacAddress48& mac) const { return find(mac) != nullptr; }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::map<MacAddress48, RegistryEntry>& entries() const { return entries_; }

 private:
  std::map<MacAddress48, RegistryEntry> entries_;
};

}  // namespace hashmac
