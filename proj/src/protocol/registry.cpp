#include "hashmac/protocol/registry.hpp"

namespace hashmac {

MacRegistry::InsertResult MacRegistry::insert(NodeId device, const MacAddress48& mac, ChainRef chain, SimTime at) {
  auto it = entries_.find(mac);
  if (it != entries_.end()) {
    return it->second.chain == chain && it->second.device == device ? InsertResult::AlreadyPresent
                                                                     : InsertResult::Conflict;
  }
  entries_.emplace(mac, RegistryEntry{device, mac_digest(mac), chain, at});
  return InsertResult::Added;
}

const RegistryEntry* MacRegistry::find(const MacAddress48& mac) const {
  auto it = entries_.find(mac);
  return it == entries_.end() ? nullptr : &it->second;
}

}  // namespace hashmac
