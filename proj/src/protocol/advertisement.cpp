#include "hashmac/protocol/advertisement.hpp"

#include <algorithm>
#include <stdexcept>

namespace hashmac {

std::optional<Advertisement> build_advertisement(const MacRegistry& registry, NodeId origin, std::uint64_t seq) {
  if (registry.empty()) return std::nullopt;
  Advertisement adv{origin, seq, {}};
  adv.entries.reserve(registry.size());
  for (const auto& [mac, entry] : registry.entries()) {
    if (mac_digest(mac) != entry.digest) {
      throw std::logic_error("registry digest out of sync for " + mac.to_string());
    }
    adv.entries.push_back(AdvertisedMac{entry.device, mac, entry.digest});
  }
  return adv;
}

std::optional<Advertisement> AdvertisementSource::next(const MacRegistry& registry) {
  auto adv = build_advertisement(registry, origin_, seq_ + 1);
  if (adv) ++seq_;
  return adv;
}

const Digest128* MacTable::find(const MacAddress48& mac) const {
  auto it = std::lower_bound(rows_.begin(), rows_.end(), mac,
                             [](const AdvertisedMac& row, const MacAddress48& key) { return row.mac < key; });
  if (it == rows_.end() || it->mac != mac) return nullptr;
  return &it->digest;
}

std::vector<AdvertisedMac> MacTable::merge(std::span<const AdvertisedMac> incoming) {
  std::vector<AdvertisedMac> sorted(incoming.begin(), incoming.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.mac < b.mac; });

  std::vector<AdvertisedMac> added;
  std::vector<AdvertisedMac> merged;
  merged.reserve(rows_.size() + sorted.size());
  auto it = rows_.begin();
  for (const auto& row : sorted) {
    while (it != rows_.end() && it->mac < row.mac) merged.push_back(*it++);
    if (it != rows_.end() && it->mac == row.mac) continue;
    if (!merged.empty() && merged.back().mac == row.mac) continue;  // duplicate inside `incoming`
    merged.push_back(row);
    added.push_back(row);
  }
  merged.insert(merged.end(), it, rows_.end());
  if (!added.empty()) rows_ = std::move(merged);
  return added;
}

}  // namespace hashmac
