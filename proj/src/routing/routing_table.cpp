#include "hashmac/routing/routing_table.hpp"

#include <sstream>

namespace hashmac {

std::string_view to_string(RoutingMode mode) {
  return mode == RoutingMode::HashMacDsdv ? "hashmac" : "dsdv";
}

std::optional<RoutingMode> parse_routing_mode(std::string_view text) {
  if (text == "hashmac" || text == "HashMacDsdv") return RoutingMode::HashMacDsdv;
  if (text == "dsdv" || text == "BaselineDsdv") return RoutingMode::BaselineDsdv;
  return std::nullopt;
}

std::size_t RouteUpdateMessage::wire_size(RoutingMode mode) const {
  const std::size_t per_entry = mode == RoutingMode::HashMacDsdv ? 31 : 15;
  return 8 + per_entry * entries.size();
}

RoutingTable::RoutingTable(NodeId self, const MacAddress48& self_mac, RoutingMode mode,
                           std::size_t node_count_hint)
    : self_(self), mode_(mode) {
  rows_.resize(std::max<std::size_t>(node_count_hint, static_cast<std::size_t>(self) + 1));
  rows_[self] = RoutingEntry{self, self_mac, mac_digest(self_mac), self, 0, 0, 0};
  size_ = 1;
}

RoutingEntry* RoutingTable::slot(NodeId dest) {
  if (dest >= rows_.size()) rows_.resize(static_cast<std::size_t>(dest) + 1);
  return &rows_[dest];
}

const RoutingEntry* RoutingTable::find(NodeId dest) const {
  if (dest >= rows_.size() || rows_[dest].dest == kNoNode) return nullptr;
  return &rows_[dest];
}

UpdateResult RoutingTable::update_route(const AdvertisedRoute& advertised, NodeId via, SimTime now) {
  if (advertised.dest == self_ || advertised.dest == kNoNode) return {};
  if (mode_ == RoutingMode::HashMacDsdv && mac_digest(advertised.dest_mac) != advertised.dest_digest) {
    ++poisoning_rejections_;
    return {};
  }

  const std::uint16_t hops =
      advertised.hop_count >= kInfiniteHops - 1 ? kInfiniteHops : static_cast<std::uint16_t>(advertised.hop_count + 1);
  const RoutingEntry fresh{advertised.dest, advertised.dest_mac, advertised.dest_digest, via,
                           hops,            advertised.seq,      now};

  RoutingEntry* row = slot(advertised.dest);
  if (row->dest == kNoNode) {
    *row = fresh;
    ++size_;
    return {UpdateOutcome::Installed, true};
  }
  const bool newer = advertised.seq > row->seq;
  const bool shorter = advertised.seq == row->seq && hops < row->hop_count;
  if (!newer && !shorter) return {};

  const bool significant =
      row->next_hop != via || row->hop_count != hops || row->reachable() != fresh.reachable();
  *row = fresh;
  return {UpdateOutcome::Replaced, significant};
}

std::optional<NodeId> RoutingTable::next_hop(NodeId dest) const {
  const RoutingEntry* e = find(dest);
  if (e == nullptr || !e->reachable()) return std::nullopt;
  return e->next_hop;
}

std::vector<RoutingEntry> RoutingTable::entries() const {
  std::vector<RoutingEntry> out;
  out.reserve(size_);
  for (const auto& row : rows_) {
    if (row.dest != kNoNode) out.push_back(row);
  }
  return out;
}

AdvertisedRoute RoutingTable::advertise(const RoutingEntry& e) {
  return AdvertisedRoute{e.dest, e.dest_mac, e.dest_digest, e.hop_count, e.seq};
}

RouteUpdateMessage RoutingTable::full_dump(NodeId neighbor) const {
  RouteUpdateMessage msg{self_, UpdateKind::FullDump, {}};
  msg.entries.reserve(size_);
  for (const auto& row : rows_) {
    if (row.dest == kNoNode) continue;
    if (row.dest != self_ && row.next_hop == neighbor) continue;
    msg.entries.push_back(advertise(row));
  }
  return msg;
}

RouteUpdateMessage RoutingTable::incremental(std::span<const NodeId> changed, NodeId neighbor) const {
  RouteUpdateMessage msg{self_, UpdateKind::Incremental, {}};
  for (NodeId dest : changed) {
    const RoutingEntry* e = find(dest);
    if (e == nullptr) continue;
    if (e->dest != self_ && e->next_hop == neighbor) continue;
    msg.entries.push_back(advertise(*e));
  }
  return msg;
}

std::vector<NodeId> RoutingTable::break_link(NodeId neighbor, SimTime now) {
  std::vector<NodeId> changed;
  for (auto& row : rows_) {
    if (row.dest == kNoNode || row.dest == self_ || row.next_hop != neighbor || !row.reachable()) continue;
    row.seq += 1;
    row.hop_count = kInfiniteHops;
    row.installed_at = now;
    changed.push_back(row.dest);
  }
  return changed;
}

void RoutingTable::advance_own_seq() { rows_[self_].seq += 2; }

bool RoutingTable::refresh_digest(NodeId dest, const MacAddress48& mac, const Digest128& digest) {
  if (dest >= rows_.size()) return false;
  RoutingEntry& row = rows_[dest];
  if (row.dest == kNoNode || row.dest_mac != mac) return false;
  if (mode_ == RoutingMode::HashMacDsdv && mac_digest(mac) != digest) return false;
  row.dest_digest = digest;
  return true;
}

std::string route_dump_csv(const RoutingTable& table) {
  std::ostringstream out;
  out << "node,dest,next_hop,hops,seq\n";
  for (const auto& e : table.entries()) {
    out << table.self() << ',' << e.dest << ',' << e.next_hop << ',' << e.hop_count << ',' << e.seq << '\n';
  }
  return out.str();
}

}  // namespace hashmac
