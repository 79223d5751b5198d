#pragma once

#include <span>
#include <vector>

#include "hashmac/core/mac_address.hpp"
#include "hashmac/core/md5.hpp"
#include "hashmac/core/types.hpp"

namespace hashmac {

struct NodeInfo {
  NodeId id = kNoNode;
  NodeRole role = NodeRole::Device;
  MacAddress48 mac;
  Digest128 digest;
  NodeId parent = kNoNode;  // device -> CH, CH -> BS, none for BS and attackers
  std::vector<NodeId> children;
};

/// Device / cluster-head / base-station ownership tree plus the base-station
/// mesh. Attackers live in the same id space but have no parent or children.
class Hierarchy {
 public:
  NodeId add_node(NodeRole role, const MacAddress48& mac, NodeId parent = kNoNode);

  std::size_t size() const { return nodes_.size(); }
  const NodeInfo& node(NodeId id) const { return nodes_.at(id); }
  std::span<const NodeInfo> nodes() const { return nodes_; }

  NodeRole role(NodeId id) const { return node(id).role; }
  NodeId parent(NodeId id) const { return node(id).parent; }
  std::span<const NodeId> children(NodeId id) const { return node(id).children; }

  const std::vector<NodeId>& base_stations() const { return base_stations_; }
  std::vector<NodeId> nodes_with_role(NodeRole role) const;

  bool owns(NodeId bs, NodeId ch) const;
  bool is_member(NodeId ch, NodeId device) const;

  /// Owning base station of a device or cluster head (itself for a BS).
  NodeId base_station_of(NodeId id) const;

  /// Physical links: parent, children and, for a BS, every other BS.
  std::vector<NodeId> links(NodeId id) const;

 private:
  std::vector<NodeInfo> nodes_;
  std::vector<NodeId> base_stations_;
};

}  // namespace hashmac
