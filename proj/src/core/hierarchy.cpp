#include "hashmac/core/hierarchy.hpp"

#include <algorithm>
#include <stdexcept>

namespace hashmac {

NodeId Hierarchy::add_node(NodeRole role, const MacAddress48& mac, NodeId parent) {
  const auto id = static_cast<NodeId>(nodes_.size());
  if (parent != kNoNode) {
    if (parent >= nodes_.size()) throw std::out_of_range("parent node does not exist");
    const NodeRole parent_role = nodes_[parent].role;
    const bool ok = (role == NodeRole::Device && parent_role == NodeRole::ClusterHead) ||
                    (role == NodeRole::ClusterHead && parent_role == NodeRole::BaseStation);
    if (!ok) throw std::invalid_argument("invalid parent role");
  } else if (role == NodeRole::Device || role == NodeRole::ClusterHead) {
    throw std::invalid_argument("devices and cluster heads need a parent");
  }
  nodes_.push_back(NodeInfo{id, role, mac, mac_digest(mac), parent, {}});
  if (parent != kNoNode) nodes_[parent].children.push_back(id);
  if (role == NodeRole::BaseStation) base_stations_.push_back(id);
  return id;
}

std::vector<NodeId> Hierarchy::nodes_with_role(NodeRole role) const {
  std::vector<NodeId> out;
  for (const auto& n : nodes_) {
    if (n.role == role) out.push_back(n.id);
  }
  return out;
}

bool Hierarchy::owns(NodeId bs, NodeId ch) const {
  if (bs >= nodes_.size() || ch >= nodes_.size()) return false;
  return nodes_[ch].role == NodeRole::ClusterHead && nodes_[ch].parent == bs;
}

bool Hierarchy::is_member(NodeId ch, NodeId device) const {
  if (ch >= nodes_.size() || device >= nodes_.size()) return false;
  return nodes_[device].role == NodeRole::Device && nodes_[device].parent == ch;
}

NodeId Hierarchy::base_station_of(NodeId id) const {
  const auto& n = node(id);
  switch (n.role) {
    case NodeRole::BaseStation:
      return id;
    case NodeRole::ClusterHead:
      return n.parent;
    case NodeRole::Device:
      return nodes_[n.parent].parent;
    case NodeRole::Attacker:
      break;
  }
  return kNoNode;
}

std::vector<NodeId> Hierarchy::links(NodeId id) const {
  const auto& n = node(id);
  std::vector<NodeId> out;
  if (n.parent != kNoNode) out.push_back(n.parent);
  out.insert(out.end(), n.children.begin(), n.children.end());
  if (n.role == NodeRole::BaseStation) {
    for (NodeId bs : base_stations_) {
      if (bs != id) out.push_back(bs);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hashmac
