#include "hashmac/protocol/registration.hpp"

namespace hashmac {

std::string_view to_string(RegistrationDenial denial) {
  switch (denial) {
    case RegistrationDenial::None:
      return "none";
    case RegistrationDenial::DirectToBs:
      return "direct_to_bs";
    case RegistrationDenial::WrongChain:
      return "wrong_chain";
    case RegistrationDenial::NotClusterMember:
      return "not_cluster_member";
    case RegistrationDenial::MacConflict:
      return "mac_conflict";
  }
  return "unknown";
}

RegistrationResult handle_registration(const RegistrationRequest& req, const Hierarchy& topology, NodeId bs,
                                       MacRegistry& registry) {
  auto deny = [](RegistrationDenial why) { return RegistrationResult{RegistrationStatus::Denied, why, false}; };

  if (!req.via_ch) return deny(RegistrationDenial::DirectToBs);
  const NodeId ch = *req.via_ch;
  if (!topology.owns(bs, ch)) return deny(RegistrationDenial::WrongChain);
  if (!topology.is_member(ch, req.device)) return deny(RegistrationDenial::NotClusterMember);

  switch (registry.insert(req.device, req.mac, ChainRef{bs, ch}, req.timestamp)) {
    case MacRegistry::InsertResult::Added:
      return {RegistrationStatus::Registered, RegistrationDenial::None, true};
    case MacRegistry::InsertResult::AlreadyPresent:
      return {RegistrationStatus::Registered, RegistrationDenial::None, false};
    case MacRegistry::InsertResult::Conflict:
      break;
  }
  return deny(RegistrationDenial::MacConflict);
}

}  // namespace hashmac
