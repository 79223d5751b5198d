#pragma once

#include <optional>
#include <string_view>

#include "hashmac/core/hierarchy.hpp"
#include "hashmac/protocol/registry.hpp"

namespace hashmac {

/// RREQ from a device to its base station. Legitimate devices always go
/// through their cluster head; a missing `via_ch` is a direct-to-BS attempt.
struct RegistrationRequest {
  NodeId device = kNoNode;
  MacAddress48 mac;
  std::optional<NodeId> via_ch;
  SimTime timestamp = 0;
};

enum class RegistrationStatus : std::uint8_t { Registered, Denied };

enum class RegistrationDenial : std::uint8_t {
  None,
  DirectToBs,        // no cluster head on the path
  WrongChain,        // cluster head not owned by this BS
  NotClusterMember,  // device is not in the cluster head's cluster
  MacConflict,       // MAC already registered through another chain
};

std::string_view to_string(RegistrationDenial denial);

struct RegistrationResult {
  RegistrationStatus status = RegistrationStatus::Denied;
  RegistrationDenial denial = RegistrationDenial::None;
  bool newly_added = false;  // a fresh advertisement is due
};

/// Registration check run by base station `bs`: the request must arrive
/// through one of its own cluster heads, and the device must belong to that
/// cluster. Re-registering through the same chain is idempotent.
RegistrationResult handle_registration(const RegistrationRequest& req, const Hierarchy& topology, NodeId bs,
                                       MacRegistry& registry);

}  // namespace hashmac
