#include <doctest.h>

#include "../support/oracles.hpp"
#include "hashmac/protocol/registration.hpp"
#include "hashmac/sim/topology.hpp"

using namespace hashmac;
namespace ht = hashmac::testing;

namespace {

struct Fixture {
  // BS 0 owns CH 2, BS 1 owns CH 3; devices 4, 6 in CH 2 and 5, 7 in CH 3.
  Topology topo = build_topology(ht::small_scenario(4, 2, 2, 0));
  MacRegistry registry;
  const MacAddress48& mac(NodeId id) const { return topo.hierarchy.node(id).mac; }
};

}  // namespace

TEST_CASE("device registers through its own CH") {
  Fixture f;
  const auto r = handle_registration({4, f.mac(4), NodeId{2}, 7}, f.topo.hierarchy, 0, f.registry);
  CHECK(r.status == RegistrationStatus::Registered);
  CHECK(r.newly_added);
  const RegistryEntry* e = f.registry.find(f.mac(4));
  REQUIRE(e);
  CHECK(e->digest == mac_digest(f.mac(4)));
  CHECK(e->chain == ChainRef{0, 2});
  CHECK(e->registered_at == 7);
  CHECK(e->device == 4);
}

TEST_CASE("direct-to-BS request is denied") {
  Fixture f;
  const auto r = handle_registration({4, f.mac(4), std::nullopt, 0}, f.topo.hierarchy, 0, f.registry);
  CHECK(r.status == RegistrationStatus::Denied);
  CHECK(r.denial == RegistrationDenial::DirectToBs);
  CHECK(f.registry.empty());
}

TEST_CASE("request via a CH owned by another BS is a wrong chain") {
  Fixture f;
  const auto r = handle_registration({5, f.mac(5), NodeId{3}, 0}, f.topo.hierarchy, 0, f.registry);
  CHECK(r.denial == RegistrationDenial::WrongChain);
  CHECK(f.registry.empty());
}

TEST_CASE("device outside the CH's cluster is denied") {
  Fixture f;
  const auto r = handle_registration({5, f.mac(5), NodeId{2}, 0}, f.topo.hierarchy, 0, f.registry);
  CHECK(r.denial == RegistrationDenial::NotClusterMember);
}

TEST_CASE("re-registration through the same chain is idempotent") {
  Fixture f;
  handle_registration({4, f.mac(4), NodeId{2}, 0}, f.topo.hierarchy, 0, f.registry);
  const auto again = handle_registration({4, f.mac(4), NodeId{2}, 50}, f.topo.hierarchy, 0, f.registry);
  CHECK(again.status == RegistrationStatus::Registered);
  CHECK_FALSE(again.newly_added);
  CHECK(f.registry.size() == 1);
  CHECK(f.registry.find(f.mac(4))->registered_at == 0);
}

TEST_CASE("a MAC already registered by another device is a conflict") {
  Fixture f;
  handle_registration({4, f.mac(4), NodeId{2}, 0}, f.topo.hierarchy, 0, f.registry);
  const auto r = handle_registration({6, f.mac(4), NodeId{2}, 0}, f.topo.hierarchy, 0, f.registry);
  CHECK(r.denial == RegistrationDenial::MacConflict);
  CHECK(f.registry.find(f.mac(4))->device == 4);
}

TEST_CASE("randomized registration attempts never violate the chain rule") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    Scenario s = ht::small_scenario(300, 15, 3, 0);
    s.seed = seed;
    const auto tally = ht::registration_chain_trial(s, seed, 1000);
    CHECK(tally.attempts == 1000);
    CHECK(tally.own_chain > 0);
    CHECK(tally.direct_or_wrong_chain > 0);
    CHECK(tally.violations == 0);
  }
}
