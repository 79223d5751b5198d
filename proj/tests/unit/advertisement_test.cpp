#include <doctest.h>

#include "hashmac/protocol/advertisement.hpp"
#include "hashmac/protocol/authentication.hpp"
#include "hashmac/routing/routing_table.hpp"

using namespace hashmac;

namespace {

MacAddress48 mac(std::uint64_t v) { return MacAddress48::from_u64(0x020000000000ull + v); }

MacRegistry registry_with(std::initializer_list<std::uint64_t> ids) {
  MacRegistry r;
  for (auto id : ids) r.insert(static_cast<NodeId>(id), mac(id), ChainRef{0, 1}, 0);
  return r;
}

}  // namespace

TEST_CASE("advertisement carries exactly the registered pairs") {
  const auto adv = build_advertisement(registry_with({5, 3, 9}), 0, 1);
  REQUIRE(adv);
  REQUIRE(adv->entries.size() == 3);
  for (const auto& e : adv->entries) {
    CHECK(e.digest == mac_digest(e.mac));
    CHECK(e.mac == mac(e.node));
  }
  CHECK(adv->wire_size() == 8 + 3 * 22);
}

TEST_CASE("empty registry emits nothing") {
  CHECK_FALSE(build_advertisement(MacRegistry{}, 0, 1));
  AdvertisementSource src(0);
  CHECK_FALSE(src.next(MacRegistry{}));
  CHECK(src.last_seq() == 0);
}

TEST_CASE("successive advertisements have strictly increasing seq") {
  AdvertisementSource src(0);
  const auto reg = registry_with({1});
  const auto a = src.next(reg);
  const auto b = src.next(reg);
  REQUIRE(a);
  REQUIRE(b);
  CHECK(b->seq > a->seq);
}

TEST_CASE("fresh advertisement grows the table; replay leaves it unchanged") {
  NodeAuthState state;
  const auto adv = build_advertisement(registry_with({1, 2}), 0, 1);
  const auto first = apply_advertisement(*adv, state, nullptr);
  CHECK(first.outcome == ApplyOutcome::Applied);
  CHECK(first.added.size() == 2);
  CHECK(state.table().size() == 2);

  const auto replay = apply_advertisement(*adv, state, nullptr);
  CHECK(replay.outcome == ApplyOutcome::Stale);
  CHECK(state.table().size() == 2);
  CHECK(state.duplicates_suppressed() == 1);
}

TEST_CASE("out-of-order advertisement is ignored") {
  NodeAuthState state;
  apply_advertisement(*build_advertisement(registry_with({1}), 0, 5), state, nullptr);
  const auto late = apply_advertisement(*build_advertisement(registry_with({1, 2}), 0, 3), state, nullptr);
  CHECK(late.outcome == ApplyOutcome::Stale);
  CHECK(state.table().size() == 1);
  CHECK(state.last_seq(0) == 5u);
}

TEST_CASE("seq is tracked per origin") {
  NodeAuthState state;
  apply_advertisement(*build_advertisement(registry_with({1}), 0, 5), state, nullptr);
  const auto other = apply_advertisement(*build_advertisement(registry_with({2}), 7, 1), state, nullptr);
  CHECK(other.outcome == ApplyOutcome::Applied);
  CHECK(state.table().size() == 2);
}

TEST_CASE("table is the union of prior and advertised entries") {
  MacTable t;
  const std::vector<AdvertisedMac> a{{1, mac(1), mac_digest(mac(1))}, {3, mac(3), mac_digest(mac(3))}};
  const std::vector<AdvertisedMac> b{{3, mac(3), mac_digest(mac(3))}, {2, mac(2), mac_digest(mac(2))},
                                     {2, mac(2), mac_digest(mac(2))}};
  CHECK(t.merge(a).size() == 2);
  const auto added = t.merge(b);
  REQUIRE(added.size() == 1);
  CHECK(added[0].node == 2);
  CHECK(t.size() == 3);
  CHECK(t.contains(mac(2)));
  CHECK_FALSE(t.contains(mac(4)));
  CHECK(std::is_sorted(t.entries().begin(), t.entries().end(),
                       [](const auto& x, const auto& y) { return x.mac < y.mac; }));
}

TEST_CASE("applying refreshes digests on routes to advertised nodes") {
  RoutingTable routes(0, mac(0), RoutingMode::BaselineDsdv);
  routes.update_route(AdvertisedRoute{1, mac(1), Digest128{}, 0, 2}, 1, 0);
  NodeAuthState state;
  apply_advertisement(*build_advertisement(registry_with({1}), 9, 1), state, &routes);
  CHECK(routes.find(1)->dest_digest == mac_digest(mac(1)));
}
