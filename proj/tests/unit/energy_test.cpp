#include <doctest.h>

#include <limits>
#include <random>

#include "hashmac/sim/energy.hpp"

using namespace hashmac;

TEST_CASE("one transmission costs 70.1 mW x 14 us") {
  EnergyAccount acc;
  const PowerProfile p;
  acc.charge(p, Activity::Tx, 0, kFrameAirtimeTicks);
  CHECK(acc.consumed_fj() == 981'400'000u);  // 9.814e-7 J
  CHECK(acc.consumed_mj() == doctest::Approx(9.814e-4));
}

TEST_CASE("one second asleep costs 0.5 uW x 1 s") {
  EnergyAccount acc;
  acc.settle(PowerProfile{}, kTicksPerSecond);
  CHECK(acc.consumed_fj() == 500'000'000u);  // 5e-7 J
  CHECK(acc.charged_fj(Activity::Sleep) == 500'000'000u);
}

TEST_CASE("battery budget: 60,000 mAh at 3.0 V is 648,000 J") {
  CHECK(battery_budget_mj(60'000.0, 3.0) == doctest::Approx(648'000'000.0));
  CHECK(battery_budget_fj(60'000.0, 3.0) == std::numeric_limits<std::uint64_t>::max());
  CHECK(battery_budget_fj(0.001, 3.0) == 10'800'000'000'000u);
}

TEST_CASE("airtime is charged per 128-byte frame") {
  CHECK(frames_for(0) == 1);
  CHECK(frames_for(128) == 1);
  CHECK(frames_for(129) == 2);
  CHECK(airtime_for(300) == 3 * kFrameAirtimeTicks);
}

TEST_CASE("idle gaps are charged as sleep before an activity") {
  EnergyAccount acc;
  const PowerProfile p;
  acc.charge(p, Activity::Rx, 1000, 14);
  CHECK(acc.busy_ticks(Activity::Sleep) == 1000);
  CHECK(acc.busy_ticks(Activity::Rx) == 14);
  CHECK(acc.accounted_until() == 1014);
}

TEST_CASE("residual never increases and per-activity charges sum to the total") {
  std::mt19937_64 rng(9);
  EnergyAccount acc(battery_budget_fj(1.0, 3.0), battery_budget_mj(1.0, 3.0));
  const PowerProfile p;
  double last = acc.residual_mj();
  SimTime t = 0;
  for (int i = 0; i < 10'000; ++i) {
    t += rng() % 5000;
    acc.charge(p, static_cast<Activity>(rng() % kActivityCount), t, rng() % 200);
    CHECK(acc.residual_mj() <= last);
    last = acc.residual_mj();
  }
  std::uint64_t sum = 0;
  for (std::size_t a = 0; a < kActivityCount; ++a) sum += acc.charged_fj(static_cast<Activity>(a));
  CHECK(sum == acc.consumed_fj());
}

TEST_CASE("account depletes at its budget") {
  EnergyAccount acc(1'000'000'000, 1e-3);
  const PowerProfile p;
  CHECK(charge_energy(acc, p, Activity::Tx, 0, 1));
  CHECK_FALSE(charge_energy(acc, p, Activity::Tx, 1, 14));
  CHECK(acc.depleted());
  CHECK(acc.residual_mj() == 0.0);
}
