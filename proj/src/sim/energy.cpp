#include "hashmac/sim/energy.hpp"

#include <algorithm>
#include <cmath>

namespace hashmac {

std::string_view to_string(Activity activity) {
  switch (activity) {
    case Activity::Tx:
      return "tx";
    case Activity::Rx:
      return "rx";
    case Activity::Normal:
      return "normal";
    case Activity::Sleep:
      return "sleep";
  }
  return "unknown";
}

std::uint64_t PowerProfile::power_nw(Activity a) const {
  switch (a) {
    case Activity::Tx:
      return tx_nw;
    case Activity::Rx:
      return rx_nw;
    case Activity::Normal:
      return normal_nw;
    case Activity::Sleep:
      return sleep_nw;
  }
  return 0;
}

double battery_budget_mj(double capacity_mah, double voltage) {
  // mAh -> A s: x 3.6; A s x V = J; J -> mJ: x 1000.
  return capacity_mah * 3.6 * voltage * 1000.0;
}

std::uint64_t battery_budget_fj(double capacity_mah, double voltage) {
  const double fj = battery_budget_mj(capacity_mah, voltage) * kFemtojoulesPerMillijoule;
  if (!(fj < 1.8e19)) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(std::llround(fj));
}

double EnergyAccount::residual_mj() const { return std::max(0.0, budget_mj_ - consumed_mj()); }

void EnergyAccount::add(const PowerProfile& power, Activity activity, SimTime ticks) {
  const auto idx = static_cast<std::size_t>(activity);
  const std::uint64_t fj = power.power_nw(activity) * ticks;
  by_activity_fj_[idx] += fj;
  ticks_[idx] += ticks;
  consumed_fj_ += fj;
}

void EnergyAccount::settle(const PowerProfile& power, SimTime at) {
  if (at > accounted_until_) {
    add(power, Activity::Sleep, at - accounted_until_);
    accounted_until_ = at;
  }
}

bool EnergyAccount::charge(const PowerProfile& power, Activity activity, SimTime at, SimTime ticks) {
  settle(power, at);
  add(power, activity, ticks);
  accounted_until_ = std::max(accounted_until_, at) + ticks;
  return !depleted();
}

bool charge_energy(EnergyAccount& account, const PowerProfile& power, Activity activity, SimTime at, SimTime ticks) {
  return account.charge(power, activity, at, ticks);
}

}  // namespace hashmac
