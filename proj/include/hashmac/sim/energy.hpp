#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

#include "hashmac/core/types.hpp"

namespace hashmac {

enum class Activity : std::uint8_t { Tx, Rx, Normal, Sleep };

inline constexpr std::size_t kActivityCount = 4;

std::string_view to_string(Activity activity);

/// Power draw per radio state in nanowatts, so that power x ticks (us) is an
/// exact integer number of femtojoules.
struct PowerProfile {
  std::uint64_t tx_nw = 70'100'000;    // 70.1 mW
  std::uint64_t rx_nw = 44'600'000;    // 44.6 mW
  std::uint64_t normal_nw = 1'030'000; // 1.03 mW
  std::uint64_t sleep_nw = 500;        // 0.50 uW

  std::uint64_t power_nw(Activity a) const;
};

/// Airtime of one 128-byte frame.
inline constexpr SimTime kFrameAirtimeTicks = 14;
inline constexpr std::size_t kFrameBytes = 128;

inline std::uint64_t frames_for(std::size_t bytes) { return bytes == 0 ? 1 : (bytes + kFrameBytes - 1) / kFrameBytes; }
inline SimTime airtime_for(std::size_t bytes) { return frames_for(bytes) * kFrameAirtimeTicks; }

inline constexpr double kFemtojoulesPerMillijoule = 1e12;

/// Battery budget in femtojoules: mAh x V x 3.6 J, saturated to 64 bits.
std::uint64_t battery_budget_fj(double capacity_mah, double voltage);
double battery_budget_mj(double capacity_mah, double voltage);

/// Residual-energy ledger of one node. Residual = budget - consumed never
/// increases; the node is depleted once consumed reaches the budget.
class EnergyAccount {
 public:
  EnergyAccount() = default;
  EnergyAccount(std::uint64_t budget_fj, double budget_mj) : budget_fj_(budget_fj), budget_mj_(budget_mj) {}

  std::uint64_t consumed_fj() const { return consumed_fj_; }
  std::uint64_t charged_fj(Activity a) const { return by_activity_fj_[static_cast<std::size_t>(a)]; }
  std::uint64_t busy_ticks(Activity a) const { return ticks_[static_cast<std::size_t>(a)]; }
  double consumed_mj() const { return static_cast<double>(consumed_fj_) / kFemtojoulesPerMillijoule; }
  double residual_mj() const;
  bool depleted() const { return consumed_fj_ >= budget_fj_; }

  /// Tick up to which the node's time has been accounted.
  SimTime accounted_until() const { return accounted_until_; }

  /// Charges sleep for any idle gap before `at`, then `ticks` of `activity`.
  /// Returns true while the node still has energy.
  bool charge(const PowerProfile& power, Activity activity, SimTime at, SimTime ticks);

  /// Charges sleep up to `at`.
  void settle(const PowerProfile& power, SimTime at);

 private:
  void add(const PowerProfile& power, Activity activity, SimTime ticks);

  std::uint64_t budget_fj_ = std::numeric_limits<std::uint64_t>::max();
  double budget_mj_ = 0.0;
  std::uint64_t consumed_fj_ = 0;
  std::array<std::uint64_t, kActivityCount> by_activity_fj_{};
  std::array<std::uint64_t, kActivityCount> ticks_{};
  SimTime accounted_until_ = 0;
};

/// Standalone charge: `power(activity) x ticks` deducted from the account.
bool charge_energy(EnergyAccount& account, const PowerProfile& power, Activity activity, SimTime at, SimTime ticks);

}  // namespace hashmac
