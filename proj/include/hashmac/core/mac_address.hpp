#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace hashmac {

/// 48-bit hardware address. Canonical text form is lowercase, colon separated
/// (`aa:bb:cc:dd:ee:ff`).
class MacAddress48 {
 public:
  static constexpr std::size_t kSize = 6;

  constexpr MacAddress48() = default;
  constexpr explicit MacAddress48(std::array<std::uint8_t, kSize> octets) : octets_(octets) {}

  /// Accepts six colon-separated two-digit hex groups in either case.
  static std::optional<MacAddress48> parse(std::string_view text);

  /// Big-endian packing of the low 48 bits.
  static MacAddress48 from_u64(std::uint64_t value);
  std::uint64_t to_u64() const;

  std::string to_string() const;

  const std::array<std::uint8_t, kSize>& octets() const { return octets_; }
  std::span<const std::uint8_t, kSize> bytes() const { return octets_; }

  friend constexpr auto operator<=>(const MacAddress48&, const MacAddress48&) = default;

 private:
  std::array<std::uint8_t, kSize> octets_{};
};

}  // namespace hashmac

template <>
struct std::hash<hashmac::MacAddress48> {
  std::size_t operator()(const hashmac::MacAddress48& mac) const noexcept {
    return std::hash<std::uint64_t>{}(mac.to_u64());
  }
};
