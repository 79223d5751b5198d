#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "hashmac/core/mac_address.hpp"

namespace hashmac {

/// 128-bit message digest. Text form is 32 lowercase hex characters.
class Digest128 {
 public:
  static constexpr std::size_t kSize = 16;

  constexpr Digest128() = default;
  constexpr explicit Digest128(std::array<std::uint8_t, kSize> bytes) : bytes_(bytes) {}

  static std::optional<Digest128> parse_hex(std::string_view text);
  std::string to_hex() const;

  const std::array<std::uint8_t, kSize>& bytes() const { return bytes_; }

  friend constexpr auto operator<=>(const Digest128&, const Digest128&) = default;

 private:
  std::array<std::uint8_t, kSize> bytes_{};
};

/// Incremental MD5 (RFC 1321). Not collision resistant.
class Md5 {
 public:
  Md5();

  void update(std::span<const std::uint8_t> data);
  void update(std::string_view data);

  /// Pads, returns the digest and resets the hasher.
  Digest128 finish();

 private:
  void compress(const std::uint8_t* block);

  std::array<std::uint32_t, 4> state_;
  std::array<std::uint8_t, 64> buffer_{};
  std::uint64_t length_ = 0;  // bytes hashed so far
};

Digest128 md5_digest(std::span<const std::uint8_t> data);
Digest128 md5_digest(std::string_view data);

/// MD5 over the six raw octets of the address, no salt or separator.
Digest128 mac_digest(const MacAddress48& mac);

}  // namespace hashmac
