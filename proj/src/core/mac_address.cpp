#include "hashmac/core/mac_address.hpp"

namespace hashmac {
namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

constexpr char kHexDigits[] = "0123456789abcdef";

}  // namespace

std::optional<MacAddress48> MacAddress48::parse(std::string_view text) {
  // "xx:xx:xx:xx:xx:xx"
  if (text.size() != 17) return std::nullopt;
  std::array<std::uint8_t, kSize> octets{};
  for (std::size_t i = 0; i < kSize; ++i) {
    const std::size_t pos = i * 3;
    if (i > 0 && text[pos - 1] != ':') return std::nullopt;
    const int hi = hex_value(text[pos]);
    const int lo = hex_value(text[pos + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    octets[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return MacAddress48(octets);
}

MacAddress48 MacAddress48::from_u64(std::uint64_t value) {
  std::array<std::uint8_t, kSize> octets{};
  for (std::size_t i = 0; i < kSize; ++i) {
    octets[kSize - 1 - i] = static_cast<std::uint8_t>(value >> (8 * i));
  }
  return MacAddress48(octets);
}

std::uint64_t MacAddress48::to_u64() const {
  std::uint64_t value = 0;
  for (auto octet : octets_) value = value << 8 | octet;
  return value;
}

std::string MacAddress48::to_string() const {
  std::string out;
  out.reserve(17);
  for (std::size_t i = 0; i < kSize; ++i) {
    if (i > 0) out.push_back(':');
    out.push_back(kHexDigits[octets_[i] >> 4]);
    out.push_back(kHexDigits[octets_[i] & 0xF]);
  }
  return out;
}

}  // namespace hashmac
