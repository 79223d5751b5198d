#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "hashmac/core/md5.hpp"

using namespace hashmac;

// Expected values computed with Python's hashlib before the build.
TEST_CASE("md5 matches the RFC 1321 test suite") {
  const std::pair<std::string, std::string> suite[] = {
      {"", "d41d8cd98f00b204e9800998ecf8427e"},
      {"a", "0cc175b9c0f1b6a831c399e269772661"},
      {"abc", "900150983cd24fb0d6963f7d28e17f72"},
      {"message digest", "f96b697d7cb7938d525a2f31aaf161d0"},
      {"abcdefghijklmnopqrstuvwxyz", "c3fcd3d76192e4007dfb496cca67e13b"},
      {"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789", "d174ab98d277d9f5a5611c2c9f419d9f"},
      {"12345678901234567890123456789012345678901234567890123456789012345678901234567890",
       "57edf4a22be3c955ac49da2e2107b67a"},
  };
  for (const auto& [input, hex] : suite) {
    CAPTURE(input);
    CHECK(md5_digest(input).to_hex() == hex);
  }
}

TEST_CASE("md5 of one million 'a'") {
  Md5 h;
  const std::string chunk(1000, 'a');
  for (int i = 0; i < 1000; ++i) h.update(chunk);
  CHECK(h.finish().to_hex() == "7707d6ae4e027c70eea2a935c2296f21");
}

TEST_CASE("incremental updates equal one-shot hashing at every split") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 50; ++round) {
    std::vector<std::uint8_t> data(rng() % 300);
    for (auto& b : data) b = static_cast<std::uint8_t>(rng());
    const Digest128 whole = md5_digest(data);
    const std::size_t cut = data.empty() ? 0 : rng() % data.size();
    Md5 h;
    h.update(std::span(data).first(cut));
    h.update(std::span(data).subspan(cut));
    CHECK(h.finish() == whole);
    CHECK(md5_digest(data) == whole);
  }
}

TEST_CASE("finish resets the hasher") {
  Md5 h;
  h.update("abc");
  (void)h.finish();
  CHECK(h.finish().to_hex() == "d41d8cd98f00b204e9800998ecf8427e");
}

TEST_CASE("mac_digest hashes the six raw octets") {
  CHECK(mac_digest(MacAddress48{}).to_hex() == "7319468847d7b1aee40dbf5dd963c999");
  const auto mac = MacAddress48::parse("00:01:02:03:04:05");
  REQUIRE(mac);
  CHECK(mac_digest(*mac).to_hex() == "d15ae53931880fd7b724dd7888b4b4ed");
  CHECK(mac_digest(*mac) == mac_digest(*mac));
  CHECK(mac_digest(*mac).bytes().size() == 16);
}

TEST_CASE("digest hex parsing") {
  const auto d = Digest128::parse_hex("900150983CD24FB0D6963F7D28E17F72");
  REQUIRE(d);
  CHECK(d->to_hex() == "900150983cd24fb0d6963f7d28e17f72");
  CHECK_FALSE(Digest128::parse_hex("900150983cd24fb0d6963f7d28e17f7"));
  CHECK_FALSE(Digest128::parse_hex("900150983cd24fb0d6963f7d28e17fzz"));
}
