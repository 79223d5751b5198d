#include <doctest.h>

#include <filesystem>
#include <string>

#include "hashmac/core/errors.hpp"
#include "hashmac/sim/scenario.hpp"

using namespace hashmac;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

const char* kMinimal = R"({"counts": {"devices": 4, "cluster_heads": 2, "base_stations": 1}, "duration_ticks": 1000})";

}  // namespace

TEST_CASE("minimal scenario takes documented defaults") {
  const Scenario s = parse_scenario(kMinimal, "mini");
  CHECK(s.name == "mini");
  CHECK(s.counts.devices == 4);
  CHECK(s.channel.loss_prob == 0.0);
  CHECK(s.channel.base_ticks == 1000);
  CHECK(s.channel.jitter_ticks == 500);
  CHECK(s.traffic.packet_interval_ticks == kTicksPerSecond);
  CHECK(s.traffic.payload_bytes == 128);
  CHECK(s.mode == RoutingMode::HashMacDsdv);
  CHECK(s.seed == 1);
  CHECK(s.attacks.empty());
  CHECK(s.protocol.dsdv_period_ticks == 15 * kTicksPerSecond);
}

TEST_CASE("attack defaults: layer per kind, start at warm-up") {
  const Scenario s = parse_scenario(
      R"({"counts": {"devices": 4, "cluster_heads": 2, "base_stations": 1}, "duration_ticks": 1000,
          "protocol": {"warmup_ticks": 777},
          "attacks": [{"kind": "bs_impersonation"}, {"kind": "sybil", "count": 5, "target_layer": "ch"}]})");
  REQUIRE(s.attacks.size() == 2);
  CHECK(s.attacks[0].kind == AttackKind::BsImpersonation);
  CHECK(s.attacks[0].target_layer == default_layer(AttackKind::BsImpersonation));
  CHECK(s.attacks[0].start_tick == 777);
  CHECK(s.attacks[1].count == 5);
  CHECK(s.attacks[1].target_layer == TargetLayer::ClusterHead);
}

TEST_CASE("errors name the offending key path") {
  CHECK(error_of(R"({"duration_ticks": 5})").find("counts") != std::string::npos);
  CHECK(error_of(R"({"counts": {"devices": 4, "cluster_heads": 2}, "duration_ticks": 5})")
            .find("counts.base_stations") != std::string::npos);
  CHECK(error_of(R"({"counts": {"devices": -4, "cluster_heads": 2, "base_stations": 1}, "duration_ticks": 5})")
            .find("counts.devices") != std::string::npos);
  CHECK(error_of(R"({"counts": {"devices": 4, "cluster_heads": 2, "base_stations": 1}, "duration_ticks": 5,
                     "channel": {"loss_prob": "high"}})")
            .find("channel.loss_prob") != std::string::npos);
  CHECK(error_of(R"({"counts": {"devices": 4, "cluster_heads": 2, "base_stations": 1}, "duration_ticks": 5,
                     "attacks": [{"kind": "dos"}, {"kind": "teleport"}]})")
            .find("attacks[1].kind") != std::string::npos);
  CHECK(error_of(R"({"counts": {"devices": 4, "cluster_heads": 2, "base_stations": 1}, "duration_ticks": 5,
                     "mode": "aodv"})")
            .find("mode") != std::string::npos);
  CHECK(error_of("{not json").find("malformed JSON") != std::string::npos);
  CHECK(error_of("[1, 2]").find("expected an object") != std::string::npos);
}

TEST_CASE("validation cites the violated constraint") {
  CHECK(error_of(R"({"counts": {"devices": 1, "cluster_heads": 2, "base_stations": 1}, "duration_ticks": 5})")
            .find("must not exceed counts.devices") != std::string::npos);
  CHECK(error_of(R"({"counts": {"devices": 4, "cluster_heads": 2, "base_stations": 3}, "duration_ticks": 5})")
            .find("must not exceed counts.cluster_heads") != std::string::npos);
  CHECK(error_of(R"({"counts": {"devices": 4, "cluster_heads": 2, "base_stations": 1}, "duration_ticks": 5,
                     "channel": {"loss_prob": 1.5}})")
            .find("[0, 1]") != std::string::npos);
  CHECK(error_of(R"({"counts": {"devices": 4, "cluster_heads": 2, "base_stations": 1}, "duration_ticks": 5,
                     "attacks": [{"kind": "dos", "rate": 0}]})")
            .find("attacks[0].rate") != std::string::npos);
  CHECK(error_of(R"({"counts": {"devices": 1, "cluster_heads": 1, "base_stations": 1}, "duration_ticks": 5,
                     "macs": ["02:00:00:00:00:01", "02:00:00:00:00:01", "02:00:00:00:00:02"]})")
            .find("unique") != std::string::npos);
  CHECK(error_of(R"({"counts": {"devices": 1, "cluster_heads": 1, "base_stations": 1}, "duration_ticks": 5,
                     "macs": ["02:00:00:00:00:01"]})")
            .find("expected 3 entries") != std::string::npos);
  CHECK(error_of(R"({"counts": {"devices": 1, "cluster_heads": 1, "base_stations": 1}, "duration_ticks": 5,
                     "link_breaks": [{"tick": 1, "a": 0, "b": 9}]})")
            .find("link_breaks[0]") != std::string::npos);
}

TEST_CASE("missing scenario file error mentions the path") {
  const std::filesystem::path p = "/nonexistent/dir/scenario.json";
  try {
    load_scenario(p);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find(p.string()) != std::string::npos);
  }
}

TEST_CASE("to_json round-trips through parse_scenario") {
  Scenario s = parse_scenario(kMinimal);
  s.name = "round";
  s.seed = 99;
  s.mode = RoutingMode::BaselineDsdv;
  s.channel.loss_prob = 0.02;
  s.attacks.push_back({AttackKind::Spoofing, 7, TargetLayer::BaseStation, 1234, 2.5});
  s.link_breaks.push_back({500, 0, 1});
  const std::string text = to_json(s);
  const Scenario back = parse_scenario(text);
  CHECK(to_json(back) == text);
  CHECK(back.name == "round");
  CHECK(back.mode == RoutingMode::BaselineDsdv);
  CHECK(back.attacks.at(0).rate == 2.5);
}

TEST_CASE("every shipped preset parses") {
  std::size_t n = 0;
  for (const auto& entry : std::filesystem::directory_iterator(HASHMAC_PRESET_DIR)) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().string());
    CHECK_NOTHROW(load_scenario(entry.path()));
    ++n;
  }
  CHECK(n >= 8);
}
