#include <doctest.h>

#include "dwrsim/core.hpp"
#include "dwrsim/metrics.hpp"
#include "dwrsim/workloads.hpp"

using namespace dwrsim;

TEST_CASE("coalescing rate is scalar mem ops over off-chip requests") {
  StatsSnapshot s;
  s.scalar_mem_ops = 64;
  s.offchip_requests = 4;
  CHECK(coalescing_rate(s) == 16.0);

  s.offchip_requests = 64;
  CHECK(coalescing_rate(s) == 1.0);

  s.offchip_requests = 0;
  CHECK(!coalescing_rate(s).has_value());
}

TEST_CASE("idle share and ipc") {
  StatsSnapshot s;
  s.total_cycles = 100;
  s.idle_cycles = 25;
  s.issued_scalar_ops = 320;
  s.issued_warp_insns = 40;
  s.issued_lane_slots = 400;
  CHECK(idle_share(s) == 0.25);
  CHECK(ipc(s) == 3.2);
  CHECK(warp_ipc(s) == 0.4);
  CHECK(activity_factor(s) == 0.8);
}

TEST_CASE("idle share of a straight-line kernel comes from drain cycles only") {
  Program p = parse_program("alu\nalu\nalu\nexit");
  Simulator sim(std::move(p), KernelLaunch{1, 8, {}}, SmConfig{}, CacheConfig{}, IltConfig{});
  auto s = sim.run();
  CHECK(idle_share(s) == doctest::Approx(23.0 / 27.0));
}

TEST_CASE("scalar ipc of a full-width alu stream approaches the SIMD width") {
  // one 8-wide warp per block, many blocks: issue every cycle, 8 lanes each
  std::string text;
  for (int i = 0; i < 200; i++) text += "iadd r1, r1, 1\n";
  text += "exit\n";
  Program p = parse_program(text);
  SmConfig sm;
  sm.warp_size = 8;
  sm.dwr_enabled = false;
  Simulator sim(std::move(p), KernelLaunch{1, 8, {}}, sm, CacheConfig{}, IltConfig{});
  auto s = sim.run();
  CHECK(ipc(s) > 7.0);
  CHECK(ipc(s) <= 8.0);
}

TEST_CASE("coalescing rate never exceeds 16 for 4-byte accesses") {
  CacheConfig cache;
  cache.enabled = false;
  for (auto arch : {Archetype::Streaming, Archetype::Divergent, Archetype::Mixed}) {
    for (int warp : {8, 16, 32, 64}) {
      Workload w = generate({arch, 64, 1, 8, 3});
      SmConfig sm;
      sm.warp_size = warp;
      Simulator sim(w.program, w.launch, sm, cache, IltConfig{});
      auto s = sim.run();
      auto rate = coalescing_rate(s);
      REQUIRE(rate.has_value());
      INFO(to_string(arch), " warp ", warp);
      CHECK(*rate <= 16.0);
    }
  }
}

TEST_CASE("storage overhead arithmetic matches the closed forms") {
  CHECK(storage_overhead(16, 8, 4, 8).pst_bytes == 82);
  CHECK(storage_overhead(16, 8, 4, 8).ilt_bytes == 124);
  CHECK(storage_overhead(0, 8, 4, 8).pst_bytes == 0);
  // DWR-16 at simd 8: 64 groups of 2 -> 64 x 35 bits
  CHECK(storage_overhead(64, 2, 4, 8).pst_bytes == 280);
  // smaller ILT variants
  CHECK(storage_overhead(16, 8, 4, 4).ilt_bytes == 62);
  CHECK(storage_overhead(16, 8, 2, 4).ilt_bytes == 31);
}

TEST_CASE("stats field serialization reports LAT in ignored/total form") {
  StatsSnapshot s;
  s.lat_total = 12;
  s.lat_ignored = 3;
  auto f = s.to_fields();
  CHECK(f.at("lat") == "3/12");
  CHECK(f.at("lat_total") == "12");
  CHECK(f.at("lat_ignored") == "3");
}
