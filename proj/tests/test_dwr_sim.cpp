#include <doctest.h>

#include <algorithm>

#include "dwrsim/cfg.hpp"
#include "dwrsim/core.hpp"
#include "dwrsim/workloads.hpp"

using namespace dwrsim;

namespace {

SmConfig dwr_sm(int max_warp) {
  SmConfig sm;
  sm.dwr_enabled = true;
  sm.max_warp_size = max_warp;
  return sm;
}

SmConfig fixed_sm(int warp_size) {
  SmConfig sm;
  sm.warp_size = warp_size;
  return sm;
}

StatsSnapshot run_workload(const WorkloadSpec& spec, SmConfig sm, CacheConfig cache = {},
                           IltConfig ilt = {}) {
  Workload w = generate(spec);
  Program p = sm.dwr_enabled ? insert_lat_barriers(w.program) : w.program;
  Simulator sim(std::move(p), w.launch, sm, cache, ilt);
  return sim.run();
}

std::vector<MemAccessRecord> sorted(std::vector<MemAccessRecord> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("two partner sub-warps combining at a streaming load") {
  // 16 threads, DWR-16: one group of two sub-warps; the combined load covers
  // a single 64-byte stride instead of two
  WorkloadSpec spec{Archetype::Streaming, 16, 1, 8, 4};
  CacheConfig cache;
  cache.enabled = false;

  auto dwr = run_workload(spec, dwr_sm(16), cache);
  CHECK(dwr.offchip_requests == 2);  // 1 combined load + 1 combined store
  CHECK(dwr.scalar_mem_ops == 32);
  CHECK(dwr.lat_total == 2);
  CHECK(dwr.lat_ignored == 0);
  CHECK(dwr.partner_barrier_blocks > 0);  // first arrival waits for its partner

  auto fixed = run_workload(spec, fixed_sm(16), cache);
  CHECK(fixed.offchip_requests == dwr.offchip_requests);
}

TEST_CASE("no-divergence DWR-X matches fixed-X off-chip traffic, cache off") {
  CacheConfig cache;
  cache.enabled = false;
  for (int x : {16, 32, 64}) {
    WorkloadSpec spec{Archetype::Streaming, 128, 2, 8, 4};
    auto dwr = run_workload(spec, dwr_sm(x), cache);
    auto fixed = run_workload(spec, fixed_sm(x), cache);
    INFO("X = ", x);
    CHECK(dwr.offchip_requests == fixed.offchip_requests);
    CHECK(dwr.scalar_mem_ops == fixed.scalar_mem_ops);
  }
}

TEST_CASE("DWR functional equivalence with the scalar oracle") {
  for (auto arch : {Archetype::Streaming, Archetype::Divergent, Archetype::Mixed}) {
    for (int x : {16, 32, 64}) {
      Workload w = generate({arch, 64, 1, 8, 3});
      Program p = insert_lat_barriers(w.program);
      Simulator sim(std::move(p), w.launch, dwr_sm(x), CacheConfig{}, IltConfig{});
      sim.set_record_accesses(true);
      sim.run();
      INFO(to_string(arch), " DWR-", x);
      CHECK(sorted(sim.access_log()) == sorted(scalar_interpret(w.program, w.launch)));
    }
  }
}

TEST_CASE("deadlock archetypes terminate under DWR") {
  for (auto arch : {Archetype::Deadlock2a, Archetype::Deadlock2b, Archetype::Deadlock3}) {
    WorkloadSpec spec{arch, 16, 1, 8, 4};
    for (int x : {16, 32, 64}) {
      SmConfig sm = dwr_sm(x);
      sm.watchdog_cycles = 200000;
      INFO(to_string(arch), " DWR-", x);
      CHECK_NOTHROW(run_workload(spec, sm));
    }
  }
}

TEST_CASE("the release rule is load-bearing: 2a and 2b hang without it") {
  for (auto arch : {Archetype::Deadlock2a, Archetype::Deadlock2b}) {
    WorkloadSpec spec{arch, 16, 1, 8, 4};
    SmConfig sm = dwr_sm(16);
    sm.deadlock_release = false;
    sm.watchdog_cycles = 50000;
    INFO(to_string(arch));
    CHECK_THROWS_AS(run_workload(spec, sm), WatchdogExceeded);
  }
}

TEST_CASE("deadlock_3 is a plain block-barrier case: fine even without the scan") {
  WorkloadSpec spec{Archetype::Deadlock3, 16, 1, 8, 4};
  SmConfig sm = dwr_sm(16);
  sm.deadlock_release = false;
  sm.watchdog_cycles = 50000;
  CHECK_NOTHROW(run_workload(spec, sm));
  CHECK_NOTHROW(run_workload(spec, fixed_sm(32)));  // baseline terminates too
}

TEST_CASE("deadlock archetypes still compute the right values") {
  for (auto arch : {Archetype::Deadlock2a, Archetype::Deadlock2b, Archetype::Deadlock3}) {
    Workload w = generate({arch, 16, 1, 8, 4});
    Program p = insert_lat_barriers(w.program);
    Simulator sim(std::move(p), w.launch, dwr_sm(16), CacheConfig{}, IltConfig{});
    sim.set_record_accesses(true);
    sim.run();
    INFO(to_string(arch));
    CHECK(sorted(sim.access_log()) == sorted(scalar_interpret(w.program, w.launch)));
  }
}

TEST_CASE("mismatched partner PCs land in the ILT and stop blocking") {
  // granularity = simd width: partners always disagree at the divergent LATs
  WorkloadSpec spec{Archetype::Divergent, 64, 1, 8, 4};
  Workload w = generate(spec);
  Program p = insert_lat_barriers(w.program);
  Simulator sim(std::move(p), w.launch, dwr_sm(16), CacheConfig{}, IltConfig{});
  auto s = sim.run();

  CHECK(s.lat_total == 3);  // two divergent loads + the common store
  CHECK(s.lat_ignored >= 1);
  CHECK(s.lat_ignored == s.ilt_inserted_pcs.size());
  // the first mismatch inserts the pc; later groups sail through, so the
  // first-inserted (lowest) pc blocked exactly once
  REQUIRE(!s.ilt_inserted_pcs.empty());
  int first_pc = *s.ilt_inserted_pcs.begin();
  CHECK(s.blocks_per_barrier_pc.at(first_pc) == 1);
}

TEST_CASE("PST entries are bounded by one per partner group") {
  // indirect check: a group never holds two live barriers, so a full run's
  // lock traffic stays consistent and the simulation terminates
  for (int x : {16, 32, 64}) {
    WorkloadSpec spec{Archetype::Divergent, 128, 1, 8, 4};
    SmConfig sm = dwr_sm(x);
    sm.watchdog_cycles = 500000;
    auto s = run_workload(spec, sm);
    CHECK(s.idle_cycles + s.busy_cycles == s.total_cycles);
  }
}

TEST_CASE("degenerate group: lone sub-warp proceeds through partner barriers") {
  // 8 threads under DWR-64: a single live sub-warp per group
  WorkloadSpec spec{Archetype::Streaming, 8, 1, 8, 4};
  CacheConfig cache;
  cache.enabled = false;
  auto s = run_workload(spec, dwr_sm(64), cache);
  CHECK(s.offchip_requests == 2);
  CHECK(s.partner_barrier_blocks == 0);
}

TEST_CASE("one partner exits early: the waiter is released") {
  // odd sub-warp exits before the barrier; even sub-warp must not hang
  const char* text = R"(
mov r1, %tid
imul r2, r1, 4
setp.ge p0, r1, 8
@p0 bra OUT
ld.global r3, [r2+0]
OUT:
exit
)";
  Program p = insert_lat_barriers(parse_program(text));
  SmConfig sm = dwr_sm(16);
  sm.watchdog_cycles = 50000;
  Simulator sim(std::move(p), KernelLaunch{1, 16, {}}, sm, CacheConfig{}, IltConfig{});
  CHECK_NOTHROW(sim.run());
}

TEST_CASE("block-barrier loop archetype runs under both modes") {
  WorkloadSpec spec{Archetype::BlockBarrierLoop, 64, 1, 8, 4};
  auto fixed = run_workload(spec, fixed_sm(32));
  auto dwr = run_workload(spec, dwr_sm(32));
  CHECK(fixed.scalar_mem_ops == dwr.scalar_mem_ops);
  CHECK(fixed.idle_cycles + fixed.busy_cycles == fixed.total_cycles);
  CHECK(dwr.idle_cycles + dwr.busy_cycles == dwr.total_cycles);
}
