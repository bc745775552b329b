#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "dwrsim/config.hpp"
#include "dwrsim/runner.hpp"

using namespace dwrsim;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("config text parses sections and dotted keys") {
  RunConfig c = parse_config_text(R"(
# a comment
[sm]
simd_width = 8
warp_size = 32
dwr = 64
[cache]
enabled = off
[run]
workload = streaming:threads=64
threads = 0
)");
  CHECK(c.sm.simd_width == 8);
  CHECK(c.sm.dwr_enabled);
  CHECK(c.sm.max_warp_size == 64);
  CHECK(!c.cache.enabled);
  REQUIRE(c.workload_spec.has_value());
  CHECK(*c.workload_spec == "streaming:threads=64");
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("serialize_config round-trips") {
  RunConfig c;
  c.sm.simd_width = 16;
  c.sm.dwr_enabled = true;
  c.sm.max_warp_size = 32;
  c.sm.deadlock_release = false;
  c.cache.enabled = false;
  c.cache.miss_latency = 123;
  c.ilt.sets = 2;
  c.ilt.ways = 4;
  c.workload_spec = "divergent:granularity=16";
  c.launch_blocks = 3;
  c.seed = 99;

  RunConfig d = parse_config_text(serialize_config(c));
  CHECK(serialize_config(d) == serialize_config(c));
  CHECK(d.sm.max_warp_size == 32);
  CHECK(!d.sm.deadlock_release);
  CHECK(d.cache.miss_latency == 123);
  CHECK(d.ilt.ways == 4);
  CHECK(d.launch_blocks == 3);
}

TEST_CASE("config errors") {
  RunConfig c;
  CHECK_THROWS_AS(apply_config_value(c, "sm.simd_width", "eight"), ConfigError);
  CHECK_THROWS_AS(apply_config_value(c, "sm.dwr", "48"), ConfigError);
  CHECK_THROWS_AS(apply_config_value(c, "no.such_key", "1"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("keyvalue\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[sm\nx = 1\n"), ConfigError);

  SUBCASE("validation") {
    RunConfig v;
    CHECK_THROWS_AS(v.validate(), ConfigError);  // neither kernel nor workload
    v.workload_spec = "streaming";
    v.kernel_path = "also.krn";
    CHECK_THROWS_AS(v.validate(), ConfigError);  // both
    v.kernel_path.reset();
    v.sm.warp_size = 12;  // not a multiple of simd width
    CHECK_THROWS_AS(v.validate(), ConfigError);
    v.sm.warp_size = 32;
    CHECK_NOTHROW(v.validate());
    v.kernel_path = "/nonexistent/kernel.krn";
    v.workload_spec.reset();
    CHECK_THROWS_AS(v.validate(), ConfigError);  // missing file
  }
}

TEST_CASE("run() on a kernel file") {
  auto path = write_temp("dwrsim_test_kernel.krn",
                         "mov r1, %tid\nimul r2, r1, 4\nld.global r3, [r2+0]\n"
                         "st.global [r2+256], r3\nexit\n");
  RunConfig c;
  c.kernel_path = path.string();
  c.launch_threads = 64;
  c.cache.enabled = false;
  auto s = run(c);
  CHECK(s.scalar_mem_ops == 128);
  // two 32-thread warps, each load/store spanning two 64-byte strides
  CHECK(s.offchip_requests == 8);
  std::filesystem::remove(path);
}

TEST_CASE("sweep grid parsing: single values configure, lists become axes") {
  auto path = write_temp("dwrsim_test_grid.txt", R"(
run.workload = streaming:threads=64
cache.enabled = off
sm.warp_size = 8, 16, 32, 64
sm.dwr = off
baseline = sm.warp_size=8
)");
  SweepGrid grid = parse_sweep_grid_file(path.string());
  REQUIRE(grid.axes.size() == 1);
  CHECK(grid.axes[0].first == "sm.warp_size");
  CHECK(grid.axes[0].second == std::vector<std::string>{"8", "16", "32", "64"});
  CHECK(grid.baseline.at("sm.warp_size") == "8");
  CHECK(!grid.base_config.cache.enabled);

  SweepResult result = run_sweep(grid);
  REQUIRE(result.rows.size() == 4);
  CHECK(result.baseline_index == 0);
  for (const auto& row : result.rows) CHECK(row.ok);

  // coalescing rate is nondecreasing in warp size on the streaming kernel
  for (size_t i = 1; i < result.rows.size(); i++) {
    double prev = static_cast<double>(result.rows[i - 1].stats.scalar_mem_ops) /
                  result.rows[i - 1].stats.offchip_requests;
    double cur = static_cast<double>(result.rows[i].stats.scalar_mem_ops) /
                 result.rows[i].stats.offchip_requests;
    CHECK(cur >= prev);
  }

  // byte-identical reruns
  CHECK(sweep_to_csv(run_sweep(grid)) == sweep_to_csv(result));
  CHECK(sweep_to_json(run_sweep(grid)) == sweep_to_json(result));
  std::filesystem::remove(path);
}

TEST_CASE("sweep rows record per-row errors and keep going") {
  auto path = write_temp("dwrsim_test_grid_err.txt", R"(
run.workload = streaming:threads=64
sm.simd_width = 8
sm.warp_size = 8, 12, 32
)");
  SweepGrid grid = parse_sweep_grid_file(path.string());
  SweepResult result = run_sweep(grid);
  REQUIRE(result.rows.size() == 3);
  CHECK(result.rows[0].ok);
  CHECK(!result.rows[1].ok);  // warp 12 is not a multiple of simd 8
  CHECK(!result.rows[1].error.empty());
  CHECK(result.rows[2].ok);

  std::string csv = sweep_to_csv(result);
  CHECK(csv.find("multiple of") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("cartesian sweeps iterate the last axis fastest") {
  auto path = write_temp("dwrsim_test_grid_cart.txt", R"(
run.workload = streaming:threads=32
cache.enabled = off
sm.warp_size = 8, 16
sm.simd_width = 4, 8
)");
  SweepGrid grid = parse_sweep_grid_file(path.string());
  SweepResult result = run_sweep(grid);
  REQUIRE(result.rows.size() == 4);
  CHECK(result.rows[0].point.at("sm.warp_size") == "8");
  CHECK(result.rows[0].point.at("sm.simd_width") == "4");
  CHECK(result.rows[1].point.at("sm.warp_size") == "8");
  CHECK(result.rows[1].point.at("sm.simd_width") == "8");
  CHECK(result.rows[2].point.at("sm.warp_size") == "16");
  std::filesystem::remove(path);
}

TEST_CASE("snapshot json carries a schema version and derived metrics") {
  RunConfig c;
  c.workload_spec = "streaming:threads=64";
  c.cache.enabled = false;
  auto s = run(c);
  std::string json = snapshot_to_json(s, c);
  CHECK(json.find("\"schema_version\"") != std::string::npos);
  CHECK(json.find("\"coalescing_rate\"") != std::string::npos);
  CHECK(json.find("\"lat\"") != std::string::npos);
}
