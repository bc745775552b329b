#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dwrsim/config.hpp"
#include "dwrsim/core.hpp"
#include "dwrsim/metrics.hpp"
#include "dwrsim/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitWatchdog = 3;

struct RunFlags {
  std::string config_file;
  std::string kernel;
  std::string workload;
  std::optional<int> warp_size;
  std::optional<int> simd_width;
  std::string dwr;
  std::optional<int> cache_kb;
  std::optional<int> cache_sets;
  std::optional<int> cache_ways;
  bool cache_off = false;
  std::optional<int> ilt_sets;
  std::optional<int> ilt_ways;
  std::optional<int> mem_latency;
  std::optional<int> threads;
  std::optional<int> blocks;
  std::string out;
};

dwrsim::RunConfig build_config(const RunFlags& f) {
  dwrsim::RunConfig config;
  if (!f.config_file.empty()) config = dwrsim::parse_config_file(f.config_file);
  if (!f.kernel.empty()) {
    config.kernel_path = f.kernel;
    config.workload_spec.reset();
  }
  if (!f.workload.empty()) {
    config.workload_spec = f.workload;
    config.kernel_path.reset();
  }
  if (f.warp_size) config.sm.warp_size = *f.warp_size;
  if (f.simd_width) config.sm.simd_width = *f.simd_width;
  if (!f.dwr.empty()) dwrsim::apply_config_value(config, "sm.dwr", f.dwr);
  if (f.cache_off) config.cache.enabled = false;
  if (f.cache_sets) config.cache.sets = *f.cache_sets;
  if (f.cache_ways) config.cache.ways = *f.cache_ways;
  if (f.cache_kb) {
    // keep associativity, scale sets to reach the requested capacity
    int blocks = *f.cache_kb * 1024 / config.cache.block_bytes;
    if (blocks <= 0 || blocks % config.cache.ways != 0)
      throw dwrsim::ConfigError("--cache-kb not divisible by ways*64B");
    config.cache.sets = blocks / config.cache.ways;
  }
  if (f.ilt_sets) config.ilt.sets = *f.ilt_sets;
  if (f.ilt_ways) config.ilt.ways = *f.ilt_ways;
  if (f.mem_latency) config.cache.miss_latency = *f.mem_latency;
  if (f.threads) config.launch_threads = *f.threads;
  if (f.blocks) config.launch_blocks = *f.blocks;
  if (!f.out.empty()) config.out_path = f.out;
  return config;
}

void print_summary(const dwrsim::StatsSnapshot& stats) {
  for (const auto& [key, value] : stats.to_fields())
    std::cout << key << "=" << value << "\n";
  auto rate = dwrsim::coalescing_rate(stats);
  std::cout << "coalescing_rate=" << (rate ? std::to_string(*rate) : "n/a") << "\n";
  std::cout << "idle_share=" << dwrsim::idle_share(stats) << "\n";
  std::cout << "ipc=" << dwrsim::ipc(stats) << "\n";
}

int do_run(const RunFlags& flags) {
  dwrsim::RunConfig config = build_config(flags);
  dwrsim::StatsSnapshot stats = dwrsim::run(config);
  print_summary(stats);
  if (!config.out_path.empty()) {
    std::ofstream out(config.out_path);
    if (!out) throw dwrsim::ConfigError("cannot write " + config.out_path);
    out << dwrsim::snapshot_to_json(stats, config);
  }
  return kExitOk;
}

int do_sweep(const std::string& grid_file, const std::string& out_dir) {
  dwrsim::SweepGrid grid = dwrsim::parse_sweep_grid_file(grid_file);
  dwrsim::SweepResult result = dwrsim::run_sweep(grid);

  std::filesystem::create_directories(out_dir);
  {
    std::ofstream csv(out_dir + "/results.csv");
    if (!csv) throw dwrsim::ConfigError("cannot write " + out_dir + "/results.csv");
    csv << dwrsim::sweep_to_csv(result);
  }
  {
    std::ofstream json(out_dir + "/results.json");
    if (!json) throw dwrsim::ConfigError("cannot write " + out_dir + "/results.json");
    json << dwrsim::sweep_to_json(result);
  }
  int failures = 0;
  for (const auto& row : result.rows)
    if (!row.ok) failures++;
  std::cout << result.rows.size() << " runs, " << failures << " failed, results in " << out_dir
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SIMT core simulator with dynamic warp resizing"};
  app.require_subcommand(1);

  RunFlags flags;
  CLI::App* run_cmd = app.add_subcommand("run", "simulate one configuration");
  run_cmd->add_option("--config", flags.config_file, "config file (key=value with sections)");
  run_cmd->add_option("--kernel", flags.kernel, "kernel text file");
  run_cmd->add_option("--workload", flags.workload,
                      "workload spec, e.g. streaming:threads=64,blocks=2");
  run_cmd->add_option("--warp-size", flags.warp_size, "threads per warp (fixed mode)");
  run_cmd->add_option("--simd-width", flags.simd_width, "SIMD lanes");
  run_cmd->add_option("--dwr", flags.dwr, "off | 16 | 32 | 64");
  run_cmd->add_option("--cache-kb", flags.cache_kb, "L1 capacity in KB");
  run_cmd->add_option("--cache-sets", flags.cache_sets, "L1 sets");
  run_cmd->add_option("--cache-ways", flags.cache_ways, "L1 ways");
  std::string cache_mode;
  run_cmd->add_option("--cache", cache_mode, "'off' disables the L1 cache");
  run_cmd->add_option("--ilt-sets", flags.ilt_sets, "ILT sets");
  run_cmd->add_option("--ilt-ways", flags.ilt_ways, "ILT ways");
  run_cmd->add_option("--mem-latency", flags.mem_latency, "off-chip latency in cycles");
  run_cmd->add_option("--threads", flags.threads, "block size for kernel-file runs");
  run_cmd->add_option("--blocks", flags.blocks, "grid size for kernel-file runs");
  run_cmd->add_option("--out", flags.out, "write JSON snapshot here");

  std::string grid_file, out_dir = "sweep_out";
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a design-space sweep");
  sweep_cmd->add_option("--grid", grid_file, "grid file")->required();
  sweep_cmd->add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!cache_mode.empty()) {
      if (cache_mode != "off") throw dwrsim::ConfigError("--cache only accepts 'off'");
      flags.cache_off = true;
    }
    if (run_cmd->parsed()) return do_run(flags);
    if (sweep_cmd->parsed()) return do_sweep(grid_file, out_dir);
  } catch (const dwrsim::WatchdogExceeded& e) {
    std::cerr << "hang: " << e.what() << "\n";
    return kExitWatchdog;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitOk;
}
