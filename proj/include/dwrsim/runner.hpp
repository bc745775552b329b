#ifndef DWRSIM_RUNNER_HPP
#define DWRSIM_RUNNER_HPP

#include <map>
#include <string>
#include <vector>

#include "dwrsim/config.hpp"
#include "dwrsim/stats.hpp"

namespace dwrsim {

// Runs one configuration to completion. Throws ConfigError / WatchdogExceeded.
StatsSnapshot run(const RunConfig& config);

struct SweepGrid {
  // key -> candidate values, in file order (cartesian product, last key fastest)
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  // selects the normalization baseline row by key=value match; empty -> none
  std::map<std::string, std::string> baseline;
  RunConfig base_config;
};

struct SweepRow {
  int index = 0;
  std::map<std::string, std::string> point;  // axis key -> chosen value
  StatsSnapshot stats;
  bool ok = false;
  std::string error;
};

struct SweepResult {
  SweepGrid grid;
  std::vector<SweepRow> rows;
  int baseline_index = -1;
};

SweepGrid parse_sweep_grid_file(const std::string& path);
SweepResult run_sweep(const SweepGrid& grid);

std::string sweep_to_csv(const SweepResult& result);
std::string sweep_to_json(const SweepResult& result);
std::string snapshot_to_json(const StatsSnapshot& stats, const RunConfig& config);

}  // namespace dwrsim

#endif
