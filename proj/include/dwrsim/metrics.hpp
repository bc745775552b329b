#ifndef DWRSIM_METRICS_HPP
#define DWRSIM_METRICS_HPP

#include <optional>

#include "dwrsim/dwr.hpp"
#include "dwrsim/stats.hpp"

namespace dwrsim {

// scalar memory ops per off-chip request; empty when nothing went off-chip
std::optional<double> coalescing_rate(const StatsSnapshot& s);

double idle_share(const StatsSnapshot& s);

// scalar (per-lane) operations per cycle
double ipc(const StatsSnapshot& s);
// schedulable-unit instructions per cycle
double warp_ipc(const StatsSnapshot& s);
// mean active-lane fraction over issued instructions
double activity_factor(const StatsSnapshot& s);

struct StorageOverhead {
  uint64_t pst_bytes = 0;
  uint64_t ilt_bytes = 0;
};

StorageOverhead storage_overhead(int groups, int members_per_group, int ilt_sets, int ilt_ways);

}  // namespace dwrsim

#endif
