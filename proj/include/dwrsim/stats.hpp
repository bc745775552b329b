#ifndef DWRSIM_STATS_HPP
#define DWRSIM_STATS_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>

namespace dwrsim {

// Raw counters of one simulation run; every reported metric derives from these.
struct StatsSnapshot {
  std::string kernel_name;

  uint64_t total_cycles = 0;
  uint64_t idle_cycles = 0;
  uint64_t busy_cycles = 0;            // front-end occupied (issue + multi-cycle occupancy)
  uint64_t issued_warp_insns = 0;      // schedulable-unit issues (combined warp counts once)
  uint64_t issued_scalar_ops = 0;      // active lanes summed over issued instructions
  uint64_t issued_lane_slots = 0;      // issue width summed over issued instructions
  uint64_t scalar_mem_ops = 0;         // active lanes of global/local/param ld/st
  uint64_t transactions = 0;
  uint64_t offchip_requests = 0;
  uint64_t lat_total = 0;              // static LAT barriers in the executed program
  uint64_t lat_ignored = 0;            // distinct barrier PCs inserted into the ILT
  uint64_t partner_barrier_blocks = 0; // times a sub-warp was locked at a partner barrier

  std::map<int, uint64_t> blocks_per_barrier_pc;  // partner-barrier pc -> lock events
  std::set<int> ilt_inserted_pcs;                 // barrier pcs ever placed in the ILT

  std::map<std::string, std::string> to_fields() const;
};

}  // namespace dwrsim

#endif
