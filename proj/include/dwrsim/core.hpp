#ifndef DWRSIM_CORE_HPP
#define DWRSIM_CORE_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "dwrsim/dwr.hpp"
#include "dwrsim/isa.hpp"
#include "dwrsim/memory.hpp"
#include "dwrsim/stats.hpp"

namespace dwrsim {

struct SmConfig {
  int simd_width = 8;
  int warp_size = 32;          // fixed mode
  bool dwr_enabled = false;
  int max_warp_size = 64;      // DWR mode; sub-warps are simd_width wide
  int pipeline_depth = 24;
  int threads_per_sm = 1024;
  uint64_t barrier_latency = 24;  // per bar.synch_partner execution
  bool deadlock_release = true;   // the release-on-blocked/exit rule
  uint64_t watchdog_cycles = 10'000'000;

  // schedulable-unit width in threads
  int unit_width() const { return dwr_enabled ? simd_width : warp_size; }
  // partner sub-warps per group
  int group_span() const { return dwr_enabled ? max_warp_size / simd_width : 1; }
};

class SimulatorError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class WatchdogExceeded : public std::runtime_error {
 public:
  explicit WatchdogExceeded(uint64_t cycles)
      : std::runtime_error("watchdog exceeded after " + std::to_string(cycles) + " cycles") {}
};

struct ThreadContext {
  std::array<int32_t, 16> regs{};
  std::array<bool, 4> preds{};
  int32_t tid = 0;
  int32_t ctaid = 0;
  bool exited = false;
};

struct ReconvergenceEntry {
  int pc = 0;
  int rpc = -1;           // -1 / program size: reconverge at exit
  uint64_t mask = 0;      // bit per thread in the unit
};

enum class Status {
  Ready,
  WaitBarrierPartner,
  WaitBarrierBlock,
  WaitMem,
  CombineReady,
  Exited,
};

struct SubWarp {
  int id = 0;              // unit id within the SM
  int block_slot = 0;      // index into resident blocks
  int index_in_block = 0;  // sub-warp/warp index within its block
  int width = 0;           // threads
  int base_thread = 0;     // first thread's index into the SM thread array
  std::vector<ReconvergenceEntry> stack;
  Status status = Status::Ready;
  uint64_t wait_until = 0;       // earliest issue cycle (barrier stall)
  uint64_t mem_complete = 0;     // wake cycle while WaitMem
  int combine_token = -1;        // release-event id; members issue as one warp
  bool launched = false;

  bool exited() const { return status == Status::Exited; }
  const ReconvergenceEntry& top() const { return stack.back(); }
  ReconvergenceEntry& top() { return stack.back(); }
};

// One observed memory access, for functional-equivalence checks.
struct MemAccessRecord {
  int32_t global_tid;
  Space space;
  uint64_t addr;
  int size;
  int32_t value;
  bool is_store;

  auto operator<=>(const MemAccessRecord&) const = default;
};

// One streaming multiprocessor driven cycle by cycle. Owns all its state;
// instances are independent.
class Simulator {
 public:
  Simulator(Program program, KernelLaunch launch, SmConfig sm_config,
            CacheConfig cache_config, IltConfig ilt_config);

  // Runs to completion (all threads exited, pipeline drained). Throws
  // WatchdogExceeded on hang.
  StatsSnapshot run();

  void step_cycle();
  bool finished() const;

  void set_record_accesses(bool on) { record_accesses_ = on; }
  const std::vector<MemAccessRecord>& access_log() const { return access_log_; }

  const StatsSnapshot& stats() const { return stats_; }
  uint64_t cycle() const { return cycle_; }
  const std::vector<SubWarp>& units() const { return units_; }
  const Ilt& ilt() const { return ilt_; }

 private:
  struct ResidentBlock {
    int ctaid = 0;
    bool launched = false;
    std::vector<int> unit_ids;
    std::vector<PstEntry> pst;  // one entry per partner group
    std::unordered_map<uint64_t, uint8_t> shared_mem;
  };

  void launch_block(int slot, int ctaid);
  void maybe_launch_blocks();
  void release_block_barriers();
  void deadlock_release_scan();
  // round-robin pick; returns unit id or -1
  int schedule_next();
  void issue(int unit_id);
  void execute_instruction(const std::vector<int>& member_ids, const Instruction& instr);
  void handle_branch(SubWarp& unit, const Instruction& instr, uint64_t taken_mask);
  void handle_exit(SubWarp& unit, uint64_t mask);
  void handle_partner_barrier(SubWarp& unit, int pc);
  void release_group(ResidentBlock& block, int group, int release_pc);
  void advance_pc(SubWarp& unit, int next_pc);
  void pop_reconverged(SubWarp& unit);

  int32_t read_operand(const ThreadContext& ctx, const Operand& op) const;
  int32_t load_value(ResidentBlock& block, Space space, uint64_t addr, int size);
  void store_value(ResidentBlock& block, Space space, uint64_t addr, int size, int32_t value);

  uint64_t active_mask(const SubWarp& unit) const;
  bool group_all_combine_ready(const SubWarp& unit, std::vector<int>& members) const;
  std::vector<int> group_members(const SubWarp& unit) const;  // live + unlaunched excluded

  Program program_;
  KernelLaunch launch_;
  SmConfig sm_;
  CacheConfig cache_config_;
  MemorySystem memory_;
  Ilt ilt_;

  std::vector<ThreadContext> threads_;
  std::vector<SubWarp> units_;
  std::vector<ResidentBlock> blocks_;
  std::unordered_map<uint64_t, uint8_t> global_mem_;

  uint64_t cycle_ = 0;
  uint64_t front_end_busy_ = 0;   // remaining occupancy cycles of current issue
  uint64_t last_retire_ = 0;      // pipeline drain horizon
  int last_issued_ = -1;
  int next_block_ = 0;            // next ctaid to launch
  int next_combine_token_ = 0;
  bool record_accesses_ = false;
  std::vector<MemAccessRecord> access_log_;
  StatsSnapshot stats_;
};

// Runs every thread of a launch independently and returns the access log.
// Ignores all timing and synchronization; valid for race-free kernels.
std::vector<MemAccessRecord> scalar_interpret(const Program& program, const KernelLaunch& launch,
                                              uint64_t max_steps = 1'000'000);

}  // namespace dwrsim

#endif
