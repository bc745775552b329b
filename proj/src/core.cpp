#include "dwrsim/core.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

namespace dwrsim {

namespace {

uint64_t full_mask(int width) {
  return width >= 64 ? ~0ull : (1ull << width) - 1;
}

int popcount(uint64_t m) { return std::popcount(m); }

bool compare(CmpOp cmp, int32_t a, int32_t b) {
  switch (cmp) {
    case CmpOp::Eq: return a == b;
    case CmpOp::Ne: return a != b;
    case CmpOp::Lt: return a < b;
    case CmpOp::Le: return a <= b;
    case CmpOp::Gt: return a > b;
    case CmpOp::Ge: return a >= b;
  }
  return false;
}

int32_t alu_eval(AluFn fn, int32_t a, int32_t b) {
  switch (fn) {
    case AluFn::Nop: return 0;
    case AluFn::And: return a & b;
    case AluFn::Or: return a | b;
    case AluFn::Shr: return static_cast<int32_t>(static_cast<uint32_t>(a) >> (b & 31));
    case AluFn::Shl: return static_cast<int32_t>(static_cast<uint32_t>(a) << (b & 31));
    case AluFn::Sub: return a - b;
  }
  return 0;
}

// byte-granular backing store, zero-initialized
int32_t mem_load(const std::unordered_map<uint64_t, uint8_t>& mem, uint64_t addr, int size) {
  uint32_t v = 0;
  for (int i = 0; i < size; i++) {
    auto it = mem.find(addr + i);
    uint8_t byte = it == mem.end() ? 0 : it->second;
    v |= static_cast<uint32_t>(byte) << (8 * i);
  }
  return static_cast<int32_t>(v);
}

void mem_store(std::unordered_map<uint64_t, uint8_t>& mem, uint64_t addr, int size, int32_t value) {
  uint32_t v = static_cast<uint32_t>(value);
  for (int i = 0; i < size; i++) mem[addr + i] = static_cast<uint8_t>(v >> (8 * i));
}

}  // namespace

// ---------------------------------------------------------------------------
// Simulator

Simulator::Simulator(Program program, KernelLaunch launch, SmConfig sm_config,
                     CacheConfig cache_config, IltConfig ilt_config)
    : program_(std::move(program)),
      launch_(std::move(launch)),
      sm_(sm_config),
      cache_config_(cache_config),
      memory_(cache_config),
      ilt_(ilt_config) {
  if (launch_.block_size <= 0) throw SimulatorError("block_size must be positive");
  if (launch_.block_size > sm_.threads_per_sm)
    throw SimulatorError("block_size exceeds threads per SM");
  if (sm_.simd_width <= 0) throw SimulatorError("simd_width must be positive");
  if (sm_.dwr_enabled) {
    if (sm_.max_warp_size % sm_.simd_width != 0)
      throw SimulatorError("max_warp_size must be a multiple of simd_width");
  } else if (sm_.warp_size % sm_.simd_width != 0) {
    throw SimulatorError("warp_size must be a multiple of simd_width");
  }
  if (sm_.unit_width() > 64) throw SimulatorError("unit width above 64 threads unsupported");

  const int slots = std::min(std::max(sm_.threads_per_sm / launch_.block_size, 1),
                             launch_.grid_size);
  const int uw = sm_.unit_width();
  const int units_per_block = (launch_.block_size + uw - 1) / uw;

  threads_.resize(static_cast<size_t>(slots) * launch_.block_size);
  blocks_.resize(slots);
  for (int s = 0; s < slots; s++) {
    ResidentBlock& block = blocks_[s];
    const int groups = (units_per_block + sm_.group_span() - 1) / sm_.group_span();
    block.pst.resize(groups);
    for (int u = 0; u < units_per_block; u++) {
      SubWarp unit;
      unit.id = static_cast<int>(units_.size());
      unit.block_slot = s;
      unit.index_in_block = u;
      unit.base_thread = s * launch_.block_size + u * uw;
      unit.width = std::min(uw, launch_.block_size - u * uw);
      unit.status = Status::Exited;
      block.unit_ids.push_back(unit.id);
      units_.push_back(std::move(unit));
    }
  }

  for (const auto& instr : program_.instructions)
    if (instr.opcode == Opcode::BarSynchPartner) stats_.lat_total++;
}

void Simulator::launch_block(int slot, int ctaid) {
  ResidentBlock& block = blocks_[slot];
  block.ctaid = ctaid;
  block.launched = true;
  block.shared_mem.clear();
  for (auto& entry : block.pst) entry = PstEntry{};
  for (int t = 0; t < launch_.block_size; t++) {
    ThreadContext& ctx = threads_[slot * launch_.block_size + t];
    ctx = ThreadContext{};
    ctx.tid = t;
    ctx.ctaid = ctaid;
  }
  for (int uid : block.unit_ids) {
    SubWarp& unit = units_[uid];
    unit.stack.clear();
    unit.stack.push_back({0, -1, full_mask(unit.width)});
    unit.status = Status::Ready;
    unit.wait_until = 0;
    unit.mem_complete = 0;
    unit.combine_token = -1;
    unit.launched = true;
  }
}

void Simulator::maybe_launch_blocks() {
  for (int s = 0; s < static_cast<int>(blocks_.size()); s++) {
    ResidentBlock& block = blocks_[s];
    bool idle = !block.launched ||
                std::all_of(block.unit_ids.begin(), block.unit_ids.end(),
                            [&](int uid) { return units_[uid].exited(); });
    if (idle && next_block_ < launch_.grid_size) launch_block(s, next_block_++);
  }
}

uint64_t Simulator::active_mask(const SubWarp& unit) const {
  return unit.stack.empty() ? 0 : unit.top().mask;
}

void Simulator::pop_reconverged(SubWarp& unit) {
  while (!unit.stack.empty() && unit.top().rpc >= 0 && unit.top().pc == unit.top().rpc)
    unit.stack.pop_back();
  if (unit.stack.empty()) unit.status = Status::Exited;
}

void Simulator::advance_pc(SubWarp& unit, int next_pc) {
  unit.top().pc = next_pc;
  pop_reconverged(unit);
}

void Simulator::release_block_barriers() {
  for (ResidentBlock& block : blocks_) {
    if (!block.launched) continue;
    bool all_arrived = true;
    bool any_waiting = false;
    for (int uid : block.unit_ids) {
      Status st = units_[uid].status;
      if (st == Status::WaitBarrierBlock)
        any_waiting = true;
      else if (st != Status::Exited)
        all_arrived = false;
    }
    if (!any_waiting || !all_arrived) continue;
    for (int uid : block.unit_ids) {
      SubWarp& unit = units_[uid];
      if (unit.status != Status::WaitBarrierBlock) continue;
      unit.status = Status::Ready;
      advance_pc(unit, unit.top().pc + 1);
    }
  }
}

std::vector<int> Simulator::group_members(const SubWarp& unit) const {
  const ResidentBlock& block = blocks_[unit.block_slot];
  const int span = sm_.group_span();
  const int group = unit.index_in_block / span;
  std::vector<int> out;
  for (int uid : block.unit_ids) {
    const SubWarp& m = units_[uid];
    if (m.index_in_block / span == group) out.push_back(uid);
  }
  return out;
}

void Simulator::release_group(ResidentBlock& block, int group, int /*release_pc*/) {
  PstEntry& entry = block.pst[group];
  const int span = sm_.group_span();

  // waiters standing at entry.pc combine; others proceed alone
  std::vector<int> combiners;
  std::vector<int> released;
  for (int uid : block.unit_ids) {
    SubWarp& m = units_[uid];
    if (m.index_in_block / span != group) continue;
    if (m.status != Status::WaitBarrierPartner) continue;
    released.push_back(uid);
    if (m.top().pc == entry.pc) combiners.push_back(uid);
  }
  int token = combiners.size() >= 2 ? next_combine_token_++ : -1;
  for (int uid : released) {
    SubWarp& m = units_[uid];
    bool combine = token >= 0 &&
                   std::find(combiners.begin(), combiners.end(), uid) != combiners.end();
    advance_pc(m, m.top().pc + 1);
    if (combine && m.status != Status::Exited) {
      m.status = Status::CombineReady;
      m.combine_token = token;
    } else if (m.status != Status::Exited) {
      m.status = Status::Ready;
    }
  }
  entry = PstEntry{};
}

void Simulator::handle_partner_barrier(SubWarp& unit, int pc) {
  unit.wait_until = cycle_ + sm_.barrier_latency;
  if (!sm_.dwr_enabled) {  // plain stall in fixed mode
    advance_pc(unit, pc + 1);
    return;
  }
  if (ilt_.lookup(pc)) {  // exempted: proceed alone
    advance_pc(unit, pc + 1);
    return;
  }

  ResidentBlock& block = blocks_[unit.block_slot];
  const int span = sm_.group_span();
  const int group = unit.index_in_block / span;
  PstEntry& entry = block.pst[group];
  const uint32_t my_bit = 1u << (unit.index_in_block % span);

  // Step 1: PC, lock bit vector, ILT
  bool mismatch = entry.valid && entry.pc != pc;
  if (!entry.valid) {
    entry.valid = true;
    entry.pc = pc;
    entry.lock_vector |= my_bit;
  } else if (entry.pc == pc) {
    entry.lock_vector |= my_bit;
  } else {
    entry.lock_vector |= my_bit;
    if (ilt_.insert(pc)) stats_.lat_ignored = ilt_.distinct_inserted_pcs().size();
  }

  // Step 2: status update. A matching arrival whose lock vector covers all
  // live partners releases the group; a mismatched arrival stays locked (the
  // deadlock-release scan will untangle it).
  bool covered = !mismatch;
  for (int uid : group_members(unit)) {
    const SubWarp& m = units_[uid];
    if (m.exited()) continue;
    if (!(entry.lock_vector & (1u << (m.index_in_block % span)))) covered = false;
  }
  unit.status = Status::WaitBarrierPartner;
  if (covered) {
    release_group(block, group, entry.pc);  // includes this arrival
  } else {
    stats_.partner_barrier_blocks++;
    stats_.blocks_per_barrier_pc[pc]++;
  }
}

void Simulator::deadlock_release_scan() {
  for (ResidentBlock& block : blocks_) {
    if (!block.launched) continue;
    const int span = sm_.group_span();
    for (int group = 0; group < static_cast<int>(block.pst.size()); group++) {
      bool any_waiting = false;
      bool all_blocked = true;
      for (int uid : block.unit_ids) {
        const SubWarp& m = units_[uid];
        if (m.index_in_block / span != group) continue;
        switch (m.status) {
          case Status::WaitBarrierPartner:
            any_waiting = true;
            break;
          case Status::WaitBarrierBlock:
          case Status::Exited:
            break;
          default:
            all_blocked = false;
            break;
        }
      }
      if (!any_waiting || !all_blocked) continue;

      // modal-PC regrouping: waiters sharing the most common barrier PC combine
      std::map<int, int> pc_count;
      for (int uid : block.unit_ids) {
        const SubWarp& m = units_[uid];
        if (m.index_in_block / span != group) continue;
        if (m.status == Status::WaitBarrierPartner) pc_count[m.top().pc]++;
      }
      int modal_pc = -1, best = 0;
      for (const auto& [pc, count] : pc_count)
        if (count > best) {
          best = count;
          modal_pc = pc;
        }
      PstEntry& entry = block.pst[group];
      entry.pc = modal_pc;  // release_group combines the modal-PC waiters
      release_group(block, group, modal_pc);
    }
  }
}

int32_t Simulator::read_operand(const ThreadContext& ctx, const Operand& op) const {
  switch (op.kind) {
    case Operand::Kind::Reg: return ctx.regs[op.value];
    case Operand::Kind::Imm: return op.value;
    case Operand::Kind::Tid: return ctx.tid;
    case Operand::Kind::Ctaid: return ctx.ctaid;
    case Operand::Kind::Ntid: return launch_.block_size;
    case Operand::Kind::None: return 0;
  }
  return 0;
}

int32_t Simulator::load_value(ResidentBlock& block, Space space, uint64_t addr, int size) {
  switch (space) {
    case Space::Param: {
      size_t idx = addr / 4;
      if (idx < launch_.param_values.size()) return launch_.param_values[idx].second;
      return 0;
    }
    case Space::Const:
      return 0;
    case Space::Shared:
      return mem_load(block.shared_mem, addr, size);
    default:
      return mem_load(global_mem_, addr, size);
  }
}

void Simulator::store_value(ResidentBlock& block, Space space, uint64_t addr, int size,
                            int32_t value) {
  if (space == Space::Shared)
    mem_store(block.shared_mem, addr, size, value);
  else if (space == Space::Param || space == Space::Const)
    throw SimulatorError("store to read-only space");
  else
    mem_store(global_mem_, addr, size, value);
}

void Simulator::handle_exit(SubWarp& unit, uint64_t mask) {
  for (int lane = 0; lane < unit.width; lane++)
    if (mask & (1ull << lane)) threads_[unit.base_thread + lane].exited = true;
  for (auto& entry : unit.stack) entry.mask &= ~mask;
  std::erase_if(unit.stack, [](const ReconvergenceEntry& e) { return e.mask == 0; });
  if (unit.stack.empty())
    unit.status = Status::Exited;
  else
    pop_reconverged(unit);
}

void Simulator::handle_branch(SubWarp& unit, const Instruction& instr, uint64_t taken_mask) {
  const int pc = unit.top().pc;
  const uint64_t active = unit.top().mask;
  if (taken_mask == active) {
    advance_pc(unit, instr.target_pc);
    return;
  }
  if (taken_mask == 0) {
    advance_pc(unit, pc + 1);
    return;
  }
  auto it = program_.ipdom_map.find(pc);
  if (it == program_.ipdom_map.end())
    throw SimulatorError("no reconvergence point for branch at pc " + std::to_string(pc));
  const int rpc = it->second;
  unit.top().pc = rpc;  // current entry becomes the reconvergence continuation
  unit.stack.push_back({pc + 1, rpc, active & ~taken_mask});  // fall-through
  unit.stack.push_back({instr.target_pc, rpc, taken_mask});   // taken runs first
  pop_reconverged(unit);
}

void Simulator::execute_instruction(const std::vector<int>& member_ids,
                                    const Instruction& instr) {
  // functional + control effects per member; memory timing spans all members
  std::vector<AccessRequest> accesses;
  int lane_base = 0;

  for (int uid : member_ids) {
    SubWarp& unit = units_[uid];
    ResidentBlock& block = blocks_[unit.block_slot];
    const uint64_t active = active_mask(unit);
    const int pc = unit.top().pc;

    switch (instr.opcode) {
      case Opcode::Alu:
      case Opcode::Mov:
      case Opcode::Iadd:
      case Opcode::Imul:
      case Opcode::Setp:
        for (int lane = 0; lane < unit.width; lane++) {
          if (!(active & (1ull << lane))) continue;
          ThreadContext& ctx = threads_[unit.base_thread + lane];
          int32_t a = read_operand(ctx, instr.src0);
          int32_t b = read_operand(ctx, instr.src1);
          switch (instr.opcode) {
            case Opcode::Alu:
              if (instr.alu_fn != AluFn::Nop) ctx.regs[instr.dst] = alu_eval(instr.alu_fn, a, b);
              break;
            case Opcode::Mov: ctx.regs[instr.dst] = a; break;
            case Opcode::Iadd: ctx.regs[instr.dst] = a + b; break;
            case Opcode::Imul: ctx.regs[instr.dst] = a * b; break;
            case Opcode::Setp: ctx.preds[instr.pdst] = compare(instr.cmp, a, b); break;
            default: break;
          }
        }
        advance_pc(unit, pc + 1);
        break;

      case Opcode::Bra:
        advance_pc(unit, instr.target_pc);
        break;

      case Opcode::BraPred: {
        uint64_t taken = 0;
        for (int lane = 0; lane < unit.width; lane++) {
          if (!(active & (1ull << lane))) continue;
          if (threads_[unit.base_thread + lane].preds[instr.pred]) taken |= 1ull << lane;
        }
        handle_branch(unit, instr, taken);
        break;
      }

      case Opcode::Ld:
      case Opcode::St: {
        const bool is_store = instr.opcode == Opcode::St;
        for (int lane = 0; lane < unit.width; lane++) {
          if (!(active & (1ull << lane))) continue;
          ThreadContext& ctx = threads_[unit.base_thread + lane];
          uint64_t addr =
              static_cast<uint32_t>(ctx.regs[instr.addr_reg] + instr.addr_imm);
          int32_t value;
          uint64_t backing_addr = addr;
          if (instr.space == Space::Local)
            backing_addr |= static_cast<uint64_t>(block.ctaid * launch_.block_size + ctx.tid)
                            << 40;
          if (is_store) {
            value = ctx.regs[instr.data_reg];
            store_value(block, instr.space, backing_addr, instr.access_size, value);
          } else {
            value = load_value(block, instr.space, backing_addr, instr.access_size);
            ctx.regs[instr.dst] = value;
          }
          if (record_accesses_)
            access_log_.push_back({block.ctaid * launch_.block_size + ctx.tid, instr.space,
                                   addr, instr.access_size, value, is_store});
          if (classify_lat(instr))
            accesses.push_back({lane_base + lane, instr.space, addr, instr.access_size,
                                is_store});
        }
        if (classify_lat(instr)) stats_.scalar_mem_ops += popcount(active);
        advance_pc(unit, pc + 1);
        break;
      }

      case Opcode::BarSync:
        unit.status = Status::WaitBarrierBlock;  // released by the block scan
        break;

      case Opcode::BarSynchPartner:
        handle_partner_barrier(unit, pc);
        break;

      case Opcode::Exit:
        handle_exit(unit, active);
        break;
    }
    lane_base += unit.width;
  }

  // coalesce across the full (possibly combined) warp; the warp waits for
  // the slowest transaction (memory divergence)
  if (!accesses.empty()) {
    auto txns = coalesce(accesses);
    uint64_t complete = cycle_;
    for (auto& txn : txns) complete = std::max(complete, memory_.access(txn, cycle_));
    if (instr.opcode == Opcode::Ld) {
      for (int uid : member_ids) {
        SubWarp& unit = units_[uid];
        if (unit.exited()) continue;
        unit.status = Status::WaitMem;
        unit.mem_complete = complete;
      }
    }
  }
  stats_.transactions = memory_.transaction_count();
  stats_.offchip_requests = memory_.offchip_requests();
}

bool Simulator::group_all_combine_ready(const SubWarp& unit, std::vector<int>& members) const {
  members.clear();
  const int token = unit.combine_token;
  for (const SubWarp& m : units_) {
    if (m.combine_token != token) continue;
    if (m.status != Status::CombineReady || m.wait_until > cycle_) return false;
    members.push_back(m.id);
  }
  return !members.empty();
}

int Simulator::schedule_next() {
  const int n = static_cast<int>(units_.size());
  for (int i = 1; i <= n; i++) {
    int uid = (last_issued_ + i) % n;
    const SubWarp& unit = units_[uid];
    if (!unit.launched || unit.exited()) continue;
    if (unit.wait_until > cycle_) continue;
    if (unit.status == Status::Ready) return uid;
    if (unit.status == Status::CombineReady) {
      std::vector<int> members;
      if (group_all_combine_ready(unit, members)) return uid;
    }
  }
  return -1;
}

void Simulator::issue(int unit_id) {
  SubWarp& first = units_[unit_id];
  std::vector<int> members{unit_id};
  if (first.status == Status::CombineReady) {
    group_all_combine_ready(first, members);
    // combined members must sit at one PC (sub-warp combiner contract)
    const int pc = units_[members.front()].top().pc;
    for (int uid : members)
      if (units_[uid].top().pc != pc)
        throw SimulatorError("combined sub-warps at differing PCs");
    for (int uid : members) {
      units_[uid].status = Status::Ready;
      units_[uid].combine_token = -1;
    }
  }

  int total_active = 0;
  for (int uid : members) total_active += popcount(active_mask(units_[uid]));
  const int pc = first.top().pc;
  if (pc < 0 || pc >= program_.size())
    throw SimulatorError("invalid PC " + std::to_string(pc));
  const Instruction& instr = program_.instructions[pc];

  int occupancy = std::max(1, (total_active + sm_.simd_width - 1) / sm_.simd_width);
  front_end_busy_ = occupancy - 1;

  stats_.issued_warp_insns++;
  stats_.issued_scalar_ops += total_active;
  for (int uid : members) stats_.issued_lane_slots += units_[uid].width;
  if (instr.opcode != Opcode::Exit)
    last_retire_ = std::max(last_retire_, cycle_ + sm_.pipeline_depth);

  execute_instruction(members, instr);
  last_issued_ = unit_id;
}

void Simulator::step_cycle() {
  maybe_launch_blocks();

  for (SubWarp& unit : units_)
    if (unit.launched && unit.status == Status::WaitMem && unit.mem_complete <= cycle_)
      unit.status = Status::Ready;

  release_block_barriers();
  if (sm_.dwr_enabled && sm_.deadlock_release) deadlock_release_scan();

  if (front_end_busy_ > 0) {
    front_end_busy_--;
    stats_.busy_cycles++;
  } else {
    int uid = schedule_next();
    if (uid >= 0) {
      issue(uid);
      stats_.busy_cycles++;
    } else {
      stats_.idle_cycles++;
    }
  }

  cycle_++;
  stats_.total_cycles = cycle_;
}

bool Simulator::finished() const {
  if (next_block_ < launch_.grid_size) return false;
  for (const SubWarp& unit : units_)
    if (unit.launched && !unit.exited()) return false;
  return front_end_busy_ == 0 && cycle_ > last_retire_;
}

StatsSnapshot Simulator::run() {
  maybe_launch_blocks();
  while (!finished()) {
    if (cycle_ >= sm_.watchdog_cycles) throw WatchdogExceeded(cycle_);
    step_cycle();
  }
  stats_.lat_ignored = ilt_.distinct_inserted_pcs().size();
  stats_.ilt_inserted_pcs = ilt_.distinct_inserted_pcs();
  return stats_;
}

// ---------------------------------------------------------------------------
// Scalar oracle: every thread independently, no timing, no synchronization.

std::vector<MemAccessRecord> scalar_interpret(const Program& program, const KernelLaunch& launch,
                                              uint64_t max_steps) {
  std::vector<MemAccessRecord> log;
  for (int ctaid = 0; ctaid < launch.grid_size; ctaid++) {
    for (int tid = 0; tid < launch.block_size; tid++) {
      std::array<int32_t, 16> regs{};
      std::array<bool, 4> preds{};
      std::unordered_map<uint64_t, uint8_t> mem;     // global+local, thread-private view
      std::unordered_map<uint64_t, uint8_t> shared;  // thread-private view

      auto read = [&](const Operand& op) -> int32_t {
        switch (op.kind) {
          case Operand::Kind::Reg: return regs[op.value];
          case Operand::Kind::Imm: return op.value;
          case Operand::Kind::Tid: return tid;
          case Operand::Kind::Ctaid: return ctaid;
          case Operand::Kind::Ntid: return launch.block_size;
          default: return 0;
        }
      };

      int pc = 0;
      uint64_t steps = 0;
      bool running = true;
      while (running) {
        if (pc < 0 || pc >= program.size())
          throw SimulatorError("scalar interpreter: pc out of range");
        if (++steps > max_steps) throw SimulatorError("scalar interpreter: step bound exceeded");
        const Instruction& i = program.instructions[pc];
        switch (i.opcode) {
          case Opcode::Alu:
            if (i.alu_fn != AluFn::Nop) regs[i.dst] = alu_eval(i.alu_fn, read(i.src0), read(i.src1));
            pc++;
            break;
          case Opcode::Mov: regs[i.dst] = read(i.src0); pc++; break;
          case Opcode::Iadd: regs[i.dst] = read(i.src0) + read(i.src1); pc++; break;
          case Opcode::Imul: regs[i.dst] = read(i.src0) * read(i.src1); pc++; break;
          case Opcode::Setp: preds[i.pdst] = compare(i.cmp, read(i.src0), read(i.src1)); pc++; break;
          case Opcode::Bra: pc = i.target_pc; break;
          case Opcode::BraPred: pc = preds[i.pred] ? i.target_pc : pc + 1; break;
          case Opcode::Ld:
          case Opcode::St: {
            const bool is_store = i.opcode == Opcode::St;
            uint64_t addr = static_cast<uint32_t>(regs[i.addr_reg] + i.addr_imm);
            int32_t value = 0;
            auto& backing = i.space == Space::Shared ? shared : mem;
            uint64_t key = addr;
            if (i.space == Space::Local)
              key |= static_cast<uint64_t>(ctaid * launch.block_size + tid) << 40;
            if (is_store) {
              value = regs[i.data_reg];
              if (i.space == Space::Param || i.space == Space::Const)
                throw SimulatorError("store to read-only space");
              mem_store(backing, key, i.access_size, value);
            } else if (i.space == Space::Param) {
              size_t idx = addr / 4;
              value = idx < launch.param_values.size() ? launch.param_values[idx].second : 0;
              regs[i.dst] = value;
            } else if (i.space == Space::Const) {
              value = 0;
              regs[i.dst] = value;
            } else {
              value = mem_load(backing, key, i.access_size);
              regs[i.dst] = value;
            }
            log.push_back({ctaid * launch.block_size + tid, i.space, addr, i.access_size,
                           value, is_store});
            pc++;
            break;
          }
          case Opcode::BarSync:
          case Opcode::BarSynchPartner:
            pc++;
            break;
          case Opcode::Exit:
            running = false;
            break;
        }
      }
    }
  }
  return log;
}

}  // namespace dwrsim
