#include "dwrsim/cfg.hpp"

#include <algorithm>
#include <set>

namespace dwrsim {

Cfg build_cfg(const std::vector<Instruction>& instructions) {
  Cfg cfg;
  const int n = static_cast<int>(instructions.size());

  std::set<int> leaders;
  leaders.insert(0);
  for (int pc = 0; pc < n; pc++) {
    const Instruction& i = instructions[pc];
    if (i.opcode == Opcode::Bra || i.opcode == Opcode::BraPred) {
      leaders.insert(i.target_pc);
      if (pc + 1 < n) leaders.insert(pc + 1);
    } else if (i.opcode == Opcode::Exit) {
      if (pc + 1 < n) leaders.insert(pc + 1);
    }
  }

  std::vector<int> block_of(n, -1);
  for (auto it = leaders.begin(); it != leaders.end(); ++it) {
    int first = *it;
    auto next = std::next(it);
    int last = (next == leaders.end() ? n : *next) - 1;
    int id = static_cast<int>(cfg.blocks.size());
    cfg.blocks.push_back({first, last});
    for (int pc = first; pc <= last; pc++) block_of[pc] = id;
  }

  const int exit_node = static_cast<int>(cfg.blocks.size());
  cfg.succs.assign(cfg.blocks.size(), {});
  for (int b = 0; b < static_cast<int>(cfg.blocks.size()); b++) {
    const Instruction& term = instructions[cfg.blocks[b].last_pc];
    int fall = cfg.blocks[b].last_pc + 1;
    switch (term.opcode) {
      case Opcode::Exit:
        cfg.succs[b].push_back(exit_node);
        break;
      case Opcode::Bra:
        cfg.succs[b].push_back(block_of[term.target_pc]);
        break;
      case Opcode::BraPred:
        cfg.succs[b].push_back(block_of[term.target_pc]);
        if (fall < n) cfg.succs[b].push_back(block_of[fall]);
        break;
      default:
        // fallthrough; running off the end behaves like exit
        cfg.succs[b].push_back(fall < n ? block_of[fall] : exit_node);
        break;
    }
    // dedupe (bra_pred to fallthrough target)
    auto& s = cfg.succs[b];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }

  cfg.reachable.assign(cfg.blocks.size() + 1, false);
  std::vector<int> work{0};
  cfg.reachable[0] = true;
  while (!work.empty()) {
    int b = work.back();
    work.pop_back();
    if (b == exit_node) continue;
    for (int s : cfg.succs[b])
      if (!cfg.reachable[s]) {
        cfg.reachable[s] = true;
        work.push_back(s);
      }
  }
  return cfg;
}

std::map<int, int> compute_ipdom(const std::vector<Instruction>& instructions) {
  Cfg cfg = build_cfg(instructions);
  const int nb = static_cast<int>(cfg.blocks.size());
  const int exit_node = cfg.exit_node();
  const int total = nb + 1;

  // iterative post-dominator sets over the reachable subgraph
  std::vector<std::set<int>> pdom(total);
  std::set<int> all;
  for (int b = 0; b < total; b++)
    if (cfg.reachable[b]) all.insert(b);
  for (int b = 0; b < total; b++) {
    if (!cfg.reachable[b]) continue;
    if (b == exit_node)
      pdom[b] = {exit_node};
    else
      pdom[b] = all;
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (int b = nb - 1; b >= 0; b--) {
      if (!cfg.reachable[b]) continue;
      std::set<int> meet;
      bool first = true;
      for (int s : cfg.succs[b]) {
        if (!cfg.reachable[s]) continue;
        if (first) {
          meet = pdom[s];
          first = false;
        } else {
          std::set<int> tmp;
          std::set_intersection(meet.begin(), meet.end(), pdom[s].begin(), pdom[s].end(),
                                std::inserter(tmp, tmp.begin()));
          meet = std::move(tmp);
        }
      }
      meet.insert(b);
      if (meet != pdom[b]) {
        pdom[b] = std::move(meet);
        changed = true;
      }
    }
  }

  // ipdom(b) = the strict post-dominator contained in every other strict post-dominator's set
  auto immediate = [&](int b) -> int {
    for (int c : pdom[b]) {
      if (c == b) continue;
      bool is_imm = true;
      for (int d : pdom[b]) {
        if (d == b || d == c) continue;
        if (!pdom[c].count(d)) {
          is_imm = false;
          break;
        }
      }
      if (is_imm) return c;
    }
    return exit_node;
  };

  std::map<int, int> result;
  for (int b = 0; b < nb; b++) {
    if (!cfg.reachable[b]) continue;
    const Instruction& term = instructions[cfg.blocks[b].last_pc];
    if (term.opcode != Opcode::BraPred) continue;
    int ip = immediate(b);
    // reconvergence at exit: use one past the last instruction as sentinel
    int rpc = (ip == exit_node) ? static_cast<int>(instructions.size())
                                : cfg.blocks[ip].first_pc;
    result[cfg.blocks[b].last_pc] = rpc;
  }
  return result;
}

void analyze_program(Program& program) {
  Cfg cfg = build_cfg(program.instructions);
  program.basic_blocks = cfg.blocks;
  program.ipdom_map = compute_ipdom(program.instructions);
}

Program insert_lat_barriers(const Program& program) {
  const int n = program.size();
  std::vector<int> new_pc(n + 1);  // old pc -> new pc; LAT old pc maps to its barrier
  int shift = 0;
  for (int pc = 0; pc < n; pc++) {
    new_pc[pc] = pc + shift;
    if (classify_lat(program.instructions[pc])) shift++;
  }
  new_pc[n] = n + shift;

  Program out;
  int next_barrier_id = 0;
  for (int pc = 0; pc < n; pc++) {
    const Instruction& instr = program.instructions[pc];
    if (classify_lat(instr)) {
      Instruction bar;
      bar.opcode = Opcode::BarSynchPartner;
      bar.barrier_id = next_barrier_id++;
      out.instructions.push_back(bar);
    }
    Instruction copy = instr;
    if (copy.opcode == Opcode::Bra || copy.opcode == Opcode::BraPred)
      copy.target_pc = new_pc[copy.target_pc];
    out.instructions.push_back(copy);
  }

  for (const auto& [name, pc] : program.labels) out.labels[name] = new_pc[pc];
  analyze_program(out);
  return out;
}

}  // namespace dwrsim
