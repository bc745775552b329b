#ifndef DWRSIM_CFG_HPP
#define DWRSIM_CFG_HPP

#include <map>
#include <vector>

#include "dwrsim/isa.hpp"

namespace dwrsim {

// Basic-block CFG over a parsed instruction list. Block ids index Program::basic_blocks;
// a synthetic exit node is appended at id = num_blocks.
struct Cfg {
  std::vector<BasicBlock> blocks;
  std::vector<std::vector<int>> succs;   // per block, successor block ids (exit node = blocks.size())
  std::vector<bool> reachable;           // from entry block 0
  int exit_node() const { return static_cast<int>(blocks.size()); }
};

Cfg build_cfg(const std::vector<Instruction>& instructions);

// Immediate post-dominators: maps each conditional-branch pc to the pc where its
// paths reconverge. Unreachable blocks are excluded from the result.
std::map<int, int> compute_ipdom(const std::vector<Instruction>& instructions);

// Fills program.basic_blocks and program.ipdom_map.
void analyze_program(Program& program);

// Replaces every LAT with a bar.synch_partner followed by the original LAT.
// Branch targets and labels pointing at a LAT are remapped to the inserted
// barrier so the barrier always executes before its LAT. Barrier ids are
// assigned sequentially in pc order. ipdom_map is recomputed.
Program insert_lat_barriers(const Program& program);

}  // namespace dwrsim

#endif
