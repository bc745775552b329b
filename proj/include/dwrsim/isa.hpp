#ifndef DWRSIM_ISA_HPP
#define DWRSIM_ISA_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dwrsim {

// Mini SIMT ISA. PCs are instruction indices into Program::instructions.

enum class Opcode {
  Alu,   // generic integer op (and/or/shr/shl/sub/nop variants)
  Mov,
  Iadd,
  Imul,
  Setp,
  Bra,
  BraPred,
  Ld,
  St,
  BarSync,
  BarSynchPartner,
  Exit,
};

enum class AluFn { Nop, And, Or, Shr, Shl, Sub };

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

enum class Space { None, Global, Local, Param, Const, Shared };

struct Operand {
  enum class Kind { None, Reg, Imm, Tid, Ctaid, Ntid };
  Kind kind = Kind::None;
  int32_t value = 0;  // register index or immediate

  static Operand reg(int r) { return {Kind::Reg, r}; }
  static Operand imm(int32_t v) { return {Kind::Imm, v}; }
};

struct Instruction {
  Opcode opcode = Opcode::Alu;
  AluFn alu_fn = AluFn::Nop;
  CmpOp cmp = CmpOp::Eq;
  Space space = Space::None;

  int dst = -1;          // destination register (mov/iadd/imul/alu/ld)
  int pdst = -1;         // destination predicate (setp)
  Operand src0, src1;

  int addr_reg = -1;     // ld/st address base register
  int32_t addr_imm = 0;  // ld/st address offset
  int data_reg = -1;     // st data source
  int access_size = 4;   // bytes: 1, 2 or 4

  int pred = -1;         // guard predicate (bra_pred)
  std::string label;     // branch target name
  int target_pc = -1;    // resolved branch target

  int barrier_id = -1;   // bar_synch_partner operand
  int latency_class = 1;

  bool is_memory() const { return opcode == Opcode::Ld || opcode == Opcode::St; }
  bool is_terminator() const {
    return opcode == Opcode::Bra || opcode == Opcode::BraPred || opcode == Opcode::Exit;
  }
};

struct BasicBlock {
  int first_pc = 0;
  int last_pc = 0;  // inclusive
};

struct Program {
  std::vector<Instruction> instructions;
  std::map<std::string, int> labels;       // name -> pc
  std::vector<BasicBlock> basic_blocks;    // in pc order
  std::map<int, int> ipdom_map;            // conditional-branch pc -> reconvergence pc

  int size() const { return static_cast<int>(instructions.size()); }
};

struct KernelLaunch {
  int grid_size = 1;    // thread blocks
  int block_size = 1;   // threads per block
  std::vector<std::pair<std::string, int32_t>> param_values;  // readable via param space
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& reason)
      : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Parses kernel text into a Program: labels resolved, basic blocks built,
// ipdom_map computed. Throws ParseError on malformed input.
Program parse_program(const std::string& text);

// True iff instr is a load/store to global/local/param space.
bool classify_lat(const Instruction& instr);

std::string to_string(Opcode op);
std::string to_string(Space space);

// Renders an instruction back to kernel-text syntax.
std::string format_instruction(const Instruction& instr,
                               const std::map<int, std::string>& label_at_pc = {});
std::string format_program(const Program& program);

}  // namespace dwrsim

#endif
