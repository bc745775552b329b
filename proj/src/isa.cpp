#include "dwrsim/isa.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "dwrsim/cfg.hpp"

namespace dwrsim {

namespace {

constexpr int kNumRegs = 16;
constexpr int kNumPreds = 4;

struct Tokenizer {
  std::string s;
  size_t pos = 0;
  int line;

  explicit Tokenizer(std::string str, int ln) : s(std::move(str)), line(ln) {}

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == ',')) pos++;
  }

  bool done() {
    skip_ws();
    return pos >= s.size();
  }

  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  // word = run of [A-Za-z0-9_.$%!@-] (covers mnemonics, labels, immediates, specials)
  std::string word() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size()) {
      char c = s[pos];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '$' ||
          c == '%' || c == '-' || c == '!' || c == '@')
        pos++;
      else
        break;
    }
    if (start == pos) throw ParseError(line, "expected token");
    return s.substr(start, pos - start);
  }

  void expect(char c) {
    skip_ws();
    if (pos >= s.size() || s[pos] != c)
      throw ParseError(line, std::string("expected '") + c + "'");
    pos++;
  }
};

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c);
  });
}

int parse_reg(const std::string& tok, int line) {
  if (tok.size() < 2 || tok[0] != 'r' || !all_digits(tok.substr(1)))
    throw ParseError(line, "expected register, got '" + tok + "'");
  int idx = -1;
  try {
    idx = std::stoi(tok.substr(1));
  } catch (...) {
    throw ParseError(line, "bad register '" + tok + "'");
  }
  if (idx < 0 || idx >= kNumRegs) throw ParseError(line, "register out of range '" + tok + "'");
  return idx;
}

int parse_pred(const std::string& tok, int line) {
  if (tok.size() < 2 || tok[0] != 'p' || !all_digits(tok.substr(1)))
    throw ParseError(line, "expected predicate, got '" + tok + "'");
  int idx = -1;
  try {
    idx = std::stoi(tok.substr(1));
  } catch (...) {
    throw ParseError(line, "bad predicate '" + tok + "'");
  }
  if (idx < 0 || idx >= kNumPreds) throw ParseError(line, "predicate out of range '" + tok + "'");
  return idx;
}

Operand parse_src(const std::string& tok, int line) {
  if (tok == "%tid") return {Operand::Kind::Tid, 0};
  if (tok == "%ctaid") return {Operand::Kind::Ctaid, 0};
  if (tok == "%ntid") return {Operand::Kind::Ntid, 0};
  if (!tok.empty() && (tok[0] == '-' || std::isdigit(static_cast<unsigned char>(tok[0])))) {
    try {
      return Operand::imm(static_cast<int32_t>(std::stol(tok)));
    } catch (...) {
      throw ParseError(line, "bad immediate '" + tok + "'");
    }
  }
  if (!tok.empty() && tok[0] == 'r') return Operand::reg(parse_reg(tok, line));
  throw ParseError(line, "bad operand '" + tok + "'");
}

// [rN+imm] or [rN] or [rN-imm]
void parse_addr(Tokenizer& t, Instruction& instr) {
  t.expect('[');
  // scan the register by hand: '-' is a word character (negative immediates),
  // so word() would swallow "rN-imm" whole
  t.skip_ws();
  size_t start = t.pos;
  while (t.pos < t.s.size() && t.s[t.pos] != '+' && t.s[t.pos] != '-' && t.s[t.pos] != ']')
    t.pos++;
  std::string reg = t.s.substr(start, t.pos - start);
  while (!reg.empty() && (reg.back() == ' ' || reg.back() == '\t')) reg.pop_back();
  instr.addr_reg = parse_reg(reg, t.line);
  t.skip_ws();
  if (t.peek() == '+' || t.peek() == '-') {
    bool neg = t.peek() == '-';
    t.pos++;
    std::string imm = t.word();
    try {
      instr.addr_imm = static_cast<int32_t>(std::stol(imm));
    } catch (...) {
      throw ParseError(t.line, "bad address offset '" + imm + "'");
    }
    if (neg) instr.addr_imm = -instr.addr_imm;
  }
  t.expect(']');
}

std::vector<std::string> split_dots(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  return parts;
}

Space parse_space(const std::string& s, int line) {
  if (s == "global") return Space::Global;
  if (s == "local") return Space::Local;
  if (s == "param") return Space::Param;
  if (s == "const") return Space::Const;
  if (s == "shared") return Space::Shared;
  throw ParseError(line, "unknown memory space '" + s + "'");
}

std::optional<int> parse_width_suffix(const std::string& s) {
  if (s == "s8" || s == "u8" || s == "b8") return 1;
  if (s == "s16" || s == "u16" || s == "b16") return 2;
  if (s == "s32" || s == "u32" || s == "b32") return 4;
  return std::nullopt;
}

CmpOp parse_cmp(const std::string& s, int line) {
  if (s == "eq") return CmpOp::Eq;
  if (s == "ne") return CmpOp::Ne;
  if (s == "lt") return CmpOp::Lt;
  if (s == "le") return CmpOp::Le;
  if (s == "gt") return CmpOp::Gt;
  if (s == "ge") return CmpOp::Ge;
  throw ParseError(line, "unknown comparison '" + s + "'");
}

// Parses one instruction line (label already stripped).
Instruction parse_instruction(const std::string& text, int line) {
  Tokenizer t(text, line);
  Instruction instr;
  std::string mnem = t.word();

  // guard predicate: @pN bra LABEL
  if (mnem.size() > 1 && mnem[0] == '@') {
    instr.opcode = Opcode::BraPred;
    instr.pred = parse_pred(mnem.substr(1), line);
    std::string op = t.word();
    if (op != "bra") throw ParseError(line, "guard predicate only valid on bra");
    instr.label = t.word();
    return instr;
  }

  auto parts = split_dots(mnem);
  const std::string& op = parts[0];

  if (op == "exit") {
    instr.opcode = Opcode::Exit;
  } else if (op == "alu" || op == "nop") {
    instr.opcode = Opcode::Alu;
    instr.alu_fn = AluFn::Nop;
  } else if (op == "and" || op == "or" || op == "shr" || op == "shl" || op == "sub") {
    instr.opcode = Opcode::Alu;
    instr.alu_fn = op == "and"   ? AluFn::And
                   : op == "or"  ? AluFn::Or
                   : op == "shr" ? AluFn::Shr
                   : op == "shl" ? AluFn::Shl
                                 : AluFn::Sub;
    instr.dst = parse_reg(t.word(), line);
    instr.src0 = parse_src(t.word(), line);
    instr.src1 = parse_src(t.word(), line);
  } else if (op == "mov") {
    instr.opcode = Opcode::Mov;
    instr.dst = parse_reg(t.word(), line);
    instr.src0 = parse_src(t.word(), line);
  } else if (op == "iadd" || op == "imul") {
    instr.opcode = op == "iadd" ? Opcode::Iadd : Opcode::Imul;
    instr.dst = parse_reg(t.word(), line);
    instr.src0 = parse_src(t.word(), line);
    instr.src1 = parse_src(t.word(), line);
  } else if (op == "setp") {
    if (parts.size() != 2) throw ParseError(line, "setp requires a comparison suffix");
    instr.opcode = Opcode::Setp;
    instr.cmp = parse_cmp(parts[1], line);
    instr.pdst = parse_pred(t.word(), line);
    instr.src0 = parse_src(t.word(), line);
    instr.src1 = parse_src(t.word(), line);
  } else if (op == "bra") {
    instr.opcode = Opcode::Bra;
    instr.label = t.word();
  } else if (op == "ld") {
    if (parts.size() < 2) throw ParseError(line, "ld requires a space suffix");
    instr.opcode = Opcode::Ld;
    instr.space = parse_space(parts[1], line);
    if (parts.size() > 2) {
      auto w = parse_width_suffix(parts[2]);
      if (!w) throw ParseError(line, "bad width suffix '" + parts[2] + "'");
      instr.access_size = *w;
    }
    instr.dst = parse_reg(t.word(), line);
    parse_addr(t, instr);
  } else if (op == "st") {
    if (parts.size() < 2) throw ParseError(line, "st requires a space suffix");
    instr.opcode = Opcode::St;
    instr.space = parse_space(parts[1], line);
    if (parts.size() > 2) {
      auto w = parse_width_suffix(parts[2]);
      if (!w) throw ParseError(line, "bad width suffix '" + parts[2] + "'");
      instr.access_size = *w;
    }
    parse_addr(t, instr);
    instr.data_reg = parse_reg(t.word(), line);
  } else if (op == "bar") {
    if (parts.size() != 2) throw ParseError(line, "bar requires .sync or .synch_partner");
    if (parts[1] == "sync") {
      instr.opcode = Opcode::BarSync;
    } else if (parts[1] == "synch_partner") {
      instr.opcode = Opcode::BarSynchPartner;
      std::string id = t.word();
      try {
        instr.barrier_id = std::stoi(id);
      } catch (...) {
        throw ParseError(line, "bad barrier id '" + id + "'");
      }
    } else {
      throw ParseError(line, "unknown barrier '" + parts[1] + "'");
    }
  } else {
    throw ParseError(line, "unknown instruction '" + mnem + "'");
  }

  if (!t.done()) throw ParseError(line, "trailing junk after instruction");
  return instr;
}

}  // namespace

bool classify_lat(const Instruction& instr) {
  if (instr.opcode != Opcode::Ld && instr.opcode != Opcode::St) return false;
  return instr.space == Space::Global || instr.space == Space::Local ||
         instr.space == Space::Param;
}

Program parse_program(const std::string& text) {
  Program program;
  std::vector<std::pair<std::string, int>> label_refs;  // name, line (per referencing pc)
  std::vector<int> instr_lines;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    line_no++;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    // strip whitespace
    size_t b = raw.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    size_t e = raw.find_last_not_of(" \t\r");
    std::string body = raw.substr(b, e - b + 1);

    // labels, possibly followed by an instruction on the same line
    while (true) {
      size_t colon = body.find(':');
      if (colon == std::string::npos) break;
      std::string name = body.substr(0, colon);
      if (name.find_first_of(" \t[") != std::string::npos) break;  // not a label
      if (name.empty()) throw ParseError(line_no, "empty label");
      if (program.labels.count(name)) throw ParseError(line_no, "duplicate label '" + name + "'");
      program.labels[name] = program.size();
      body = body.substr(colon + 1);
      size_t nb = body.find_first_not_of(" \t");
      if (nb == std::string::npos) {
        body.clear();
        break;
      }
      body = body.substr(nb);
    }
    if (body.empty()) continue;

    program.instructions.push_back(parse_instruction(body, line_no));
    instr_lines.push_back(line_no);
  }

  if (program.instructions.empty()) throw ParseError(line_no, "empty program");

  // resolve branch targets
  for (int pc = 0; pc < program.size(); pc++) {
    Instruction& instr = program.instructions[pc];
    if (instr.opcode == Opcode::Bra || instr.opcode == Opcode::BraPred) {
      auto it = program.labels.find(instr.label);
      if (it == program.labels.end())
        throw ParseError(instr_lines[pc], "undefined label '" + instr.label + "'");
      if (it->second >= program.size())
        throw ParseError(instr_lines[pc], "label '" + instr.label + "' points past end");
      instr.target_pc = it->second;
    }
  }

  analyze_program(program);
  return program;
}

std::string to_string(Opcode op) {
  switch (op) {
    case Opcode::Alu: return "alu";
    case Opcode::Mov: return "mov";
    case Opcode::Iadd: return "iadd";
    case Opcode::Imul: return "imul";
    case Opcode::Setp: return "setp";
    case Opcode::Bra: return "bra";
    case Opcode::BraPred: return "bra_pred";
    case Opcode::Ld: return "ld";
    case Opcode::St: return "st";
    case Opcode::BarSync: return "bar.sync";
    case Opcode::BarSynchPartner: return "bar.synch_partner";
    case Opcode::Exit: return "exit";
  }
  return "?";
}

std::string to_string(Space space) {
  switch (space) {
    case Space::None: return "none";
    case Space::Global: return "global";
    case Space::Local: return "local";
    case Space::Param: return "param";
    case Space::Const: return "const";
    case Space::Shared: return "shared";
  }
  return "?";
}

namespace {

std::string operand_str(const Operand& op) {
  switch (op.kind) {
    case Operand::Kind::Reg: return "r" + std::to_string(op.value);
    case Operand::Kind::Imm: return std::to_string(op.value);
    case Operand::Kind::Tid: return "%tid";
    case Operand::Kind::Ctaid: return "%ctaid";
    case Operand::Kind::Ntid: return "%ntid";
    case Operand::Kind::None: return "";
  }
  return "";
}

std::string addr_str(const Instruction& i) {
  return "[r" + std::to_string(i.addr_reg) + "+" + std::to_string(i.addr_imm) + "]";
}

std::string width_suffix(int size) {
  if (size == 1) return ".s8";
  if (size == 2) return ".s16";
  return "";
}

std::string alu_name(AluFn fn) {
  switch (fn) {
    case AluFn::Nop: return "alu";
    case AluFn::And: return "and";
    case AluFn::Or: return "or";
    case AluFn::Shr: return "shr";
    case AluFn::Shl: return "shl";
    case AluFn::Sub: return "sub";
  }
  return "alu";
}

std::string cmp_name(CmpOp c) {
  switch (c) {
    case CmpOp::Eq: return "eq";
    case CmpOp::Ne: return "ne";
    case CmpOp::Lt: return "lt";
    case CmpOp::Le: return "le";
    case CmpOp::Gt: return "gt";
    case CmpOp::Ge: return "ge";
  }
  return "eq";
}

}  // namespace

std::string format_instruction(const Instruction& i, const std::map<int, std::string>& label_at_pc) {
  auto target = [&](const Instruction& br) {
    auto it = label_at_pc.find(br.target_pc);
    if (it != label_at_pc.end()) return it->second;
    return br.label.empty() ? "L" + std::to_string(br.target_pc) : br.label;
  };
  switch (i.opcode) {
    case Opcode::Alu:
      if (i.alu_fn == AluFn::Nop) return "alu";
      return alu_name(i.alu_fn) + " r" + std::to_string(i.dst) + ", " + operand_str(i.src0) +
             ", " + operand_str(i.src1);
    case Opcode::Mov:
      return "mov r" + std::to_string(i.dst) + ", " + operand_str(i.src0);
    case Opcode::Iadd:
    case Opcode::Imul:
      return std::string(i.opcode == Opcode::Iadd ? "iadd" : "imul") + " r" +
             std::to_string(i.dst) + ", " + operand_str(i.src0) + ", " + operand_str(i.src1);
    case Opcode::Setp:
      return "setp." + cmp_name(i.cmp) + " p" + std::to_string(i.pdst) + ", " +
             operand_str(i.src0) + ", " + operand_str(i.src1);
    case Opcode::Bra:
      return "bra " + target(i);
    case Opcode::BraPred:
      return "@p" + std::to_string(i.pred) + " bra " + target(i);
    case Opcode::Ld:
      return "ld." + to_string(i.space) + width_suffix(i.access_size) + " r" +
             std::to_string(i.dst) + ", " + addr_str(i);
    case Opcode::St:
      return "st." + to_string(i.space) + width_suffix(i.access_size) + " " + addr_str(i) +
             ", r" + std::to_string(i.data_reg);
    case Opcode::BarSync:
      return "bar.sync";
    case Opcode::BarSynchPartner:
      return "bar.synch_partner " + std::to_string(i.barrier_id);
    case Opcode::Exit:
      return "exit";
  }
  return "?";
}

std::string format_program(const Program& program) {
  // labels only at branch targets
  std::map<int, std::string> label_at_pc;
  int n = 0;
  for (const auto& i : program.instructions)
    if (i.opcode == Opcode::Bra || i.opcode == Opcode::BraPred)
      if (!label_at_pc.count(i.target_pc))
        label_at_pc[i.target_pc] = "L" + std::to_string(n++);

  std::string out;
  for (int pc = 0; pc < program.size(); pc++) {
    if (auto it = label_at_pc.find(pc); it != label_at_pc.end()) out += it->second + ":\n";
    out += format_instruction(program.instructions[pc], label_at_pc) + "\n";
  }
  return out;
}

}  // namespace dwrsim
