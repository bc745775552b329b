#include "dwrsim/workloads.hpp"

#include <sstream>
#include <stdexcept>

namespace dwrsim {

namespace {

bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

// r1 = global thread id, r2 = r1 * 4
std::string prologue() {
  return "imul r1, %ctaid, %ntid\n"
         "iadd r1, r1, %tid\n"
         "imul r2, r1, 4\n";
}

std::string streaming_text(const WorkloadSpec& s) {
  int region = s.threads * s.blocks * 4;
  std::ostringstream k;
  k << prologue();
  k << "ld.global r3, [r2+0]\n";
  k << "st.global [r2+" << region << "], r3\n";
  k << "exit\n";
  return k.str();
}

std::string divergent_text(const WorkloadSpec& s) {
  int region = s.threads * s.blocks * 4;
  std::ostringstream k;
  k << prologue();
  k << "and r3, r1, " << s.divergence_granularity << "\n";
  k << "setp.ne p0, r3, 0\n";
  k << "@p0 bra ODD\n";
  k << "ld.global r4, [r2+0]\n";
  k << "bra JOIN\n";
  k << "ODD:\n";
  k << "ld.global r4, [r2+" << region << "]\n";
  k << "JOIN:\n";
  k << "st.global [r2+" << 2 * region << "], r4\n";
  k << "exit\n";
  return k.str();
}

std::string mixed_text(const WorkloadSpec& s) {
  int region = s.threads * s.blocks * 4;
  std::ostringstream k;
  k << prologue();
  k << "mov r5, " << s.loop_trips << "\n";
  k << "LOOP:\n";
  // streaming phase
  k << "ld.global r4, [r2+0]\n";
  k << "st.global [r2+" << region << "], r4\n";
  // divergent phase
  k << "and r3, r1, " << s.divergence_granularity << "\n";
  k << "setp.ne p0, r3, 0\n";
  k << "@p0 bra ODD\n";
  k << "ld.global r4, [r2+" << 2 * region << "]\n";
  k << "bra JOIN\n";
  k << "ODD:\n";
  k << "ld.global r4, [r2+" << 3 * region << "]\n";
  k << "JOIN:\n";
  k << "st.global [r2+" << 4 * region << "], r4\n";
  k << "sub r5, r5, 1\n";
  k << "setp.ne p0, r5, 0\n";
  k << "@p0 bra LOOP\n";
  k << "exit\n";
  return k.str();
}

std::string deadlock_2a_text(const WorkloadSpec& s) {
  std::ostringstream k;
  k << prologue();
  k << "and r3, r1, " << s.divergence_granularity << "\n";
  k << "setp.ne p0, r3, 0\n";
  k << "@p0 bra SKIP\n";
  k << "ld.global r4, [r2+0]\n";  // guarded LAT
  k << "SKIP:\n";
  k << "ld.global r5, [r2+" << s.threads * s.blocks * 4 << "]\n";
  k << "exit\n";
  return k.str();
}

std::string deadlock_2b_text(const WorkloadSpec& s) {
  std::ostringstream k;
  k << prologue();
  k << "and r3, r1, " << s.divergence_granularity << "\n";
  k << "setp.ne p0, r3, 0\n";
  k << "@p0 bra SKIP\n";
  k << "ld.global r4, [r2+0]\n";  // guarded LAT
  k << "SKIP:\n";
  k << "bar.sync\n";
  k << "exit\n";
  return k.str();
}

std::string deadlock_3_text(const WorkloadSpec& s) {
  std::ostringstream k;
  k << "mov r1, %tid\n";
  k << "setp.lt p0, r1, " << s.divergence_granularity << "\n";
  k << "@p0 bra FIRST\n";
  k << "bar.sync\n";  // second warp locked here
  k << "bra END\n";
  k << "FIRST:\n";
  k << "bar.sync\n";  // first warp locked here
  k << "END:\n";
  k << "exit\n";
  return k.str();
}

std::string block_barrier_loop_text(const WorkloadSpec& s) {
  int region = s.threads * s.blocks * 4;
  std::ostringstream k;
  k << prologue();
  k << "mov r5, " << s.loop_trips << "\n";
  k << "LOOP:\n";
  k << "ld.global r4, [r2+0]\n";
  k << "st.global [r2+" << region << "], r4\n";
  k << "bar.sync\n";
  k << "sub r5, r5, 1\n";
  k << "setp.ne p0, r5, 0\n";
  k << "@p0 bra LOOP\n";
  k << "exit\n";
  return k.str();
}

}  // namespace

std::string to_string(Archetype a) {
  switch (a) {
    case Archetype::Streaming: return "streaming";
    case Archetype::Divergent: return "divergent";
    case Archetype::Mixed: return "mixed";
    case Archetype::Deadlock2a: return "deadlock_2a";
    case Archetype::Deadlock2b: return "deadlock_2b";
    case Archetype::Deadlock3: return "deadlock_3";
    case Archetype::BlockBarrierLoop: return "block_barrier_loop";
  }
  return "?";
}

WorkloadSpec parse_workload_spec(const std::string& spec) {
  WorkloadSpec out;
  std::string name = spec;
  std::string params;
  if (auto colon = spec.find(':'); colon != std::string::npos) {
    name = spec.substr(0, colon);
    params = spec.substr(colon + 1);
  }

  if (name == "streaming") out.archetype = Archetype::Streaming;
  else if (name == "divergent") out.archetype = Archetype::Divergent;
  else if (name == "mixed") out.archetype = Archetype::Mixed;
  else if (name == "deadlock_2a") out.archetype = Archetype::Deadlock2a;
  else if (name == "deadlock_2b") out.archetype = Archetype::Deadlock2b;
  else if (name == "deadlock_3") out.archetype = Archetype::Deadlock3;
  else if (name == "block_barrier_loop") out.archetype = Archetype::BlockBarrierLoop;
  else throw std::invalid_argument("unknown workload archetype '" + name + "'");

  if (out.archetype == Archetype::Deadlock2a || out.archetype == Archetype::Deadlock2b ||
      out.archetype == Archetype::Deadlock3)
    out.threads = 16;

  std::stringstream ss(params);
  std::string kv;
  while (std::getline(ss, kv, ',')) {
    if (kv.empty()) continue;
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad workload parameter '" + kv + "'");
    std::string key = kv.substr(0, eq);
    int value = 0;
    try {
      value = std::stoi(kv.substr(eq + 1));
    } catch (...) {
      throw std::invalid_argument("bad workload parameter value '" + kv + "'");
    }
    if (key == "threads") out.threads = value;
    else if (key == "blocks") out.blocks = value;
    else if (key == "granularity") out.divergence_granularity = value;
    else if (key == "trips") out.loop_trips = value;
    else throw std::invalid_argument("unknown workload parameter '" + key + "'");
  }
  return out;
}

Workload generate(const WorkloadSpec& spec) {
  if (spec.threads <= 0 || spec.blocks <= 0)
    throw std::invalid_argument("threads and blocks must be positive");
  if (spec.loop_trips <= 0) throw std::invalid_argument("trips must be positive");
  if (!is_pow2(spec.divergence_granularity))
    throw std::invalid_argument("granularity must be a power of two");

  Workload w;
  w.name = to_string(spec.archetype);
  switch (spec.archetype) {
    case Archetype::Streaming: w.text = streaming_text(spec); break;
    case Archetype::Divergent: w.text = divergent_text(spec); break;
    case Archetype::Mixed: w.text = mixed_text(spec); break;
    case Archetype::Deadlock2a: w.text = deadlock_2a_text(spec); break;
    case Archetype::Deadlock2b: w.text = deadlock_2b_text(spec); break;
    case Archetype::Deadlock3: w.text = deadlock_3_text(spec); break;
    case Archetype::BlockBarrierLoop: w.text = block_barrier_loop_text(spec); break;
  }
  w.program = parse_program(w.text);
  w.launch.grid_size = spec.blocks;
  w.launch.block_size = spec.threads;
  return w;
}

}  // namespace dwrsim
