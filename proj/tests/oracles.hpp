#ifndef DWRSIM_TESTS_ORACLES_HPP
#define DWRSIM_TESTS_ORACLES_HPP

// Brute-force reference implementations the tests check the simulator against.
// Deliberately slow and simple: removal-based reachability for post-dominators,
// direct floor(addr/64) grouping for the coalescer, and a linear-scan LRU.

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "dwrsim/isa.hpp"
#include "dwrsim/memory.hpp"

namespace oracle {

// Instruction-level successor lists; node program.size() is the virtual exit.
inline std::vector<std::vector<int>> succs(const dwrsim::Program& p) {
  using dwrsim::Opcode;
  const int n = p.size();
  std::vector<std::vector<int>> out(n + 1);
  for (int i = 0; i < n; i++) {
    const auto& ins = p.instructions[i];
    switch (ins.opcode) {
      case Opcode::Bra: out[i] = {ins.target_pc}; break;
      case Opcode::BraPred: out[i] = {ins.target_pc, i + 1}; break;
      case Opcode::Exit: out[i] = {n}; break;
      default: out[i] = {i + 1}; break;
    }
  }
  return out;
}

inline std::vector<bool> reachable_from(const std::vector<std::vector<int>>& g, int from,
                                        int removed) {
  std::vector<bool> seen(g.size(), false);
  if (from == removed) return seen;
  std::vector<int> work{from};
  seen[from] = true;
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    for (int s : g[v]) {
      if (s == removed || seen[s]) continue;
      seen[s] = true;
      work.push_back(s);
    }
  }
  return seen;
}

// b post-dominates a iff every path from a to the exit passes through b,
// i.e. removing b cuts the exit off from a. O(n^3) overall; fine at test scale.
inline std::map<int, int> ipdom(const dwrsim::Program& p) {
  const int n = p.size();
  auto g = succs(p);
  const int exit_node = n;

  auto entry_reach = reachable_from(g, 0, -1);

  // pdoms[a] excludes a itself
  std::vector<std::vector<int>> pdoms(n);
  for (int a = 0; a < n; a++) {
    if (!entry_reach[a]) continue;
    for (int b = 0; b <= n; b++) {
      if (b == a) continue;
      if (b == exit_node || !reachable_from(g, a, b)[exit_node]) pdoms[a].push_back(b);
    }
  }

  // c is the immediate post-dominator of a iff every other post-dominator of a
  // also post-dominates c (it is the closest one; pdoms form a chain)
  auto pdominates = [&](int b, int c) {
    if (c == exit_node) return false;  // nothing strictly post-dominates the exit
    return std::find(pdoms[c].begin(), pdoms[c].end(), b) != pdoms[c].end();
  };
  std::map<int, int> out;
  for (int a = 0; a < n; a++) {
    if (!entry_reach[a]) continue;
    if (p.instructions[a].opcode != dwrsim::Opcode::BraPred) continue;
    int best = -1;
    for (int c : pdoms[a]) {
      bool immediate = true;
      for (int other : pdoms[a])
        if (other != c && !pdominates(other, c)) immediate = false;
      if (immediate) {
        best = c;
        break;
      }
    }
    out[a] = best;
  }
  return out;
}

struct TxnKey {
  uint64_t base;
  bool is_store;
  bool operator<(const TxnKey& o) const {
    if (base != o.base) return base < o.base;
    return is_store < o.is_store;  // loads (false) first
  }
};

// floor(addr/64) grouping, loads and stores kept apart
inline std::vector<dwrsim::Transaction> coalesce(
    const std::vector<dwrsim::AccessRequest>& accesses) {
  std::map<TxnKey, uint64_t> groups;
  for (const auto& a : accesses)
    groups[{a.addr / dwrsim::kStrideBytes * dwrsim::kStrideBytes, a.is_store}] |=
        1ull << a.lane;
  std::vector<dwrsim::Transaction> out;
  for (const auto& [key, mask] : groups) {
    dwrsim::Transaction t;
    t.base = key.base;
    t.is_store = key.is_store;
    t.lane_mask = mask;
    out.push_back(t);
  }
  return out;
}

// Reference set-associative LRU over block base addresses.
class RefLru {
 public:
  RefLru(int sets, int ways) : sets_(sets), ways_(ways), lines_(sets) {}

  bool access(uint64_t base) {
    uint64_t block = base / dwrsim::kStrideBytes;
    auto& set = lines_[block % sets_];
    auto it = std::find(set.begin(), set.end(), block);
    if (it != set.end()) {
      set.erase(it);
      set.push_back(block);  // most recent at the back
      return true;
    }
    if (static_cast<int>(set.size()) == ways_) set.erase(set.begin());
    set.push_back(block);
    return false;
  }

 private:
  int sets_;
  int ways_;
  std::vector<std::vector<uint64_t>> lines_;
};

}  // namespace oracle

#endif
