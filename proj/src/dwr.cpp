#include "dwrsim/dwr.hpp"

namespace dwrsim {

Ilt::Ilt(const IltConfig& config) : sets_(config.sets), ways_(config.ways) {
  table_.assign(sets_, std::vector<Way>(ways_));
  next_victim_.assign(sets_, 0);
}

bool Ilt::lookup(int pc) const {
  const auto& set = table_[pc % sets_];
  int tag = pc / sets_;
  for (const auto& way : set)
    if (way.valid && way.tag == tag) return true;
  return false;
}

bool Ilt::insert(int pc) {
  if (lookup(pc)) return false;
  int idx = pc % sets_;
  auto& set = table_[idx];
  int tag = pc / sets_;
  inserts_++;
  ever_inserted_.insert(pc);
  for (auto& way : set) {
    if (!way.valid) {
      way.valid = true;
      way.tag = tag;
      return true;
    }
  }
  int v = next_victim_[idx];
  set[v].tag = tag;
  next_victim_[idx] = (v + 1) % ways_;
  return true;
}

uint64_t pst_storage_bytes(int groups, int members_per_group) {
  uint64_t bits = static_cast<uint64_t>(groups) * (1 + 32 + members_per_group);
  return (bits + 7) / 8;
}

uint64_t ilt_storage_bytes(int sets, int ways) {
  uint64_t bits = static_cast<uint64_t>(sets) * ways * (1 + 30);
  return (bits + 7) / 8;
}

}  // namespace dwrsim
