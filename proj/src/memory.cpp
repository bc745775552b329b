#include "dwrsim/memory.hpp"

#include <algorithm>
#include <cassert>

namespace dwrsim {

std::vector<Transaction> coalesce(std::span<const AccessRequest> accesses) {
  // key: (base, is_store) -> lane mask
  std::map<std::pair<uint64_t, bool>, uint64_t> groups;
  for (const AccessRequest& a : accesses) {
    uint64_t first = a.addr / kStrideBytes;
    uint64_t last = (a.addr + a.size - 1) / kStrideBytes;
    for (uint64_t s = first; s <= last; s++)
      groups[{s * kStrideBytes, a.is_store}] |= (a.lane < 64 ? 1ull << a.lane : 0);
  }
  std::vector<Transaction> out;
  out.reserve(groups.size());
  for (const auto& [key, mask] : groups) {
    Transaction t;
    t.base = key.first;
    t.is_store = key.second;
    t.lane_mask = mask;
    out.push_back(t);
  }
  return out;
}

L1Cache::L1Cache(int sets, int ways) : sets_(sets), ways_(ways) {
  lines_.assign(sets_, std::vector<Line>(ways_));
}

bool L1Cache::access(uint64_t base) {
  uint64_t block = base / kStrideBytes;
  auto& set = lines_[block % sets_];
  uint64_t tag = block / sets_;
  tick_++;
  for (auto& line : set) {
    if (line.valid && line.tag == tag) {
      line.lru = tick_;
      return true;
    }
  }
  // allocate: invalid way first, else LRU victim
  Line* victim = &set[0];
  for (auto& line : set) {
    if (!line.valid) {
      victim = &line;
      break;
    }
    if (line.lru < victim->lru) victim = &line;
  }
  victim->valid = true;
  victim->tag = tag;
  victim->lru = tick_;
  return false;
}

bool L1Cache::probe(uint64_t base) const {
  uint64_t block = base / kStrideBytes;
  const auto& set = lines_[block % sets_];
  uint64_t tag = block / sets_;
  for (const auto& line : set)
    if (line.valid && line.tag == tag) return true;
  return false;
}

MemorySystem::MemorySystem(const CacheConfig& config)
    : config_(config), cache_(config.sets, config.ways) {
  for (int i = 0; i < config_.max_inflight; i++) channel_free_.insert(0);
}

uint64_t MemorySystem::offchip_issue(uint64_t cycle) {
  offchip_requests_++;
  auto slot = channel_free_.begin();
  uint64_t start = std::max(cycle, *slot);
  channel_free_.erase(slot);
  uint64_t complete = start + config_.miss_latency;
  channel_free_.insert(complete);
  return complete;
}

uint64_t MemorySystem::access(Transaction& txn, uint64_t cycle) {
  transactions_++;
  txn.issue_cycle = cycle;

  if (!config_.enabled) {
    txn.complete_cycle = offchip_issue(cycle);
    return txn.complete_cycle;
  }

  // retire MSHRs that have completed
  for (auto it = pending_miss_.begin(); it != pending_miss_.end();)
    it = (it->second <= cycle) ? pending_miss_.erase(it) : std::next(it);

  if (auto it = pending_miss_.find(txn.base); it != pending_miss_.end()) {
    // merged into the in-flight fill
    cache_.access(txn.base);
    txn.complete_cycle = it->second;
    return txn.complete_cycle;
  }

  if (cache_.access(txn.base)) {
    txn.complete_cycle = cycle + config_.hit_latency;
    return txn.complete_cycle;
  }

  txn.complete_cycle = offchip_issue(cycle);
  pending_miss_[txn.base] = txn.complete_cycle;
  return txn.complete_cycle;
}

}  // namespace dwrsim
