#ifndef DWRSIM_MEMORY_HPP
#define DWRSIM_MEMORY_HPP

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "dwrsim/isa.hpp"

namespace dwrsim {

constexpr uint64_t kStrideBytes = 64;  // coalescing stride = transaction chunk = cache block

struct AccessRequest {
  int lane = 0;
  Space space = Space::Global;
  uint64_t addr = 0;
  int size = 4;  // bytes: 1, 2 or 4
  bool is_store = false;
};

struct Transaction {
  uint64_t base = 0;       // 64-byte aligned
  uint64_t lane_mask = 0;  // lanes served (lane < 64)
  bool is_store = false;
  uint64_t issue_cycle = 0;
  uint64_t complete_cycle = 0;
};

// Groups accesses of one issued warp by 64-byte stride. Loads and stores to
// the same stride stay separate. Output ordered by ascending base, loads
// before stores at the same base.
std::vector<Transaction> coalesce(std::span<const AccessRequest> accesses);

struct CacheConfig {
  bool enabled = true;
  int sets = 64;
  int ways = 12;            // 48KB with 64-byte blocks
  int block_bytes = 64;
  uint64_t hit_latency = 1;
  uint64_t miss_latency = 400;
  int max_inflight = 16;    // off-chip bandwidth cap

  int capacity_bytes() const { return sets * ways * block_bytes; }
};

// Set-associative LRU tag store.
class L1Cache {
 public:
  L1Cache(int sets, int ways);

  // True on hit; on miss the block is allocated (LRU victim evicted).
  bool access(uint64_t base);
  bool probe(uint64_t base) const;

 private:
  int sets_;
  int ways_;
  struct Line {
    bool valid = false;
    uint64_t tag = 0;
    uint64_t lru = 0;  // higher = more recent
  };
  std::vector<std::vector<Line>> lines_;
  uint64_t tick_ = 0;
};

// L1 + MSHR merging + a bounded off-chip request queue. Single simulation
// instance ownership; all timing is driven by the caller's cycle.
class MemorySystem {
 public:
  explicit MemorySystem(const CacheConfig& config);

  // Runs one transaction through the hierarchy; returns its completion cycle.
  uint64_t access(Transaction& txn, uint64_t cycle);

  uint64_t offchip_requests() const { return offchip_requests_; }
  uint64_t transaction_count() const { return transactions_; }

 private:
  uint64_t offchip_issue(uint64_t cycle);

  CacheConfig config_;
  L1Cache cache_;
  std::map<uint64_t, uint64_t> pending_miss_;   // base -> completion cycle (MSHR)
  std::multiset<uint64_t> channel_free_;        // per-channel next-free cycle
  uint64_t offchip_requests_ = 0;
  uint64_t transactions_ = 0;
};

}  // namespace dwrsim

#endif
