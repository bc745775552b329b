#ifndef DWRSIM_DWR_HPP
#define DWRSIM_DWR_HPP

#include <cstdint>
#include <set>
#include <vector>

namespace dwrsim {

// Partner-synch table entry: one per partner sub-warp group.
struct PstEntry {
  bool valid = false;
  int pc = -1;
  uint32_t lock_vector = 0;  // bit per partner sub-warp within the group
};

struct IltConfig {
  int sets = 4;
  int ways = 8;
};

// Ignore-list table: small set-associative table of barrier PCs exempted from
// partner synchronization. FIFO replacement per set.
class Ilt {
 public:
  explicit Ilt(const IltConfig& config);

  bool lookup(int pc) const;
  // Inserts pc (no-op if already resident). Returns true on a new insertion.
  bool insert(int pc);

  uint64_t insert_count() const { return inserts_; }
  const std::set<int>& distinct_inserted_pcs() const { return ever_inserted_; }
  int sets() const { return sets_; }
  int ways() const { return ways_; }

 private:
  int sets_;
  int ways_;
  struct Way {
    bool valid = false;
    int tag = 0;
  };
  std::vector<std::vector<Way>> table_;
  std::vector<int> next_victim_;  // FIFO cursor per set
  uint64_t inserts_ = 0;
  std::set<int> ever_inserted_;
};

// Storage arithmetic for the synchronization tables.
// PST: per group 1 valid bit + 32-bit PC + one lock bit per member.
// ILT: per entry 1 valid bit + 30-bit PC tag.
uint64_t pst_storage_bytes(int groups, int members_per_group);
uint64_t ilt_storage_bytes(int sets, int ways);

}  // namespace dwrsim

#endif
