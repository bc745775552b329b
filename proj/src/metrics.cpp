#include "dwrsim/metrics.hpp"

#include <sstream>

namespace dwrsim {

std::optional<double> coalescing_rate(const StatsSnapshot& s) {
  if (s.offchip_requests == 0) return std::nullopt;
  return static_cast<double>(s.scalar_mem_ops) / static_cast<double>(s.offchip_requests);
}

double idle_share(const StatsSnapshot& s) {
  if (s.total_cycles == 0) return 0.0;
  return static_cast<double>(s.idle_cycles) / static_cast<double>(s.total_cycles);
}

double ipc(const StatsSnapshot& s) {
  if (s.total_cycles == 0) return 0.0;
  return static_cast<double>(s.issued_scalar_ops) / static_cast<double>(s.total_cycles);
}

double warp_ipc(const StatsSnapshot& s) {
  if (s.total_cycles == 0) return 0.0;
  return static_cast<double>(s.issued_warp_insns) / static_cast<double>(s.total_cycles);
}

double activity_factor(const StatsSnapshot& s) {
  if (s.issued_lane_slots == 0) return 0.0;
  return static_cast<double>(s.issued_scalar_ops) / static_cast<double>(s.issued_lane_slots);
}

StorageOverhead storage_overhead(int groups, int members_per_group, int ilt_sets, int ilt_ways) {
  return {pst_storage_bytes(groups, members_per_group), ilt_storage_bytes(ilt_sets, ilt_ways)};
}

std::map<std::string, std::string> StatsSnapshot::to_fields() const {
  std::map<std::string, std::string> f;
  auto put = [&](const std::string& k, uint64_t v) { f[k] = std::to_string(v); };
  f["kernel"] = kernel_name;
  put("total_cycles", total_cycles);
  put("idle_cycles", idle_cycles);
  put("busy_cycles", busy_cycles);
  put("issued_warp_insns", issued_warp_insns);
  put("issued_scalar_ops", issued_scalar_ops);
  put("issued_lane_slots", issued_lane_slots);
  put("scalar_mem_ops", scalar_mem_ops);
  put("transactions", transactions);
  put("offchip_requests", offchip_requests);
  put("lat_total", lat_total);
  put("lat_ignored", lat_ignored);
  put("partner_barrier_blocks", partner_barrier_blocks);
  // Table-style "ignored/total"
  f["lat"] = std::to_string(lat_ignored) + "/" + std::to_string(lat_total);
  return f;
}

}  // namespace dwrsim
