#include "dwrsim/runner.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dwrsim/cfg.hpp"
#include "dwrsim/metrics.hpp"
#include "dwrsim/workloads.hpp"

namespace dwrsim {

namespace {

constexpr const char* kSchemaVersion = "1";

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

StatsSnapshot run(const RunConfig& config) {
  config.validate();

  Program program;
  KernelLaunch launch;
  std::string name;
  if (config.kernel_path) {
    program = parse_program(read_file(*config.kernel_path));
    launch.grid_size = config.launch_blocks;
    launch.block_size = config.launch_threads > 0 ? config.launch_threads
                                                  : config.sm.unit_width();
    name = *config.kernel_path;
  } else {
    Workload w = generate(parse_workload_spec(*config.workload_spec));
    program = std::move(w.program);
    launch = std::move(w.launch);
    name = w.name;
  }

  if (config.sm.dwr_enabled) program = insert_lat_barriers(program);

  Simulator sim(std::move(program), launch, config.sm, config.cache, config.ilt);
  StatsSnapshot stats = sim.run();
  stats.kernel_name = name;
  return stats;
}

SweepGrid parse_sweep_grid_file(const std::string& path) {
  SweepGrid grid;
  std::istringstream in(read_file(path));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    line_no++;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("grid line " + std::to_string(line_no) + ": expected key = values");
    std::string key = trim(line.substr(0, eq));
    std::string values = trim(line.substr(eq + 1));
    if (key == "baseline") {
      std::stringstream ss(values);
      std::string kv;
      while (std::getline(ss, kv, ',')) {
        auto e2 = kv.find('=');
        if (e2 == std::string::npos)
          throw ConfigError("bad baseline selector '" + kv + "'");
        grid.baseline[trim(kv.substr(0, e2))] = trim(kv.substr(e2 + 1));
      }
      continue;
    }
    std::vector<std::string> vals;
    std::stringstream ss(values);
    std::string v;
    while (std::getline(ss, v, ',')) vals.push_back(trim(v));
    if (vals.empty()) throw ConfigError("grid key '" + key + "' has no values");
    if (vals.size() == 1) {
      // fixed setting, not an axis
      apply_config_value(grid.base_config, key, vals[0]);
    } else {
      grid.axes.emplace_back(key, std::move(vals));
    }
  }
  return grid;
}

SweepResult run_sweep(const SweepGrid& grid) {
  SweepResult result;
  result.grid = grid;

  size_t total = 1;
  for (const auto& [key, vals] : grid.axes) total *= vals.size();
  if (total == 0) throw ConfigError("empty sweep grid");

  for (size_t i = 0; i < total; i++) {
    SweepRow row;
    row.index = static_cast<int>(i);
    RunConfig config = grid.base_config;
    size_t rem = i;
    for (auto it = grid.axes.rbegin(); it != grid.axes.rend(); ++it) {
      const auto& [key, vals] = *it;
      const std::string& value = vals[rem % vals.size()];
      rem /= vals.size();
      row.point[key] = value;
      apply_config_value(config, key, value);
    }
    try {
      row.stats = run(config);
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    result.rows.push_back(std::move(row));
  }

  if (!grid.baseline.empty()) {
    for (const SweepRow& row : result.rows) {
      bool match = true;
      for (const auto& [key, value] : grid.baseline) {
        auto it = row.point.find(key);
        if (it == row.point.end() || it->second != value) {
          match = false;
          break;
        }
      }
      if (match) {
        result.baseline_index = row.index;
        break;
      }
    }
    if (result.baseline_index < 0) throw ConfigError("baseline selector matches no grid row");
  }
  return result;
}

namespace {

std::map<std::string, std::string> derived_metrics(const StatsSnapshot& s) {
  std::map<std::string, std::string> m;
  auto putd = [&](const std::string& k, double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    m[k] = os.str();
  };
  auto rate = coalescing_rate(s);
  m["coalescing_rate"] = rate ? [&] {
    std::ostringstream os;
    os.precision(10);
    os << *rate;
    return os.str();
  }() : "n/a";
  putd("idle_share", idle_share(s));
  putd("ipc", ipc(s));
  putd("warp_ipc", warp_ipc(s));
  putd("activity_factor", activity_factor(s));
  return m;
}

}  // namespace

std::string sweep_to_csv(const SweepResult& result) {
  std::vector<std::string> stat_keys;
  {
    StatsSnapshot empty;
    for (const auto& [k, v] : empty.to_fields()) stat_keys.push_back(k);
    for (const auto& [k, v] : derived_metrics(empty)) stat_keys.push_back(k);
  }

  std::ostringstream out;
  out << "index";
  for (const auto& [key, vals] : result.grid.axes) out << "," << key;
  for (const auto& k : stat_keys) out << "," << k;
  out << ",normalized_ipc,error\n";

  double baseline_ipc = 0;
  if (result.baseline_index >= 0 && result.rows[result.baseline_index].ok)
    baseline_ipc = ipc(result.rows[result.baseline_index].stats);

  for (const SweepRow& row : result.rows) {
    out << row.index;
    for (const auto& [key, vals] : result.grid.axes) out << "," << row.point.at(key);
    auto fields = row.stats.to_fields();
    auto derived = derived_metrics(row.stats);
    for (const auto& k : stat_keys) {
      out << ",";
      if (!row.ok) continue;
      if (auto it = fields.find(k); it != fields.end()) out << it->second;
      else out << derived.at(k);
    }
    out << ",";
    if (row.ok && baseline_ipc > 0) {
      std::ostringstream os;
      os.precision(10);
      os << ipc(row.stats) / baseline_ipc;
      out << os.str();
    }
    out << "," << row.error << "\n";
  }
  return out.str();
}

namespace {

nlohmann::json stats_json(const StatsSnapshot& s) {
  nlohmann::json j;
  j["kernel"] = s.kernel_name;
  j["total_cycles"] = s.total_cycles;
  j["idle_cycles"] = s.idle_cycles;
  j["busy_cycles"] = s.busy_cycles;
  j["issued_warp_insns"] = s.issued_warp_insns;
  j["issued_scalar_ops"] = s.issued_scalar_ops;
  j["issued_lane_slots"] = s.issued_lane_slots;
  j["scalar_mem_ops"] = s.scalar_mem_ops;
  j["transactions"] = s.transactions;
  j["offchip_requests"] = s.offchip_requests;
  j["lat_total"] = s.lat_total;
  j["lat_ignored"] = s.lat_ignored;
  j["lat"] = std::to_string(s.lat_ignored) + "/" + std::to_string(s.lat_total);
  j["partner_barrier_blocks"] = s.partner_barrier_blocks;
  auto rate = coalescing_rate(s);
  if (rate) j["coalescing_rate"] = *rate;
  else j["coalescing_rate"] = nullptr;
  j["idle_share"] = idle_share(s);
  j["ipc"] = ipc(s);
  j["warp_ipc"] = warp_ipc(s);
  j["activity_factor"] = activity_factor(s);
  return j;
}

}  // namespace

std::string snapshot_to_json(const StatsSnapshot& stats, const RunConfig& config) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = serialize_config(config);
  j["stats"] = stats_json(stats);
  return j.dump(2) + "\n";
}

std::string sweep_to_json(const SweepResult& result) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  nlohmann::json axes = nlohmann::json::array();
  for (const auto& [key, vals] : result.grid.axes)
    axes.push_back({{"key", key}, {"values", vals}});
  j["axes"] = axes;
  j["baseline_index"] = result.baseline_index;
  nlohmann::json rows = nlohmann::json::array();
  for (const SweepRow& row : result.rows) {
    nlohmann::json r;
    r["index"] = row.index;
    r["point"] = row.point;
    r["ok"] = row.ok;
    if (row.ok) r["stats"] = stats_json(row.stats);
    else r["error"] = row.error;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace dwrsim
