#include "dwrsim/config.hpp"

#include <fstream>
#include <sstream>

namespace dwrsim {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int64_t to_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    int64_t v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ConfigError("bad integer for " + key + ": '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "on" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "off" || value == "no") return false;
  throw ConfigError("bad boolean for " + key + ": '" + value + "'");
}

}  // namespace

void apply_config_value(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "sm.simd_width") c.sm.simd_width = static_cast<int>(to_int(key, value));
  else if (key == "sm.warp_size") c.sm.warp_size = static_cast<int>(to_int(key, value));
  else if (key == "sm.dwr") {
    if (value == "off") {
      c.sm.dwr_enabled = false;
    } else {
      int v = static_cast<int>(to_int(key, value));
      if (v != 16 && v != 32 && v != 64) throw ConfigError("sm.dwr must be off, 16, 32 or 64");
      c.sm.dwr_enabled = true;
      c.sm.max_warp_size = v;
    }
  } else if (key == "sm.pipeline_depth") c.sm.pipeline_depth = static_cast<int>(to_int(key, value));
  else if (key == "sm.threads_per_sm") c.sm.threads_per_sm = static_cast<int>(to_int(key, value));
  else if (key == "sm.barrier_latency") c.sm.barrier_latency = to_int(key, value);
  else if (key == "sm.deadlock_release") c.sm.deadlock_release = to_bool(key, value);
  else if (key == "sm.watchdog") c.sm.watchdog_cycles = to_int(key, value);
  else if (key == "cache.enabled") c.cache.enabled = to_bool(key, value);
  else if (key == "cache.sets") c.cache.sets = static_cast<int>(to_int(key, value));
  else if (key == "cache.ways") c.cache.ways = static_cast<int>(to_int(key, value));
  else if (key == "cache.hit_latency") c.cache.hit_latency = to_int(key, value);
  else if (key == "cache.miss_latency") c.cache.miss_latency = to_int(key, value);
  else if (key == "cache.max_inflight") c.cache.max_inflight = static_cast<int>(to_int(key, value));
  else if (key == "ilt.sets") c.ilt.sets = static_cast<int>(to_int(key, value));
  else if (key == "ilt.ways") c.ilt.ways = static_cast<int>(to_int(key, value));
  else if (key == "run.threads" || key == "threads")
    c.launch_threads = static_cast<int>(to_int(key, value));
  else if (key == "run.blocks" || key == "blocks")
    c.launch_blocks = static_cast<int>(to_int(key, value));
  else if (key == "run.kernel" || key == "kernel") c.kernel_path = value;
  else if (key == "run.workload" || key == "workload") c.workload_spec = value;
  else if (key == "run.out" || key == "out") c.out_path = value;
  else if (key == "run.seed" || key == "seed") c.seed = to_int(key, value);
  else throw ConfigError("unknown config key '" + key + "'");
}

void RunConfig::validate() const {
  if (kernel_path && workload_spec)
    throw ConfigError("exactly one of kernel / workload may be set");
  if (!kernel_path && !workload_spec)
    throw ConfigError("one of kernel / workload is required");
  if (sm.simd_width <= 0) throw ConfigError("sm.simd_width must be positive");
  if (sm.pipeline_depth < 1) throw ConfigError("sm.pipeline_depth must be >= 1");
  if (!sm.dwr_enabled && sm.warp_size % sm.simd_width != 0)
    throw ConfigError("sm.warp_size must be a multiple of sm.simd_width");
  if (sm.dwr_enabled && sm.max_warp_size % sm.simd_width != 0)
    throw ConfigError("DWR max warp size must be a multiple of sm.simd_width");
  if (cache.sets <= 0 || cache.ways <= 0) throw ConfigError("cache geometry must be positive");
  if (cache.max_inflight <= 0) throw ConfigError("cache.max_inflight must be positive");
  if (ilt.sets <= 0 || ilt.ways <= 0) throw ConfigError("ilt geometry must be positive");
  if (kernel_path) {
    std::ifstream f(*kernel_path);
    if (!f) throw ConfigError("kernel file not found: " + *kernel_path);
  }
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig config;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    line_no++;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": bad section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!section.empty() && key.find('.') == std::string::npos) key = section + "." + key;
    apply_config_value(config, key, value);
  }
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config file not found: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "[sm]\n";
  out << "simd_width = " << c.sm.simd_width << "\n";
  out << "warp_size = " << c.sm.warp_size << "\n";
  out << "dwr = " << (c.sm.dwr_enabled ? std::to_string(c.sm.max_warp_size) : "off") << "\n";
  out << "pipeline_depth = " << c.sm.pipeline_depth << "\n";
  out << "threads_per_sm = " << c.sm.threads_per_sm << "\n";
  out << "barrier_latency = " << c.sm.barrier_latency << "\n";
  out << "deadlock_release = " << (c.sm.deadlock_release ? "on" : "off") << "\n";
  out << "watchdog = " << c.sm.watchdog_cycles << "\n";
  out << "[cache]\n";
  out << "enabled = " << (c.cache.enabled ? "on" : "off") << "\n";
  out << "sets = " << c.cache.sets << "\n";
  out << "ways = " << c.cache.ways << "\n";
  out << "hit_latency = " << c.cache.hit_latency << "\n";
  out << "miss_latency = " << c.cache.miss_latency << "\n";
  out << "max_inflight = " << c.cache.max_inflight << "\n";
  out << "[ilt]\n";
  out << "sets = " << c.ilt.sets << "\n";
  out << "ways = " << c.ilt.ways << "\n";
  out << "[run]\n";
  if (c.kernel_path) out << "kernel = " << *c.kernel_path << "\n";
  if (c.launch_threads != 0) out << "threads = " << c.launch_threads << "\n";
  if (c.launch_blocks != 1) out << "blocks = " << c.launch_blocks << "\n";
  if (c.workload_spec) out << "workload = " << *c.workload_spec << "\n";
  if (!c.out_path.empty()) out << "out = " << c.out_path << "\n";
  if (c.seed != 0) out << "seed = " << c.seed << "\n";
  return out.str();
}

}  // namespace dwrsim
