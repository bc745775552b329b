#ifndef DWRSIM_CONFIG_HPP
#define DWRSIM_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "dwrsim/core.hpp"
#include "dwrsim/memory.hpp"

namespace dwrsim {

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  SmConfig sm;
  CacheConfig cache;
  IltConfig ilt;
  std::optional<std::string> kernel_path;
  std::optional<std::string> workload_spec;
  int launch_threads = 0;  // kernel-file runs: block size (0 = one schedulable unit)
  int launch_blocks = 1;   // kernel-file runs: grid size
  std::string out_path;
  uint64_t seed = 0;  // randomized harnesses only; simulation is deterministic

  void validate() const;  // throws ConfigError
};

// Applies one "section.key" (or bare key) assignment. Throws ConfigError on
// unknown keys or malformed values.
void apply_config_value(RunConfig& config, const std::string& key, const std::string& value);

// Flat key=value with [section] headers; '#' comments.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Emits text that parse_config_text maps back to the same RunConfig.
std::string serialize_config(const RunConfig& config);

}  // namespace dwrsim

#endif
