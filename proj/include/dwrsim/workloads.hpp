#ifndef DWRSIM_WORKLOADS_HPP
#define DWRSIM_WORKLOADS_HPP

#include <string>

#include "dwrsim/isa.hpp"

namespace dwrsim {

enum class Archetype {
  Streaming,         // perfectly coalescable load/store per thread
  Divergent,         // alternating regions pick between two LAT paths
  Mixed,             // looped streaming + divergent phases
  Deadlock2a,        // guarded LAT plus unguarded LAT
  Deadlock2b,        // guarded LAT plus block barrier
  Deadlock3,         // different block barriers on two branch paths
  BlockBarrierLoop,  // block barrier every loop trip
};

struct WorkloadSpec {
  Archetype archetype = Archetype::Streaming;
  int threads = 64;                 // per block
  int blocks = 1;
  int divergence_granularity = 8;   // threads per path region (power of two)
  int loop_trips = 4;
};

struct Workload {
  std::string name;
  std::string text;  // kernel-text form, replayable through the parser
  Program program;
  KernelLaunch launch;
};

// "streaming:threads=64,blocks=2" etc. Throws std::invalid_argument on bad specs.
WorkloadSpec parse_workload_spec(const std::string& spec);

Workload generate(const WorkloadSpec& spec);

std::string to_string(Archetype a);

}  // namespace dwrsim

#endif
