#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dwrsim/cfg.hpp"
#include "dwrsim/config.hpp"
#include "dwrsim/core.hpp"
#include "dwrsim/metrics.hpp"
#include "dwrsim/runner.hpp"
#include "dwrsim/workloads.hpp"

namespace py = pybind11;
using namespace dwrsim;

namespace {

py::dict stats_to_dict(const StatsSnapshot& s) {
  py::dict d;
  d["kernel"] = s.kernel_name;
  d["total_cycles"] = s.total_cycles;
  d["idle_cycles"] = s.idle_cycles;
  d["busy_cycles"] = s.busy_cycles;
  d["issued_warp_insns"] = s.issued_warp_insns;
  d["issued_scalar_ops"] = s.issued_scalar_ops;
  d["scalar_mem_ops"] = s.scalar_mem_ops;
  d["transactions"] = s.transactions;
  d["offchip_requests"] = s.offchip_requests;
  d["lat_total"] = s.lat_total;
  d["lat_ignored"] = s.lat_ignored;
  d["partner_barrier_blocks"] = s.partner_barrier_blocks;
  auto rate = coalescing_rate(s);
  d["coalescing_rate"] = rate ? py::cast(*rate) : py::none();
  d["idle_share"] = idle_share(s);
  d["ipc"] = ipc(s);
  d["warp_ipc"] = warp_ipc(s);
  d["activity_factor"] = activity_factor(s);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "SIMT core simulator with dynamic warp resizing";

  py::class_<Program>(m, "Program")
      .def_property_readonly("num_instructions", &Program::size)
      .def_property_readonly("num_blocks",
                             [](const Program& p) { return p.basic_blocks.size(); })
      .def_property_readonly("ipdom_map", [](const Program& p) { return p.ipdom_map; })
      .def("__str__", [](const Program& p) { return format_program(p); });

  m.def("parse_program", &parse_program, py::arg("text"));
  m.def("insert_lat_barriers", &insert_lat_barriers, py::arg("program"));
  m.def("lat_count", [](const Program& p) {
    int n = 0;
    for (const auto& i : p.instructions)
      if (classify_lat(i)) n++;
    return n;
  });

  m.def(
      "coalesce_addresses",
      [](const std::vector<uint64_t>& addrs, int size, bool is_store) {
        std::vector<AccessRequest> accesses;
        int lane = 0;
        for (uint64_t a : addrs) accesses.push_back({lane++, Space::Global, a, size, is_store});
        std::vector<uint64_t> bases;
        for (const auto& t : coalesce(accesses)) bases.push_back(t.base);
        return bases;
      },
      py::arg("addresses"), py::arg("size") = 4, py::arg("is_store") = false,
      "64-byte stride bases touched by one warp's accesses");

  m.def(
      "generate_workload",
      [](const std::string& spec) {
        Workload w = generate(parse_workload_spec(spec));
        py::dict d;
        d["name"] = w.name;
        d["text"] = w.text;
        d["grid_size"] = w.launch.grid_size;
        d["block_size"] = w.launch.block_size;
        return d;
      },
      py::arg("spec"));

  m.def(
      "run",
      [](const std::string& config_text) {
        RunConfig config = parse_config_text(config_text);
        return stats_to_dict(run(config));
      },
      py::arg("config_text"), "simulate one configuration given config-file text");

  m.def("storage_overhead", [](int groups, int members, int ilt_sets, int ilt_ways) {
    auto o = storage_overhead(groups, members, ilt_sets, ilt_ways);
    return py::make_tuple(o.pst_bytes, o.ilt_bytes);
  });
}
