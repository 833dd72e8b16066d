// Python bindings. Systems go in as JSON text, results come back as JSON text;
// the swctl package decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "swctl/checker.hpp"
#include "swctl/cli.hpp"
#include "swctl/serialize.hpp"

namespace py = pybind11;
using namespace swctl;

namespace {

CheckOptions options(std::uint64_t seed, int trials, std::uint64_t prime) {
  CheckOptions opts;
  opts.seeds = trial_seeds(seed, trials);
  opts.prime = prime;
  return opts;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Structural controllability of switched linear systems";
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<MdgSizeError>(m, "MdgSizeError", PyExc_RuntimeError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);

  m.attr("DEFAULT_SEED") = kDefaultSeed;
  m.attr("MERSENNE61") = kMersenne61;

  m.def("normalize", [](const std::string& text) { return serialize_system(parse_system(text)); },
        "Parse and re-serialize a system (canonical form).", py::arg("system"));

  m.def(
      "check",
      [](const std::string& text, std::uint64_t seed, int trials, std::uint64_t prime) {
        const auto sys = parse_system(text);
        py::gil_scoped_release release;
        return to_json(check(sys, options(seed, trials, prime)), ColoredUnionGraph(sys)).dump();
      },
      py::arg("system"), py::arg("seed") = kDefaultSeed, py::arg("trials") = 3, py::arg("prime") = kMersenne61);

  m.def("grank", [](const std::string& text) { return grank_concat(parse_system(text)); }, py::arg("system"));

  m.def(
      "bounds",
      [](const std::string& text, std::uint64_t seed, int trials) {
        const auto sys = parse_system(text);
        auto j = to_json(dim_bounds(sys, options(seed, trials, kMersenne61)), ColoredUnionGraph(sys));
        j["conventional_lower"] = conventional_cactus_lower(sys);
        return j.dump();
      },
      py::arg("system"), py::arg("seed") = kDefaultSeed, py::arg("trials") = 3);

  m.def(
      "cactus",
      [](const std::string& text) {
        const ColoredUnionGraph g(parse_system(text));
        return certificate_json(g, Decomposition{best_cactus_cover(g), {}}).dump();
      },
      py::arg("system"));

  m.def(
      "mdg",
      [](const std::string& text, int layers) {
        const auto sys = parse_system(text);
        const MultiLayerDynamicGraph mdg(sys, layers);
        return to_json(mdg, max_linking(mdg)).dump();
      },
      py::arg("system"), py::arg("layers") = 2);

  m.def(
      "realize",
      [](const std::string& text, std::uint64_t seed, std::uint64_t prime) {
        return to_json(sample_realization(parse_system(text), FieldTag::finite(prime), seed)).dump();
      },
      py::arg("system"), py::arg("seed") = kDefaultSeed, py::arg("prime") = kMersenne61);

  m.def(
      "controllable_dim",
      [](const std::string& text, std::uint64_t seed, int trials, std::uint64_t prime) {
        const auto seeds = trial_seeds(seed, trials);
        return to_json(controllable_dim(parse_system(text), seeds, prime)).dump();
      },
      py::arg("system"), py::arg("seed") = kDefaultSeed, py::arg("trials") = 3, py::arg("prime") = kMersenne61);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      "Run the command-line tool in-process; returns (exit code, stdout, stderr).", py::arg("args"));
}
