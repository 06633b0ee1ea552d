// Copyright 2026 The qcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "qcorr/broadcast.hpp"
#include "qcorr/channel.hpp"
#include "qcorr/classify.hpp"
#include "qcorr/commands.hpp"
#include "qcorr/corpus.hpp"
#include "qcorr/correlations.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/io.hpp"

namespace py = pybind11;
using namespace qcorr;

namespace {

std::string dumps(const Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Classical and quantum correlations of finite-dimensional states";
  m.attr("__version__") = tool_version();

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<OptimizerError>(m, "OptimizerError", error.ptr());

  py::class_<OptimizerConfig>(m, "OptimizerConfig")
      .def(py::init<>())
      .def_readwrite("seed", &OptimizerConfig::seed)
      .def_readwrite("restarts", &OptimizerConfig::restarts)
      .def_readwrite("max_evals", &OptimizerConfig::max_evals)
      .def_readwrite("tol", &OptimizerConfig::tol)
      .def_readwrite("outcome_count", &OptimizerConfig::outcome_count)
      .def_readwrite("projective_only", &OptimizerConfig::projective_only)
      .def_readwrite("ancilla_dim", &OptimizerConfig::ancilla_dim)
      .def_readwrite("threads", &OptimizerConfig::threads)
      .def_static("broadcast_defaults", &OptimizerConfig::broadcast_defaults);

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init([](const Matrix& matrix, std::vector<int> dims) {
             if (dims.empty()) dims = {static_cast<int>(matrix.rows())};
             return DensityMatrix(SubsystemLayout(dims), matrix);
           }),
           py::arg("matrix"), py::arg("dims") = std::vector<int>{})
      .def_static(
          "pure", [](const Vector& psi, const std::vector<int>& dims) { return DensityMatrix::pure(SubsystemLayout(dims), psi); },
          py::arg("psi"), py::arg("dims"))
      .def_property_readonly("matrix", [](const DensityMatrix& r) { return r.matrix(); })
      .def_property_readonly("dims", [](const DensityMatrix& r) { return r.layout().dims(); })
      .def("__repr__", [](const DensityMatrix& r) {
        std::string s = "DensityMatrix(dims=[";
        for (size_t i = 0; i < r.layout().dims().size(); ++i) s += (i ? ", " : "") + std::to_string(r.layout().dims()[i]);
        return s + "])";
      });

  m.def("tensor", py::overload_cast<const DensityMatrix&, const DensityMatrix&>(&tensor));
  m.def("partial_trace",
        [](const DensityMatrix& rho, const std::vector<int>& keep) { return partial_trace(rho, keep); },
        py::arg("rho"), py::arg("keep"));
  m.def("von_neumann_entropy", py::overload_cast<const DensityMatrix&>(&von_neumann_entropy));
  m.def("relative_entropy", &relative_entropy);
  m.def("trace_distance", py::overload_cast<const DensityMatrix&, const DensityMatrix&>(&trace_distance));
  m.def("fidelity", &fidelity);
  m.def("mutual_information", py::overload_cast<const DensityMatrix&>(&mutual_information));
  m.def("multipartite_mutual_information", &multipartite_mutual_information);

  m.def("apply_local",
        [](const std::vector<Matrix>& kraus, int position, const DensityMatrix& rho) {
          return apply_local(KrausChannel(kraus), position, rho);
        },
        py::arg("kraus"), py::arg("position"), py::arg("rho"));
  m.def("petz_recovery_kraus",
        [](const std::vector<Matrix>& kraus, const DensityMatrix& reference) {
          return petz_recovery(KrausMap(kraus), reference).kraus_map().kraus();
        },
        py::arg("kraus"), py::arg("reference"));

  m.def("is_cc_json", [](const DensityMatrix& rho, double tolerance) { return dumps(verdict_to_json(is_cc(rho, tolerance))); },
        py::arg("rho"), py::arg("tolerance") = tol::kClassical);
  m.def("ppt_label", [](const DensityMatrix& rho) { return to_string(ppt_label(rho)); });
  m.def("correlation_report_json",
        [](const DensityMatrix& rho, const OptimizerConfig& cfg, const std::string& units) {
          return dumps(report_to_json(correlation_report(rho, cfg), parse_units(units)));
        },
        py::arg("rho"), py::arg("cfg") = OptimizerConfig{}, py::arg("units") = "bits");
  m.def("broadcast_search_json",
        [](const DensityMatrix& rho, const OptimizerConfig& cfg) {
          return dumps(candidate_to_json(broadcast_search(rho, cfg)));
        },
        py::arg("rho"), py::arg("cfg") = OptimizerConfig::broadcast_defaults());
  m.def("two_copy_broadcast", &two_copy_broadcast);
  m.def("broadcast_mutual_information", &broadcast_mutual_information);

  m.def("read_state_file", [](const std::filesystem::path& p) { return read_state_file(p); });
  m.def("write_state_file",
        [](const std::filesystem::path& p, const DensityMatrix& rho) { write_state_file(p, rho); });
  m.def("write_corpus",
        [](const std::filesystem::path& dir, int per_kind, std::uint64_t seed) {
          std::vector<std::string> out;
          for (const auto& p : write_corpus(dir, generate_corpus(per_kind, seed))) out.push_back(p.string());
          return out;
        },
        py::arg("dir"), py::arg("per_kind") = 5, py::arg("seed") = kCorpusSeed);
}
