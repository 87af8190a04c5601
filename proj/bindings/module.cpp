// Copyright 2026 The twirlzne authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "twirlzne/experiments.hpp"
#include "twirlzne/harness.hpp"
#include "twirlzne/molecule.hpp"

namespace py = pybind11;
using namespace twirlzne;

namespace {

MitigationConfig mitigation_of(const std::string& name) {
  return MitigationConfig::parse_name(name);
}

Measurement measurement_of(const std::string& mode, uint64_t shots) {
  if (mode == "exact") return Measurement::exact();
  if (mode == "shots") return Measurement::shots(shots);
  throw ContractError("measurement mode must be 'exact' or 'shots'");
}

}  // namespace

PYBIND11_MODULE(_twirlzne, m) {
  m.doc() = "coherent-noise mitigation toolkit: randomized compiling + "
            "zero-noise extrapolation for VQE simulations";

  py::register_exception<Error>(m, "TwirlzneError");

  py::class_<PauliString>(m, "PauliString")
      .def(py::init(&PauliString::from_text), py::arg("letters"))
      .def_property_readonly("n_qubits", &PauliString::n_qubits)
      .def("text", &PauliString::text)
      .def("__repr__",
           [](const PauliString& p) { return "PauliString('" + p.text() + "')"; });

  py::class_<PauliSum>(m, "PauliSum")
      .def_static("parse", &PauliSum::parse_text, py::arg("text"))
      .def_property_readonly("n_qubits", &PauliSum::n_qubits)
      .def("__len__", &PauliSum::size)
      .def("to_text", &PauliSum::to_text)
      .def("is_hermitian", &PauliSum::is_hermitian, py::arg("tol") = 1e-10)
      .def("terms", [](const PauliSum& s) {
        std::map<std::string, cplx> out;
        for (const auto& [w, c] : s.terms()) out[w.text()] = c;
        return out;
      });

  py::class_<MoleculeSpec>(m, "MoleculeSpec")
      .def_readonly("name", &MoleculeSpec::name)
      .def_readonly("geometry", &MoleculeSpec::geometry)
      .def_readonly("n_electrons", &MoleculeSpec::n_electrons)
      .def_readonly("n_spin_orbitals", &MoleculeSpec::n_spin_orbitals)
      .def_readonly("nuclear_repulsion", &MoleculeSpec::nuclear_repulsion);

  py::class_<DenseState>(m, "DenseState")
      .def_property_readonly("n_qubits",
                             [](const DenseState& s) { return s.n_qubits; })
      .def_property_readonly("is_density", &DenseState::is_density)
      .def_property_readonly("vector",
                             [](const DenseState& s) { return s.vec; })
      .def("density", &DenseState::density);

  py::class_<Circuit>(m, "Circuit")
      .def_property_readonly("n_qubits",
                             [](const Circuit& c) { return c.n_qubits; })
      .def_property_readonly("hard_cycle_count", &Circuit::hard_cycle_count)
      .def("to_json", &Circuit::to_json)
      .def_static("from_json", &Circuit::from_json);

  py::class_<CircuitTemplate>(m, "CircuitTemplate")
      .def_property_readonly(
          "n_params", [](const CircuitTemplate& t) { return t.n_params; })
      .def_property_readonly(
          "n_qubits", [](const CircuitTemplate& t) { return t.n_qubits; })
      .def("bind", [](const CircuitTemplate& t, std::vector<double> theta) {
        return t.bind(theta);
      });

  py::class_<VQEProblem>(m, "VQEProblem")
      .def_static("from_integral_file", &VQEProblem::from_integral_file,
                  py::arg("path"))
      .def_readonly("ansatz", &VQEProblem::ansatz)
      .def_readonly("hamiltonian", &VQEProblem::hamiltonian)
      .def_readonly("initial_state", &VQEProblem::initial_state)
      .def_readonly("energy_offset", &VQEProblem::energy_offset)
      .def_readonly("reference_energy", &VQEProblem::reference_energy)
      .def("with_noise", [](const VQEProblem& p, const std::string& noise) {
        VQEProblem out = p;
        out.noise = NoiseConfig::from_json(noise);
        return out;
      });

  m.def("load_integrals_spec",
        [](const std::filesystem::path& p) { return load_integrals(p).spec; },
        py::arg("path"));
  m.def("load_pauli_sum", &load_pauli_sum, py::arg("path"));
  m.def("jordan_wigner_file",
        [](const std::filesystem::path& p) {
          return jordan_wigner(load_integrals(p).hamiltonian);
        },
        py::arg("path"),
        "Jordan-Wigner image of the Hamiltonian stored in an integral file");
  m.def("hartree_fock_state", &hartree_fock_state, py::arg("spec"));
  m.def("ground_energy_exact",
        [](const PauliSum& h) {
          auto g = ground_energy_exact(h);
          return py::make_tuple(g.energy, std::move(g.eigenvector));
        },
        py::arg("hamiltonian"));
  m.def("expectation", &expectation, py::arg("state"), py::arg("observable"));
  m.def("sample_expectation",
        [](const DenseState& s, const PauliSum& obs, uint64_t shots,
           uint64_t seed) {
          Rng rng(seed);
          return sample_expectation(s, obs, shots, rng);
        },
        py::arg("state"), py::arg("observable"), py::arg("shots_per_term"),
        py::arg("seed"));

  m.def("build_ansatz",
        [](const std::filesystem::path& path) {
          return trotterize(build_cluster(load_integrals(path).spec));
        },
        py::arg("path"), "UCC-SD circuit template for an integral file");
  m.def("simulate",
        [](const Circuit& c, const DenseState& in) { return simulate(c, in); },
        py::arg("circuit"), py::arg("state"));
  m.def("simulate_noisy",
        [](const Circuit& c, const std::string& noise_json,
           const DenseState& in, int ring) {
          return simulate(attach_noise(c, NoiseConfig::from_json(noise_json),
                                       ring),
                          in);
        },
        py::arg("circuit"), py::arg("noise_json"), py::arg("state"),
        py::arg("ring") = 0);
  m.def("dress_circuit",
        [](const Circuit& c, uint64_t seed) {
          Rng rng(seed);
          return dress_circuit(c, rng);
        },
        py::arg("circuit"), py::arg("seed"));
  m.def("magnify", &magnify, py::arg("circuit"), py::arg("factor"));

  m.def("cycle_noise_ptm",
        [](const std::string& noise_json, int control, int target, int ring) {
          const auto cn = cycle_noise_channel(
              NoiseConfig::from_json(noise_json), control, target, ring);
          Eigen::MatrixXd matrix = cn.ptm.matrix();
          return py::make_tuple(cn.support, std::move(matrix));
        },
        py::arg("noise_json"), py::arg("control") = 0, py::arg("target") = 1,
        py::arg("ring") = 4);
  m.def("twirl_ptm_matrix",
        [](const Eigen::MatrixXd& r, int n_qubits) {
          Eigen::MatrixXd out = twirl_ptm(ChannelPTM(n_qubits, r)).matrix();
          return out;
        },
        py::arg("ptm"), py::arg("n_qubits"));
  m.def("dressed_cnot_infidelity",
        [](const std::string& noise_json, int control, int target, int ring) {
          return dressed_cnot_infidelity(NoiseConfig::from_json(noise_json),
                                         control, target, ring);
        },
        py::arg("noise_json"), py::arg("control") = 0, py::arg("target") = 1,
        py::arg("ring") = 4);
  m.def("calibrate_noise",
        [](const std::string& noise_json, double target, int control,
           int target_q, int ring) {
          return calibrate_to_infidelity(NoiseConfig::from_json(noise_json),
                                         target, control, target_q, ring)
              .to_json();
        },
        py::arg("noise_json"), py::arg("target_infidelity"),
        py::arg("control") = 0, py::arg("target") = 1, py::arg("ring") = 4);

  m.def("extrapolate",
        [](const std::vector<std::pair<int, double>>& points,
           const std::string& order) {
          ZNEConfig cfg;
          cfg.order = order == "quadratic" ? ZNEConfig::Order::quadratic
                                           : ZNEConfig::Order::linear;
          std::vector<int> factors;
          for (const auto& [r, e] : points) factors.push_back(r);
          cfg.factors = factors;
          const auto fit = extrapolate(points, cfg);
          return py::make_tuple(fit.zero_noise_value, fit.coefficients);
        },
        py::arg("points"), py::arg("order") = "linear");

  m.def("mitigated_energy",
        [](const CircuitTemplate& tmpl, std::vector<double> theta,
           const PauliSum& h, const std::string& noise_json,
           const std::string& mitigation, const DenseState& input,
           uint64_t seed, const std::string& measurement, uint64_t shots) {
          const auto result = mitigated_energy(
              tmpl, theta, h, NoiseConfig::from_json(noise_json),
              mitigation_of(mitigation), measurement_of(measurement, shots),
              input, seed);
          return py::make_tuple(result.energy,
                                result.diagnostics.to_json());
        },
        py::arg("template"), py::arg("theta"), py::arg("hamiltonian"),
        py::arg("noise_json"), py::arg("mitigation"), py::arg("state"),
        py::arg("seed") = 1, py::arg("measurement") = "exact",
        py::arg("shots") = 100000);

  m.def("run_trial",
        [](const VQEProblem& problem, const std::string& mitigation,
           uint64_t seed, const std::string& optimizer, int max_evaluations,
           const std::string& measurement, uint64_t shots) {
          OptimizerConfig opt;
          opt.method = OptimizerConfig::method_from_name(optimizer);
          opt.max_evaluations = max_evaluations;
          const auto record =
              run_trial(problem, mitigation_of(mitigation),
                        measurement_of(measurement, shots), opt, seed);
          return record.to_json();
        },
        py::arg("problem"), py::arg("mitigation"), py::arg("seed"),
        py::arg("optimizer") = "powell", py::arg("max_evaluations") = 400,
        py::arg("measurement") = "exact", py::arg("shots") = 100000);

  m.def("run_ensemble",
        [](const VQEProblem& problem, const std::string& mitigation,
           int n_trials, uint64_t base_seed, const std::string& optimizer,
           int max_evaluations, int workers) {
          OptimizerConfig opt;
          opt.method = OptimizerConfig::method_from_name(optimizer);
          opt.max_evaluations = max_evaluations;
          const auto s =
              run_ensemble(problem, mitigation_of(mitigation),
                           Measurement::exact(), opt, n_trials, base_seed,
                           workers);
          py::dict out;
          out["n_trials"] = s.n_trials;
          out["n_failed"] = s.n_failed;
          out["energies"] = s.energies;
          out["min"] = s.min;
          out["median"] = s.median;
          out["q25"] = s.q25;
          out["q75"] = s.q75;
          out["records_jsonl"] = s.to_json_lines();
          return out;
        },
        py::arg("problem"), py::arg("mitigation"), py::arg("n_trials"),
        py::arg("base_seed"), py::arg("optimizer") = "powell",
        py::arg("max_evaluations") = 400, py::arg("workers") = 1);

  m.attr("__version__") = kArtifactVersion;
}
