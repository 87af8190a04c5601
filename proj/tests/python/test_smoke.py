# Copyright 2026 The twirlzne authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Smoke tests of the python bindings against the bundled H2 fixtures."""

import json
import math
import os

import pytest

try:
    import twirlzne as tz
except ImportError:
    import _twirlzne as tz

DATA = os.path.join(os.environ.get("TZ_DATA_DIR", "data"), "h2")
EQ = os.path.join(DATA, "h2_0.7414.ints")


@pytest.fixture(scope="module")
def reference():
    with open(os.path.join(DATA, "reference.json")) as f:
        entries = json.load(f)
    return {e["r_angstrom"]: e for e in entries}


def test_pauli_roundtrip():
    s = tz.PauliSum.parse("0.5 XX\n-0.25j YZ\n")
    assert len(s) == 2
    assert s.terms()["YZ"] == -0.25j
    back = tz.PauliSum.parse(s.to_text())
    assert back.terms() == s.terms()


def test_fci_matches_reference(reference):
    h = tz.jordan_wigner_file(EQ)
    spec = tz.load_integrals_spec(EQ)
    energy, _ = tz.ground_energy_exact(h)
    total = energy + spec.nuclear_repulsion
    assert abs(total - reference[0.7414]["e_fci"]) < 1e-9

    bundled = tz.load_pauli_sum(os.path.join(DATA, "h2_0.7414.pauli"))
    assert len(bundled) == len(h)


def test_hf_energy(reference):
    spec = tz.load_integrals_spec(EQ)
    h = tz.jordan_wigner_file(EQ)
    hf = tz.hartree_fock_state(spec)
    e = tz.expectation(hf, h) + spec.nuclear_repulsion
    assert abs(e - reference[0.7414]["e_hf"]) < 1e-9


def test_ansatz_at_zero_is_hf():
    spec = tz.load_integrals_spec(EQ)
    h = tz.jordan_wigner_file(EQ)
    tmpl = tz.build_ansatz(EQ)
    assert tmpl.n_params == 3
    hf = tz.hartree_fock_state(spec)
    out = tz.simulate(tmpl.bind([0.0, 0.0, 0.0]), hf)
    assert abs(tz.expectation(out, h) - tz.expectation(hf, h)) < 1e-10


def test_extrapolate_closed_form():
    value, coeffs = tz.extrapolate([(1, 1.0), (3, 0.8)])
    assert abs(value - 1.1) < 1e-12
    assert len(coeffs) == 2


def test_mitigated_energy_orders():
    problem = tz.VQEProblem.from_integral_file(EQ)
    noise = json.dumps({"model": "over_rotation", "epsilon": 0.02})
    theta = [0.0, 0.0, -0.11]
    noiseless = tz.expectation(
        tz.simulate(problem.ansatz.bind(theta), problem.initial_state),
        problem.hamiltonian,
    )
    e_plain, _ = tz.mitigated_energy(
        problem.ansatz, theta, problem.hamiltonian, noise, "none",
        problem.initial_state, seed=3,
    )
    e_mit, diag = tz.mitigated_energy(
        problem.ansatz, theta, problem.hamiltonian, noise, "rc+zne",
        problem.initial_state, seed=3,
    )
    assert abs(e_mit - noiseless) < abs(e_plain - noiseless)
    assert json.loads(diag)["factors"] == [1, 3]


def test_dressing_preserves_semantics():
    problem = tz.VQEProblem.from_integral_file(EQ)
    circuit = problem.ansatz.bind([0.2, -0.1, 0.3])
    dressed = tz.dress_circuit(circuit, seed=12)
    a = tz.simulate(circuit, problem.initial_state)
    b = tz.simulate(dressed, problem.initial_state)
    e_a = tz.expectation(a, problem.hamiltonian)
    e_b = tz.expectation(b, problem.hamiltonian)
    assert abs(e_a - e_b) < 1e-10
    assert tz.magnify(circuit, 3).hard_cycle_count == 3 * circuit.hard_cycle_count


def test_calibration():
    noise = json.dumps({"model": "over_rotation", "epsilon": 0.02})
    tuned = tz.calibrate_noise(noise, 1e-3, ring=2)
    achieved = tz.dressed_cnot_infidelity(tuned, ring=2)
    assert math.isclose(achieved, 1e-3, rel_tol=1e-5)


def test_twirl_is_diagonal():
    noise = json.dumps({"model": "xi_rotation", "phi_deg": 3.6})
    support, ptm = tz.cycle_noise_ptm(noise, ring=4)
    assert support == [0, 1]
    twirled = tz.twirl_ptm_matrix(ptm, len(support))
    off = max(
        abs(twirled[a][b])
        for a in range(len(twirled))
        for b in range(len(twirled))
        if a != b
    )
    assert off < 1e-12


def test_trial_determinism():
    problem = tz.VQEProblem.from_integral_file(EQ).with_noise(
        json.dumps({"model": "over_rotation", "epsilon": 0.02})
    )
    a = tz.run_trial(problem, "rc20+zne", seed=5, max_evaluations=15)
    b = tz.run_trial(problem, "rc20+zne", seed=5, max_evaluations=15)
    assert a == b
    record = json.loads(a)
    assert record["evaluations"] == len(record["trace"])


def test_ensemble_summary():
    problem = tz.VQEProblem.from_integral_file(EQ)
    s = tz.run_ensemble(problem, "none", n_trials=3, base_seed=9,
                        max_evaluations=50)
    assert s["n_trials"] == 3
    assert len(s["energies"]) == 3
    assert s["min"] == min(s["energies"])
    assert abs(s["min"] - problem.reference_energy) < 0.05
