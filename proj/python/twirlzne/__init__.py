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

"""Randomized compiling + zero-noise extrapolation toolkit for VQE.

The heavy lifting lives in the compiled extension; this package re-exports
its surface.
"""

from ._twirlzne import (  # noqa: F401
    Circuit,
    CircuitTemplate,
    DenseState,
    MoleculeSpec,
    PauliString,
    PauliSum,
    TwirlzneError,
    VQEProblem,
    __version__,
    build_ansatz,
    calibrate_noise,
    cycle_noise_ptm,
    dress_circuit,
    dressed_cnot_infidelity,
    expectation,
    extrapolate,
    ground_energy_exact,
    hartree_fock_state,
    jordan_wigner_file,
    load_integrals_spec,
    load_pauli_sum,
    magnify,
    mitigated_energy,
    run_ensemble,
    run_trial,
    sample_expectation,
    simulate,
    simulate_noisy,
    twirl_ptm_matrix,
)
