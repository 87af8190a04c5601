#!/usr/bin/env python3
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

"""Generates the bundled H2/STO-3G fixtures under data/h2/.

Everything is computed from scratch (s-type Gaussian integrals, symmetry
MOs, Fock-space diagonalization) so the emitted files double as independent
reference data for the C++ test suites:

  h2_<R>.ints   one-/two-body coefficients in the toolkit's integral format
  h2_<R>.pauli  the qubit Hamiltonian (Jordan-Wigner, computed here in
                python as a cross-implementation oracle)
  reference.json  per-geometry HF / FCI energies and bookkeeping constants

The .ints files store the Hamiltonian with annihilation operators written to
the left of creation operators (`h_pq a_p a_q+` and `h_pqrs a_p a_q a_r+ a_s+`).
Rewriting the standard normal-ordered Hamiltonian into that shape produces a
scalar remainder, which is folded into the file's `enuc` constant; the checks
below assert that spectra and total energies are preserved exactly.

Run from the repository root:  python3 scripts/generate_h2_fixtures.py
"""

import itertools
import json
import math
import os

import numpy as np

ANGSTROM_TO_BOHR = 1.0 / 0.529177210903

# STO-3G hydrogen 1s (exponents include the standard 1.24 scale factor)
STO3G_ALPHA = np.array([3.42525091, 0.62391373, 0.16885540])
STO3G_D = np.array([0.15432897, 0.53532814, 0.44463454])

BOND_LENGTHS_ANGSTROM = [0.3, 0.5, 0.7414, 1.0, 1.5, 2.0, 2.5]


# ----------------------------------------------------------------------
# s-type Gaussian integrals
# ----------------------------------------------------------------------

def boys_f0(t):
    if t < 1e-12:
        return 1.0 - t / 3.0
    return 0.5 * math.sqrt(math.pi / t) * math.erf(math.sqrt(t))


def prim_norm(alpha):
    return (2.0 * alpha / math.pi) ** 0.75


def build_ao_integrals(r_bohr):
    """Returns (S, T, V, ERI) in the 2-function AO basis of H2."""
    centers = [np.array([0.0, 0.0, 0.0]), np.array([0.0, 0.0, r_bohr])]
    nprim = len(STO3G_ALPHA)
    # contracted coefficients including primitive norms
    coef = STO3G_D * np.array([prim_norm(a) for a in STO3G_ALPHA])

    def pair(i, j, a, b):
        ra, rb = centers[i], centers[j]
        p = a + b
        mu = a * b / p
        rab2 = float(np.dot(ra - rb, ra - rb))
        k = math.exp(-mu * rab2)
        rp = (a * ra + b * rb) / p
        return p, mu, rab2, k, rp

    S = np.zeros((2, 2))
    T = np.zeros((2, 2))
    V = np.zeros((2, 2))
    for i, j in itertools.product(range(2), repeat=2):
        for ip, jp in itertools.product(range(nprim), repeat=2):
            a, b = STO3G_ALPHA[ip], STO3G_ALPHA[jp]
            c = coef[ip] * coef[jp]
            p, mu, rab2, k, rp = pair(i, j, a, b)
            s = (math.pi / p) ** 1.5 * k
            S[i, j] += c * s
            T[i, j] += c * mu * (3.0 - 2.0 * mu * rab2) * s
            for rc in centers:
                t = p * float(np.dot(rp - rc, rp - rc))
                V[i, j] += -c * 2.0 * math.pi / p * k * boys_f0(t)

    eri = np.zeros((2, 2, 2, 2))  # chemists' notation (ij|kl)
    for i, j, k_, l in itertools.product(range(2), repeat=4):
        for ip, jp, kp, lp in itertools.product(range(nprim), repeat=4):
            a, b = STO3G_ALPHA[ip], STO3G_ALPHA[jp]
            c_, d = STO3G_ALPHA[kp], STO3G_ALPHA[lp]
            w = coef[ip] * coef[jp] * coef[kp] * coef[lp]
            p, _, _, kab, rp = pair(i, j, a, b)
            q, _, _, kcd, rq = pair(k_, l, c_, d)
            t = p * q / (p + q) * float(np.dot(rp - rq, rp - rq))
            eri[i, j, k_, l] += (
                w
                * 2.0 * math.pi ** 2.5
                / (p * q * math.sqrt(p + q))
                * kab * kcd * boys_f0(t)
            )
    return S, T, V, eri


def mo_integrals(r_bohr):
    """Symmetry-adapted MOs for H2; returns (h_mo, g_mo_chem, e_hf_elec)."""
    S, T, V, eri = build_ao_integrals(r_bohr)
    s12 = S[0, 1]
    cg = np.array([1.0, 1.0]) / math.sqrt(2.0 * (1.0 + s12))
    cu = np.array([1.0, -1.0]) / math.sqrt(2.0 * (1.0 - s12))
    C = np.stack([cg, cu], axis=1)  # C[:, m] = AO coefficients of MO m

    hcore = T + V
    h_mo = C.T @ hcore @ C
    g_mo = np.einsum("ai,bj,ck,dl,abcd->ijkl", C, C, C, C, eri, optimize=True)
    # RHF, both electrons in the bonding MO
    e_hf_elec = 2.0 * h_mo[0, 0] + g_mo[0, 0, 0, 0]
    return h_mo, g_mo, e_hf_elec


# ----------------------------------------------------------------------
# spin-orbital Hamiltonian (interleaved: 2m = (m, alpha), 2m+1 = (m, beta))
# ----------------------------------------------------------------------

def spin_orbital_hamiltonian(h_mo, g_mo):
    n = 4
    h_so = np.zeros((n, n))
    for p, q in itertools.product(range(n), repeat=2):
        if p % 2 == q % 2:
            h_so[p, q] = h_mo[p // 2, q // 2]
    # physicists' <pq|rs> from chemists' (pr|qs)
    g_so = np.zeros((n, n, n, n))
    for p, q, r, s in itertools.product(range(n), repeat=4):
        if p % 2 == r % 2 and q % 2 == s % 2:
            g_so[p, q, r, s] = g_mo[p // 2, r // 2, q // 2, s // 2]

    terms = {}  # ops tuple -> coeff; ops are (index, is_creation)
    for p, q in itertools.product(range(n), repeat=2):
        if abs(h_so[p, q]) > 1e-14:
            terms[((p, True), (q, False))] = terms.get(((p, True), (q, False)), 0.0) + h_so[p, q]
    for p, q, r, s in itertools.product(range(n), repeat=4):
        if abs(g_so[p, q, r, s]) > 1e-14:
            key = ((p, True), (q, True), (s, False), (r, False))
            terms[key] = terms.get(key, 0.0) + 0.5 * g_so[p, q, r, s]
    return terms


# ----------------------------------------------------------------------
# tiny fermion algebra: anti-normal ordering (annihilators left)
# ----------------------------------------------------------------------

def anti_normal_order(terms):
    """Rewrites sum(terms) with annihilators left of creators.

    Returns (constant, ordered_terms) where ordered_terms maps
    (ann_tuple, cre_tuple) -> coeff with both tuples strictly ascending.
    """
    constant = 0.0
    out = {}
    stack = [(ops, coeff) for ops, coeff in terms.items()]
    while stack:
        ops, coeff = stack.pop()
        if abs(coeff) < 1e-16:
            continue
        # find a creation immediately left of an annihilation and swap
        swapped = False
        for i in range(len(ops) - 1):
            (p, cp), (q, cq) = ops[i], ops[i + 1]
            if cp and not cq:
                rest = ops[:i] + (ops[i + 1], ops[i]) + ops[i + 2:]
                stack.append((rest, -coeff))
                if p == q:
                    stack.append((ops[:i] + ops[i + 2:], coeff))
                swapped = True
                break
        if swapped:
            continue
        # now of shape a..a c..c: canonical sort within each block
        k = sum(1 for _, c in ops if not c)
        ann = [p for p, _ in ops[:k]]
        cre = [p for p, _ in ops[k:]]

        def sort_sign(idx):
            sign = 1
            idx = list(idx)
            for i in range(len(idx)):
                for j in range(len(idx) - 1 - i):
                    if idx[j] > idx[j + 1]:
                        idx[j], idx[j + 1] = idx[j + 1], idx[j]
                        sign = -sign
            return tuple(idx), sign

        if len(set(ann)) != len(ann) or len(set(cre)) != len(cre):
            continue  # repeated fermionic operator annihilates the term
        ann_t, s1 = sort_sign(ann)
        cre_t, s2 = sort_sign(cre)
        coeff *= s1 * s2
        if not ann_t and not cre_t:
            constant += coeff
        else:
            key = (ann_t, cre_t)
            out[key] = out.get(key, 0.0) + coeff
    out = {k: v for k, v in out.items() if abs(v) > 1e-14}
    return constant, out


# ----------------------------------------------------------------------
# Fock-space matrices (the FCI oracle) and python-side Jordan-Wigner
# ----------------------------------------------------------------------

def fock_matrix(terms, n):
    """Occupation-basis matrix of a fermion operator given as ops->coeff."""
    dim = 1 << n
    m = np.zeros((dim, dim), dtype=complex)
    for ops, coeff in terms.items():
        for ket in range(dim):
            state, sign = ket, 1
            ok = True
            for p, is_cre in reversed(ops):
                occ = (state >> p) & 1
                if is_cre == bool(occ):
                    ok = False
                    break
                parity = bin(state & ((1 << p) - 1)).count("1")
                sign *= -1 if (parity & 1) else 1
                state ^= 1 << p
            if ok:
                m[state, ket] += sign * coeff
    return m


PAULI_MUL = {}
for a in "IXYZ":
    PAULI_MUL[("I", a)] = (1, a)
    PAULI_MUL[(a, "I")] = (1, a)
    PAULI_MUL[(a, a)] = (1, "I")
PAULI_MUL.update({("X", "Y"): (1j, "Z"), ("Y", "X"): (-1j, "Z"),
                  ("Y", "Z"): (1j, "X"), ("Z", "Y"): (-1j, "X"),
                  ("Z", "X"): (1j, "Y"), ("X", "Z"): (-1j, "Y")})


def pauli_word_mul(wa, wb):
    phase, out = 1, []
    for la, lb in zip(wa, wb):
        ph, l = PAULI_MUL[(la, lb)]
        phase *= ph
        out.append(l)
    return phase, "".join(out)


def jw_factor(p, is_creation, n):
    """a_p+ -> 1/2 Z..Z (X - iY);  a_p -> 1/2 Z..Z (X + iY)."""
    zs = "Z" * p
    tail = "I" * (n - p - 1)
    sx = zs + "X" + tail
    sy = zs + "Y" + tail
    sgn = -0.5j if is_creation else 0.5j
    return {sx: 0.5, sy: sgn}


def jw_map(terms, n):
    total = {}
    for ops, coeff in terms.items():
        acc = {"I" * n: complex(coeff)}
        for p, is_cre in ops:
            nxt = {}
            for wa, ca in acc.items():
                for wb, cb in jw_factor(p, is_cre, n).items():
                    ph, w = pauli_word_mul(wa, wb)
                    nxt[w] = nxt.get(w, 0) + ca * cb * ph
            acc = nxt
        for w, c in acc.items():
            total[w] = total.get(w, 0) + c
    return {w: c for w, c in total.items() if abs(c) > 1e-13}


PAULI_1Q = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_sum_matrix(psum, n):
    dim = 1 << n
    m = np.zeros((dim, dim), dtype=complex)
    for word, coeff in psum.items():
        term = np.array([[1.0]], dtype=complex)
        for letter in word:  # qubit 0 leftmost = least significant bit
            term = np.kron(PAULI_1Q[letter], term)
        m += coeff * term
    return m


# ----------------------------------------------------------------------
# file emission
# ----------------------------------------------------------------------

def fmt(x):
    return repr(float(x))


def write_ints(path, norb, nelec, enuc, ordered):
    lines = [f"norb {norb} nelec {nelec} enuc {fmt(enuc)}"]
    for (ann, cre), coeff in sorted(ordered.items()):
        if len(ann) == 1:
            lines.append(f"1 {ann[0]} {cre[0]} {fmt(coeff)}")
        elif len(ann) == 2:
            lines.append(f"2 {ann[0]} {ann[1]} {cre[0]} {cre[1]} {fmt(coeff)}")
        else:
            raise ValueError("unexpected term shape")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def complex_repr(c):
    if abs(c.imag) < 1e-13:
        return fmt(c.real)
    sign = "+" if c.imag >= 0 else ""
    return f"{fmt(c.real)}{sign}{fmt(c.imag)}j"


def write_pauli(path, psum):
    words = sorted(psum.keys())
    with open(path, "w") as f:
        for w in words:
            f.write(f"{complex_repr(psum[w])} {w}\n")


def run(outdir):
    os.makedirs(outdir, exist_ok=True)
    reference = []
    for r_ang in BOND_LENGTHS_ANGSTROM:
        r_bohr = r_ang * ANGSTROM_TO_BOHR
        enuc_phys = 1.0 / r_bohr
        h_mo, g_mo, e_hf_elec = mo_integrals(r_bohr)
        std_terms = spin_orbital_hamiltonian(h_mo, g_mo)
        shift, ordered = anti_normal_order(std_terms)

        # written form must reproduce the standard operator exactly
        n = 4
        m_std = fock_matrix(std_terms, n)
        written = {}
        for (ann, cre), coeff in ordered.items():
            ops = tuple((p, False) for p in ann) + tuple((p, True) for p in cre)
            written[ops] = coeff
        m_written = fock_matrix(written, n)
        assert np.max(np.abs(m_std - (m_written + shift * np.eye(1 << n)))) < 1e-10

        # FCI (Fock-space minimum; asserted to live in the 2-electron sector)
        evals, evecs = np.linalg.eigh(m_std)
        e_fci = evals[0] + enuc_phys
        gs = evecs[:, 0]
        num = sum(np.abs(gs[i]) ** 2 * bin(i).count("1") for i in range(1 << n))
        assert abs(num - 2.0) < 1e-8, f"ground state not in 2e sector at R={r_ang}"

        # python JW as a cross-implementation oracle for the C++ mapping
        psum = jw_map(written, n)
        m_jw = pauli_sum_matrix(psum, n)
        assert np.max(np.abs(m_jw - m_written)) < 1e-10

        # HF determinant |1100> = occupation bits 0,1 -> index 3
        e_hf_fock = m_std[3, 3].real + enuc_phys
        assert abs(e_hf_fock - (e_hf_elec + enuc_phys)) < 1e-10

        enuc_file = enuc_phys + shift
        tag = f"{r_ang:.4f}".rstrip("0").rstrip(".")
        write_ints(os.path.join(outdir, f"h2_{tag}.ints"), n, 2, enuc_file, ordered)
        write_pauli(os.path.join(outdir, f"h2_{tag}.pauli"), psum)
        reference.append({
            "r_angstrom": r_ang,
            "ints_file": f"h2_{tag}.ints",
            "pauli_file": f"h2_{tag}.pauli",
            "enuc_physical": enuc_phys,
            "enuc_file": enuc_file,
            "reorder_shift": shift,
            "e_hf": e_hf_elec + enuc_phys,
            "e_fci": e_fci,
            "n_pauli_terms": len(psum),
            "n_pauli_terms_non_identity": len([w for w in psum if set(w) != {"I"}]),
        })
        print(f"R={r_ang:6.4f} A  E_HF={e_hf_elec + enuc_phys:+.9f}  "
              f"E_FCI={e_fci:+.9f}  terms={len(psum)}")

    # sanity anchor: R = 1.4 bohr against the classic closed-shell numbers
    h_mo, g_mo, e_hf_elec = mo_integrals(1.4)
    e_hf_total = e_hf_elec + 1.0 / 1.4
    assert abs(e_hf_total - (-1.1167)) < 2e-3, e_hf_total

    with open(os.path.join(outdir, "reference.json"), "w") as f:
        json.dump(reference, f, indent=1)
    print(f"wrote {len(reference)} geometries to {outdir}")


if __name__ == "__main__":
    here = os.path.dirname(os.path.abspath(__file__))
    run(os.path.join(here, "..", "data", "h2"))
