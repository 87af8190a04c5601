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

#include "twirlzne/molecule.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace twirlzne {

namespace {

double parse_number(const std::string& tok, int lineno) {
  try {
    return parse_complex(tok).real();
  } catch (const ParseError&) {
    throw ParseError("line " + std::to_string(lineno) + ": bad number '" +
                     tok + "'");
  }
}

int parse_index(const std::string& tok, int norb, int lineno) {
  int v = -1;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError("line " + std::to_string(lineno) + ": bad index '" +
                     tok + "'");
  if (v < 0 || v >= norb)
    throw ParseError("line " + std::to_string(lineno) + ": orbital index " +
                     tok + " inconsistent with norb " + std::to_string(norb));
  return v;
}

// geometry label from names like "h2_0.7414.ints"
double geometry_from_name(const std::string& stem) {
  const auto pos = stem.find_last_of('_');
  if (pos == std::string::npos) return 0;
  const std::string tail = stem.substr(pos + 1);
  double v = 0;
  auto [p, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), v);
  return (ec == std::errc() && p == tail.data() + tail.size()) ? v : 0;
}

}  // namespace

IntegralProblem load_integrals(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());

  std::string line;
  int lineno = 0;

  // header
  std::string kw1, kw2, kw3, tok_norb, tok_nelec, tok_enuc;
  do {
    if (!std::getline(in, line)) throw ParseError("missing header line");
    ++lineno;
  } while (line.find_first_not_of(" \t\r") == std::string::npos ||
           line[line.find_first_not_of(" \t\r")] == '#');
  std::istringstream hs(line);
  if (!(hs >> kw1 >> tok_norb >> kw2 >> tok_nelec >> kw3 >> tok_enuc) ||
      kw1 != "norb" || kw2 != "nelec" || kw3 != "enuc")
    throw ParseError("line " + std::to_string(lineno) +
                     ": expected 'norb <N> nelec <M> enuc <E>'");

  MoleculeSpec spec;
  spec.name = path.stem().string();
  spec.geometry = geometry_from_name(spec.name);
  spec.n_spin_orbitals = parse_index(tok_norb, 1 << 16, lineno);
  spec.n_electrons = parse_index(tok_nelec, spec.n_spin_orbitals + 1, lineno);
  spec.nuclear_repulsion = parse_number(tok_enuc, lineno);
  if (spec.n_spin_orbitals <= 0)
    throw ParseError("norb must be positive");

  FermionOperator op(spec.n_spin_orbitals);
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    const int norb = spec.n_spin_orbitals;
    if (kind == "1" && toks.size() == 3) {
      const int p = parse_index(toks[0], norb, lineno);
      const int q = parse_index(toks[1], norb, lineno);
      op.add({{p, false}, {q, true}}, parse_number(toks[2], lineno));
    } else if (kind == "2" && toks.size() == 5) {
      const int p = parse_index(toks[0], norb, lineno);
      const int q = parse_index(toks[1], norb, lineno);
      const int r = parse_index(toks[2], norb, lineno);
      const int s = parse_index(toks[3], norb, lineno);
      op.add({{p, false}, {q, false}, {r, true}, {s, true}},
             parse_number(toks[4], lineno));
    } else {
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected '1 p q v' or '2 p q r s v'");
    }
  }
  return {spec, std::move(op)};
}

PauliSum load_pauli_sum(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return PauliSum::parse(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_pauli_sum(const std::filesystem::path& path, const PauliSum& sum) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << sum.to_text();
}

DenseState hartree_fock_state(const MoleculeSpec& spec) {
  if (spec.n_electrons > spec.n_spin_orbitals)
    throw ContractError("more electrons than spin-orbitals");
  const uint64_t bits = (spec.n_electrons >= 64)
                            ? ~0ULL
                            : ((1ULL << spec.n_electrons) - 1);
  return DenseState::basis_state(spec.n_spin_orbitals, bits);
}

}  // namespace twirlzne
