// Copyright 2025 The flagcirc authors
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

#ifndef FLAGCIRC_STABILIZER_HPP
#define FLAGCIRC_STABILIZER_HPP

#include <optional>
#include <string>
#include <vector>

#include "flagcirc/gf2.hpp"
#include "flagcirc/pauli.hpp"

namespace flagcirc {

/// An [[n, k, d]] stabilizer code: commuting generators, logical operator
/// representatives, and optionally destabilizers paired with the generators.
struct StabilizerCode {
    std::string name;
    uint32_t n = 0;
    uint32_t k = 0;
    int d = 0;
    std::vector<PauliString> generators;
    std::vector<PauliString> logical_x;
    std::vector<PauliString> logical_z;
    std::vector<PauliString> destabilizers;  // optional; computed on demand

    /// Generator commutation, symplectic rank n-k, logical (anti)commutation.
    void validate() const;
    bool is_css() const;
    /// Text export: one Pauli string per line with section headers.
    std::string to_text() const;
    static StabilizerCode parse(const std::string &text);
};

/// The [[15,1,3]] quantum Reed-Muller (tetrahedral / 3D color) code:
/// 4 weight-8 X generators, 10 weight-4 Z generators, weight-3 logical Z,
/// weight-7 logical X.
StabilizerCode qrm15();
/// The [[7,1,3]] Steane code.
StabilizerCode steane7();
/// The [[5,1,3]] perfect code (non-CSS).
StabilizerCode perfect5();
/// The trivial "code" stabilizing |0...0> on n qubits (k = 0): used for cat
/// states and prepared-ancilla verification.
StabilizerCode all_zeros_code(uint32_t n);
/// GHZ/cat state on n qubits as a [[n, 0]] stabilizer group.
StabilizerCode cat_code(uint32_t n);

StabilizerCode code_by_name(const std::string &name);

/// Minimum weight of p * S over all stabilizer group elements S. Brute force
/// over 2^g group elements; g is capped at 16.
int weight_mod_stabilizers(const PauliString &p, const StabilizerCode &code);

/// Helper for fast coset equality tests: reduces the symplectic vector of p
/// by the row space of the group generators, yielding a canonical coset
/// representative (equal iff the operators differ by a stabilizer).
class StabilizerCoset {
  public:
    explicit StabilizerCoset(const StabilizerCode &code);
    explicit StabilizerCoset(const std::vector<PauliString> &group, size_t num_qubits);
    /// Canonical residue of p's coset, as packed bytes (hashable).
    std::string residue(const PauliString &p) const;
    bool in_group(const PauliString &p) const;

  private:
    size_t n_;
    std::vector<std::vector<uint64_t>> basis_;  // reduced symplectic basis rows
    std::vector<size_t> pivot_;
    std::vector<uint64_t> to_vec(const PauliString &p) const;
};

/// Destabilizers for the code's generators: d_i anticommutes with generator i
/// only (and commutes with the logicals). Computed by symplectic elimination.
std::vector<PauliString> compute_destabilizers(const StabilizerCode &code);

}  // namespace flagcirc

#endif
