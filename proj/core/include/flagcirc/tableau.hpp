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

#ifndef FLAGCIRC_TABLEAU_HPP
#define FLAGCIRC_TABLEAU_HPP

#include "flagcirc/circuit.hpp"
#include "flagcirc/stabilizer.hpp"

namespace flagcirc {

enum class LogicalState { ZERO, PLUS };

/// Conjugate a Pauli operator forward through a unitary circuit (CNOTs and
/// single-qubit Cliffords only), phases discarded.
PauliString conjugate_through_circuit(const CliffordCircuit &c, const PauliString &p);
/// Conjugate a single instruction (CNOT or U1).
PauliString conjugate_through(const PauliString &p, const Instruction &inst);

/// Unitary encoder mapping |0>^n to the codestate stabilized by
/// <generators, logical Z (ZERO) or logical X (PLUS)>. Synthesized by GF(2)
/// Gaussian elimination over the symplectic tableau; the group of input Z
/// operators is pushed exactly onto the target group (row-space equality).
/// The circuit contains gates only (no preparations); logical qubit i of the
/// code corresponds to input qubit n-k+i.
CliffordCircuit synth_prep(const StabilizerCode &code, LogicalState state);

/// Decode-then-re-encode implementation of logical H for an [[n,1,d]] code:
/// synth_prep(ZERO)^-1 followed by synth_prep(PLUS), peephole-simplified
/// (adjacent inverse-pair cancellation only). Verified against
/// verify_logical_action before being returned.
CliffordCircuit synth_logical_h(const StabilizerCode &code);

enum class LogicalTarget { IDENTITY, HADAMARD };

/// Conjugates every generator and logical representative through the circuit
/// and checks, phase-free and modulo the stabilizer group, that generators
/// stay in <G> and logicals map according to the target.
bool verify_logical_action(const CliffordCircuit &c, const StabilizerCode &code, LogicalTarget target);

/// Push the stabilizer group of |0>^n through the circuit and compare with
/// the given group (row-space equality over the symplectic representation).
bool pushforward_matches(const CliffordCircuit &c, const std::vector<PauliString> &target_group);

/// Cancel adjacent inverse pairs (CX-CX, composable single-qubit gates) until
/// a fixed point; drops single-qubit gates whose frame action is trivial.
CliffordCircuit peephole_cancel(const CliffordCircuit &c);

/// Inverse of a unitary circuit (gates only).
CliffordCircuit inverse_circuit(const CliffordCircuit &c);

}  // namespace flagcirc

#endif
