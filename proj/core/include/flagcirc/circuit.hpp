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

#ifndef FLAGCIRC_CIRCUIT_HPP
#define FLAGCIRC_CIRCUIT_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "flagcirc/pauli.hpp"

namespace flagcirc {

enum class QubitRole : uint8_t {
    DATA = 0,
    FLAG_X,    // prepared |+>, measured in the X basis; catches Z errors
    FLAG_Z,    // prepared |0>, measured in the Z basis; catches X errors
    META_X,
    META_Z,
    EC_ANCILLA,
};
std::string role_name(QubitRole r);
QubitRole role_from_name(const std::string &s);

enum class Op : uint8_t { PREP_Z, PREP_X, CNOT, U1, MEAS_Z, MEAS_X, TICK };

struct Instruction {
    Op op;
    uint32_t a = 0;  // control for CNOT, the qubit otherwise
    uint32_t b = 0;  // target for CNOT
    SingleQubitClifford u;  // for U1

    static Instruction prep_z(uint32_t q) { return {Op::PREP_Z, q, 0, {}}; }
    static Instruction prep_x(uint32_t q) { return {Op::PREP_X, q, 0, {}}; }
    static Instruction cnot(uint32_t c, uint32_t t);
    static Instruction u1(uint32_t q, SingleQubitClifford u) { return {Op::U1, q, 0, u}; }
    static Instruction meas_z(uint32_t q) { return {Op::MEAS_Z, q, 0, {}}; }
    static Instruction meas_x(uint32_t q) { return {Op::MEAS_X, q, 0, {}}; }
    static Instruction tick() { return {Op::TICK, 0, 0, {}}; }

    bool touches(uint32_t q) const;
    bool is_measurement() const { return op == Op::MEAS_Z || op == Op::MEAS_X; }
    bool is_preparation() const { return op == Op::PREP_Z || op == Op::PREP_X; }
};

/// An ordered Clifford circuit over preparations, CNOTs, single-qubit
/// Cliffords, and single-qubit measurements, with per-qubit roles and a set of
/// qubits carrying external input state.
class CliffordCircuit {
  public:
    CliffordCircuit() = default;
    explicit CliffordCircuit(uint32_t num_qubits);

    uint32_t num_qubits() const { return num_qubits_; }
    void ensure_qubits(uint32_t n);
    const std::vector<Instruction> &instructions() const { return instructions_; }
    std::vector<Instruction> &instructions() { return instructions_; }
    void append(const Instruction &inst);

    QubitRole role(uint32_t q) const;
    void set_role(uint32_t q, QubitRole r);
    const std::set<uint32_t> &inputs() const { return inputs_; }
    void add_input(uint32_t q);
    std::vector<uint32_t> qubits_with_role(QubitRole r) const;

    size_t measurement_count() const;
    /// Instruction indices of all measurements, in circuit order.
    std::vector<size_t> measurement_positions() const;
    /// Number of CNOT instructions.
    size_t cnot_count() const;

    /// Checks the schedule invariants: CNOT control != target, qubits are not
    /// measured or re-prepared out of order, measured-before-prepared, etc.
    /// Throws std::invalid_argument with a description on violation.
    void validate() const;

    /// Plain-text format. One instruction per line:
    ///   R q..., RX q..., CX c t, H q, S q, SDG q, X q, Y q, Z q,
    ///   M q..., MX q..., TICK
    /// plus directives `@role ROLE q...`, `@input q...` and `#` comments.
    static CliffordCircuit parse(const std::string &text);
    static CliffordCircuit parse_file(const std::string &path);
    std::string to_text() const;
    void write_file(const std::string &path) const;

  private:
    uint32_t num_qubits_ = 0;
    std::vector<Instruction> instructions_;
    std::vector<QubitRole> roles_;
    std::set<uint32_t> inputs_;
};

}  // namespace flagcirc

#endif
