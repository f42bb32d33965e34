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
//
// Dense state-vector oracle for small circuits. Test-only and deliberately
// independent of the Pauli-frame implementation it cross-checks.

#ifndef FLAGCIRC_TESTS_ORACLE_STATEVECTOR_HPP
#define FLAGCIRC_TESTS_ORACLE_STATEVECTOR_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "flagcirc/circuit.hpp"
#include "flagcirc/frame.hpp"

namespace flagcirc_test {

using flagcirc::CliffordCircuit;
using flagcirc::FaultLocation;
using flagcirc::FaultSet;
using flagcirc::Instruction;
using flagcirc::Op;
using flagcirc::Pauli;

class StateVector {
  public:
    explicit StateVector(uint32_t n) : n_(n), amps_(size_t{1} << n, 0.0) {
        if (n > 14) {
            throw std::invalid_argument("oracle limited to 14 qubits");
        }
        amps_[0] = 1.0;
    }

    uint32_t num_qubits() const { return n_; }

    void apply_x(uint32_t q) {
        size_t bit = size_t{1} << q;
        for (size_t i = 0; i < amps_.size(); i++) {
            if (!(i & bit)) {
                std::swap(amps_[i], amps_[i | bit]);
            }
        }
    }
    void apply_z(uint32_t q) {
        size_t bit = size_t{1} << q;
        for (size_t i = 0; i < amps_.size(); i++) {
            if (i & bit) {
                amps_[i] = -amps_[i];
            }
        }
    }
    void apply_y(uint32_t q) {
        size_t bit = size_t{1} << q;
        std::complex<double> im(0, 1);
        for (size_t i = 0; i < amps_.size(); i++) {
            if (!(i & bit)) {
                auto a0 = amps_[i];
                auto a1 = amps_[i | bit];
                amps_[i] = -im * a1;
                amps_[i | bit] = im * a0;
            }
        }
    }
    void apply_h(uint32_t q) {
        size_t bit = size_t{1} << q;
        double s = 1.0 / std::sqrt(2.0);
        for (size_t i = 0; i < amps_.size(); i++) {
            if (!(i & bit)) {
                auto a0 = amps_[i];
                auto a1 = amps_[i | bit];
                amps_[i] = s * (a0 + a1);
                amps_[i | bit] = s * (a0 - a1);
            }
        }
    }
    void apply_s(uint32_t q) {
        size_t bit = size_t{1} << q;
        std::complex<double> im(0, 1);
        for (size_t i = 0; i < amps_.size(); i++) {
            if (i & bit) {
                amps_[i] *= im;
            }
        }
    }
    void apply_sdg(uint32_t q) {
        size_t bit = size_t{1} << q;
        std::complex<double> im(0, -1);
        for (size_t i = 0; i < amps_.size(); i++) {
            if (i & bit) {
                amps_[i] *= im;
            }
        }
    }
    void apply_cx(uint32_t c, uint32_t t) {
        size_t cb = size_t{1} << c, tb = size_t{1} << t;
        for (size_t i = 0; i < amps_.size(); i++) {
            if ((i & cb) && !(i & tb)) {
                std::swap(amps_[i], amps_[i | tb]);
            }
        }
    }
    void apply_pauli(uint32_t q, Pauli p) {
        switch (p) {
            case Pauli::I: break;
            case Pauli::X: apply_x(q); break;
            case Pauli::Y: apply_y(q); break;
            case Pauli::Z: apply_z(q); break;
        }
    }
    void apply_named(uint32_t q, const std::string &gate) {
        if (gate == "H") {
            apply_h(q);
        } else if (gate == "S") {
            apply_s(q);
        } else if (gate == "SDG") {
            apply_sdg(q);
        } else if (gate == "X") {
            apply_x(q);
        } else if (gate == "Y") {
            apply_y(q);
        } else if (gate == "Z") {
            apply_z(q);
        } else if (gate != "I") {
            throw std::invalid_argument("oracle: unknown gate " + gate);
        }
    }

    /// Probability that measuring qubit q in the Z basis yields 1.
    double prob_one(uint32_t q) const {
        size_t bit = size_t{1} << q;
        double p = 0;
        for (size_t i = 0; i < amps_.size(); i++) {
            if (i & bit) {
                p += std::norm(amps_[i]);
            }
        }
        return p;
    }
    /// Project qubit q onto outcome o (0/1) in the Z basis and renormalize.
    void project_z(uint32_t q, int o) {
        size_t bit = size_t{1} << q;
        double norm = 0;
        for (size_t i = 0; i < amps_.size(); i++) {
            bool one = (i & bit) != 0;
            if (one != (o == 1)) {
                amps_[i] = 0;
            } else {
                norm += std::norm(amps_[i]);
            }
        }
        if (norm < 1e-12) {
            throw std::runtime_error("oracle: projection onto zero-probability outcome");
        }
        double s = 1.0 / std::sqrt(norm);
        for (auto &a : amps_) {
            a *= s;
        }
    }

    /// |<a|b>| (fidelity magnitude, insensitive to global phase).
    static double overlap(const StateVector &a, const StateVector &b) {
        std::complex<double> acc = 0;
        for (size_t i = 0; i < a.amps_.size(); i++) {
            acc += std::conj(a.amps_[i]) * b.amps_[i];
        }
        return std::abs(acc);
    }

  private:
    uint32_t n_;
    std::vector<std::complex<double>> amps_;
};

struct OracleRun {
    std::vector<int> outcomes;  // deterministic measurement outcomes, circuit order
    StateVector state;
};

/// Runs the circuit on |0..0> (optionally after a state-preparation prefix on
/// the input qubits), injecting the faults of `fs` at their gaps, projecting
/// each measurement on its deterministic outcome... measurements with
/// probability strictly between 0 and 1 throw (our circuits are
/// deterministic up to fault flips, which this oracle resolves by taking the
/// majority amplitude branch: p > 0.5 reads as outcome 1).
inline OracleRun run_oracle(const CliffordCircuit &c, const FaultSet &fs,
                            const std::vector<Instruction> &input_prefix = {}) {
    StateVector sv(c.num_qubits());
    auto apply_inst = [&](const Instruction &inst) {
        switch (inst.op) {
            case Op::TICK:
                break;
            case Op::PREP_Z:
                sv.project_z(inst.a, sv.prob_one(inst.a) > 0.5 ? 1 : 0);
                if (sv.prob_one(inst.a) > 0.5) {
                    sv.apply_x(inst.a);
                }
                break;
            case Op::PREP_X:
                sv.project_z(inst.a, sv.prob_one(inst.a) > 0.5 ? 1 : 0);
                if (sv.prob_one(inst.a) > 0.5) {
                    sv.apply_x(inst.a);
                }
                sv.apply_h(inst.a);
                break;
            case Op::CNOT:
                sv.apply_cx(inst.a, inst.b);
                break;
            case Op::U1: {
                std::string name = inst.u.canonical_name();
                size_t start = 0;
                std::vector<std::string> gates;
                while (start <= name.size()) {
                    size_t sep = name.find('*', start);
                    if (sep == std::string::npos) {
                        gates.push_back(name.substr(start));
                        break;
                    }
                    gates.push_back(name.substr(start, sep - start));
                    start = sep + 1;
                }
                for (const auto &g : gates) {
                    sv.apply_named(inst.a, g);
                }
                break;
            }
            default:
                break;
        }
    };
    for (const auto &inst : input_prefix) {
        apply_inst(inst);
    }

    // Bucket Pauli faults by (qubit, per-qubit slot); MeasFlips by the same.
    std::vector<std::vector<std::pair<uint32_t, Pauli>>> pauli_at(c.num_qubits());
    std::vector<std::vector<uint32_t>> flip_at(c.num_qubits());
    for (const auto &f : fs.faults) {
        if (f.kind == FaultLocation::Kind::PAULI) {
            pauli_at[f.qubit].push_back({f.slot, f.pauli});
        } else {
            flip_at[f.qubit].push_back(f.slot);
        }
    }
    std::vector<uint32_t> cursor(c.num_qubits(), 0);
    auto inject = [&](uint32_t q) {
        for (const auto &[slot, p] : pauli_at[q]) {
            if (slot == cursor[q]) {
                sv.apply_pauli(q, p);
            }
        }
    };
    std::vector<int> outcomes;
    for (const auto &inst : c.instructions()) {
        switch (inst.op) {
            case Op::TICK:
                break;
            case Op::CNOT:
                inject(inst.a);
                inject(inst.b);
                sv.apply_cx(inst.a, inst.b);
                cursor[inst.a]++;
                cursor[inst.b]++;
                break;
            case Op::MEAS_Z:
            case Op::MEAS_X: {
                inject(inst.a);
                if (inst.op == Op::MEAS_X) {
                    sv.apply_h(inst.a);
                }
                double p1 = sv.prob_one(inst.a);
                if (p1 > 1e-9 && p1 < 1 - 1e-9) {
                    throw std::runtime_error("oracle: non-deterministic measurement");
                }
                int o = p1 > 0.5 ? 1 : 0;
                sv.project_z(inst.a, o);
                bool flipped = false;
                for (uint32_t s : flip_at[inst.a]) {
                    if (s == cursor[inst.a]) {
                        flipped = !flipped;
                    }
                }
                outcomes.push_back(o ^ (flipped ? 1 : 0));
                cursor[inst.a]++;
                break;
            }
            case Op::PREP_Z:
            case Op::PREP_X: {
                Instruction i2 = inst;
                apply_inst(i2);
                cursor[inst.a]++;
                break;
            }
            case Op::U1:
                inject(inst.a);
                apply_inst(inst);
                cursor[inst.a]++;
                break;
        }
    }
    // Terminal injections so final-state comparisons see trailing faults.
    for (uint32_t q = 0; q < c.num_qubits(); q++) {
        inject(q);
    }
    return {outcomes, sv};
}

}  // namespace flagcirc_test

#endif
