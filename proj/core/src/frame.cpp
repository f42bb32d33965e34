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

#include "flagcirc/frame.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace flagcirc {

FaultLocation FaultLocation::pauli_fault(uint32_t q, uint32_t slot, Pauli p) {
    if (p == Pauli::I) {
        throw std::invalid_argument("Pauli fault must not be identity");
    }
    return {q, slot, Kind::PAULI, p};
}

FaultLocation FaultLocation::meas_flip(uint32_t q, uint32_t slot) {
    return {q, slot, Kind::MEAS_FLIP, Pauli::I};
}

bool FaultLocation::operator<(const FaultLocation &o) const {
    if (qubit != o.qubit) return qubit < o.qubit;
    if (slot != o.slot) return slot < o.slot;
    if (kind != o.kind) return kind < o.kind;
    return pauli < o.pauli;
}

bool FaultLocation::operator==(const FaultLocation &o) const {
    return qubit == o.qubit && slot == o.slot && kind == o.kind && pauli == o.pauli;
}

void FaultSet::add(const FaultLocation &f) {
    for (const auto &g : faults) {
        if (g.qubit == f.qubit && g.slot == f.slot && g.kind == f.kind) {
            throw std::invalid_argument("duplicate fault location (qubit " + std::to_string(f.qubit) + ", slot " +
                                        std::to_string(f.slot) + ")");
        }
    }
    faults.push_back(f);
}

FaultSet FaultSet::single(const FaultLocation &f) {
    FaultSet s;
    s.faults.push_back(f);
    return s;
}

bool PropagationResult::any_flip() const {
    for (uint8_t b : outcome_flips) {
        if (b) {
            return true;
        }
    }
    return false;
}

EventIndex::EventIndex(const CliffordCircuit &c) : per_qubit_(c.num_qubits()) {
    const auto &insts = c.instructions();
    for (uint32_t i = 0; i < insts.size(); i++) {
        const auto &inst = insts[i];
        switch (inst.op) {
            case Op::TICK:
                break;
            case Op::CNOT:
                per_qubit_[inst.a].push_back(i);
                per_qubit_[inst.b].push_back(i);
                break;
            default:
                per_qubit_[inst.a].push_back(i);
        }
    }
}

uint32_t EventIndex::slot_of(uint32_t q, uint32_t instr_index) const {
    const auto &ev = per_qubit_.at(q);
    auto it = std::lower_bound(ev.begin(), ev.end(), instr_index);
    if (it == ev.end() || *it != instr_index) {
        throw std::invalid_argument("instruction does not touch qubit");
    }
    return static_cast<uint32_t>(it - ev.begin());
}

namespace {

struct Frame {
    PauliString p;
    explicit Frame(size_t n) : p(n) {}

    void apply(const Instruction &inst, std::vector<uint8_t> *flips, size_t *meas_cursor) {
        switch (inst.op) {
            case Op::TICK:
                break;
            case Op::PREP_Z:
            case Op::PREP_X:
                // Reset: anything arriving at a preparation is absorbed.
                p.set(inst.a, Pauli::I);
                break;
            case Op::CNOT: {
                // X_c -> X_c X_t, Z_t -> Z_c Z_t.
                Pauli pc = p.get(inst.a);
                Pauli pt = p.get(inst.b);
                if (pauli_x_bit(pc)) {
                    p.mul_x(inst.b);
                }
                if (pauli_z_bit(pt)) {
                    p.mul_z(inst.a);
                }
                break;
            }
            case Op::U1:
                p.set(inst.a, inst.u.conjugate(p.get(inst.a)));
                break;
            case Op::MEAS_Z:
            case Op::MEAS_X: {
                Pauli q = p.get(inst.a);
                bool flip = (inst.op == Op::MEAS_Z) ? pauli_x_bit(q) : pauli_z_bit(q);
                (*flips)[*meas_cursor] ^= flip ? 1 : 0;
                (*meas_cursor)++;
                p.set(inst.a, Pauli::I);  // measured once, never reused
                break;
            }
        }
    }
};

}  // namespace

PropagationResult propagate(const CliffordCircuit &c, const FaultSet &faults) {
    EventIndex idx(c);
    return propagate(c, idx, faults);
}

PropagationResult propagate(const CliffordCircuit &c, const EventIndex &idx, const FaultSet &faults) {
    const auto &insts = c.instructions();
    // Validate and bucket faults by (qubit, slot).
    std::unordered_map<uint64_t, Pauli> pauli_at;
    std::unordered_map<uint64_t, int> flip_at;
    for (const auto &f : faults.faults) {
        if (f.qubit >= c.num_qubits()) {
            throw std::invalid_argument("fault on unknown qubit " + std::to_string(f.qubit));
        }
        size_t nev = idx.event_count(f.qubit);
        if (f.slot > nev) {
            throw std::invalid_argument("fault slot " + std::to_string(f.slot) + " out of range on qubit " +
                                        std::to_string(f.qubit));
        }
        uint64_t key = (uint64_t{f.qubit} << 32) | f.slot;
        if (f.kind == FaultLocation::Kind::PAULI) {
            if (f.pauli == Pauli::I) {
                throw std::invalid_argument("identity Pauli fault");
            }
            auto [it, fresh] = pauli_at.try_emplace(key, f.pauli);
            if (!fresh) {
                throw std::invalid_argument("duplicate Pauli fault at qubit " + std::to_string(f.qubit) + " slot " +
                                            std::to_string(f.slot));
            }
        } else {
            if (f.slot >= nev || !insts[idx.events(f.qubit)[f.slot]].is_measurement()) {
                throw std::invalid_argument("MeasFlip must attach to a measurement (qubit " +
                                            std::to_string(f.qubit) + ", slot " + std::to_string(f.slot) + ")");
            }
            flip_at[key] ^= 1;
        }
    }

    Frame frame(c.num_qubits());
    std::vector<uint8_t> flips(c.measurement_count(), 0);
    size_t meas_cursor = 0;
    std::vector<uint32_t> cursor(c.num_qubits(), 0);

    auto inject_gap = [&](uint32_t q) {
        uint64_t key = (uint64_t{q} << 32) | cursor[q];
        auto it = pauli_at.find(key);
        if (it != pauli_at.end()) {
            frame.p.mul_pauli(q, it->second);
        }
    };

    for (const auto &inst : insts) {
        switch (inst.op) {
            case Op::TICK:
                break;
            case Op::CNOT:
                inject_gap(inst.a);
                inject_gap(inst.b);
                frame.apply(inst, &flips, &meas_cursor);
                cursor[inst.a]++;
                cursor[inst.b]++;
                break;
            case Op::MEAS_Z:
            case Op::MEAS_X: {
                inject_gap(inst.a);
                uint64_t key = (uint64_t{inst.a} << 32) | cursor[inst.a];
                size_t this_meas = meas_cursor;
                frame.apply(inst, &flips, &meas_cursor);
                auto it = flip_at.find(key);
                if (it != flip_at.end() && it->second) {
                    flips[this_meas] ^= 1;
                }
                cursor[inst.a]++;
                break;
            }
            default:
                inject_gap(inst.a);
                frame.apply(inst, &flips, &meas_cursor);
                cursor[inst.a]++;
        }
    }
    // Terminal gaps.
    for (uint32_t q = 0; q < c.num_qubits(); q++) {
        inject_gap(q);
    }
    return {frame.p, flips};
}

PauliString back_propagate_measurement(const CliffordCircuit &c, size_t meas_index) {
    auto positions = c.measurement_positions();
    if (meas_index >= positions.size()) {
        throw std::out_of_range("measurement index out of range");
    }
    size_t pos = positions[meas_index];
    const auto &insts = c.instructions();
    PauliString obs(c.num_qubits());
    obs.set(insts[pos].a, insts[pos].op == Op::MEAS_Z ? Pauli::Z : Pauli::X);

    for (size_t i = pos; i-- > 0;) {
        const auto &inst = insts[i];
        switch (inst.op) {
            case Op::TICK:
                break;
            case Op::CNOT: {
                // Conjugation by CNOT is its own inverse: X_c<->X_cX_t, Z_t<->Z_cZ_t.
                Pauli pc = obs.get(inst.a);
                Pauli pt = obs.get(inst.b);
                if (pauli_x_bit(pc)) {
                    obs.mul_x(inst.b);
                }
                if (pauli_z_bit(pt)) {
                    obs.mul_z(inst.a);
                }
                break;
            }
            case Op::U1:
                obs.set(inst.a, inst.u.inverse().conjugate(obs.get(inst.a)));
                break;
            case Op::PREP_Z: {
                // The preparation absorbs its stabilized Pauli; an anticommuting
                // component is left in place (the outcome is not deterministic).
                Pauli p = obs.get(inst.a);
                if (p == Pauli::Z) {
                    obs.set(inst.a, Pauli::I);
                }
                break;
            }
            case Op::PREP_X: {
                Pauli p = obs.get(inst.a);
                if (p == Pauli::X) {
                    obs.set(inst.a, Pauli::I);
                }
                break;
            }
            case Op::MEAS_Z:
            case Op::MEAS_X:
                // An earlier measurement on a qubit in the observable's support
                // would make the observable ill-defined; our circuits measure each
                // qubit once at the end of its lifetime, so nothing to do.
                break;
        }
    }
    return obs;
}

bool measurement_is_deterministic(const CliffordCircuit &c, size_t meas_index) {
    return back_propagate_measurement(c, meas_index).is_identity();
}

std::vector<FaultLocation> enumerate_locations(const CliffordCircuit &c, const std::set<QubitRole> &roles) {
    const auto &insts = c.instructions();
    EventIndex idx(c);
    std::vector<FaultLocation> out;
    std::vector<uint32_t> cursor(c.num_qubits(), 0);

    auto want = [&](uint32_t q) { return roles.count(c.role(q)) > 0; };
    auto emit_gap = [&](uint32_t q, const Instruction &next) {
        if (want(q) && !next.is_preparation()) {
            for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
                out.push_back(FaultLocation::pauli_fault(q, cursor[q], p));
            }
        }
    };

    for (const auto &inst : insts) {
        switch (inst.op) {
            case Op::TICK:
                break;
            case Op::CNOT: {
                uint32_t lo = std::min(inst.a, inst.b), hi = std::max(inst.a, inst.b);
                emit_gap(lo, inst);
                emit_gap(hi, inst);
                cursor[inst.a]++;
                cursor[inst.b]++;
                break;
            }
            case Op::MEAS_Z:
            case Op::MEAS_X:
                emit_gap(inst.a, inst);
                if (want(inst.a)) {
                    out.push_back(FaultLocation::meas_flip(inst.a, cursor[inst.a]));
                }
                cursor[inst.a]++;
                break;
            default:
                emit_gap(inst.a, inst);
                cursor[inst.a]++;
        }
    }
    // Terminal gaps, except after a final measurement (the qubit is gone).
    for (uint32_t q = 0; q < c.num_qubits(); q++) {
        if (!want(q)) {
            continue;
        }
        const auto &ev = idx.events(q);
        if (!ev.empty() && insts[ev.back()].is_measurement()) {
            continue;
        }
        if (ev.empty() && !c.inputs().count(q)) {
            continue;  // idle undeclared qubit
        }
        for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
            out.push_back(FaultLocation::pauli_fault(q, cursor[q], p));
        }
    }
    return out;
}

}  // namespace flagcirc
