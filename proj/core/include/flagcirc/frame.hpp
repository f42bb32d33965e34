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

#ifndef FLAGCIRC_FRAME_HPP
#define FLAGCIRC_FRAME_HPP

#include <cstdint>
#include <set>
#include <vector>

#include "flagcirc/circuit.hpp"
#include "flagcirc/pauli.hpp"

namespace flagcirc {

/// A space-time fault location. `slot` indexes the per-qubit event list: the
/// fault sits in the gap immediately before that event. slot == (number of
/// events on the qubit) addresses the gap before the virtual terminal marker.
struct FaultLocation {
    enum class Kind : uint8_t { PAULI, MEAS_FLIP };
    uint32_t qubit = 0;
    uint32_t slot = 0;
    Kind kind = Kind::PAULI;
    Pauli pauli = Pauli::I;  // non-identity for PAULI faults

    static FaultLocation pauli_fault(uint32_t q, uint32_t slot, Pauli p);
    static FaultLocation meas_flip(uint32_t q, uint32_t slot);

    bool operator<(const FaultLocation &o) const;
    bool operator==(const FaultLocation &o) const;
};

/// A set of faults; no duplicate (qubit, slot, kind) triples.
struct FaultSet {
    std::vector<FaultLocation> faults;

    size_t weight() const { return faults.size(); }
    void add(const FaultLocation &f);
    static FaultSet single(const FaultLocation &f);
};

struct PropagationResult {
    /// Residual frame on surviving (unmeasured) qubits at circuit end.
    PauliString residual;
    /// One bit per measurement, in circuit order; 1 = outcome flipped
    /// relative to the fault-free run.
    std::vector<uint8_t> outcome_flips;

    bool any_flip() const;
};

/// Per-qubit event index of the circuit, precomputed once and shared by the
/// enumeration hot path.
class EventIndex {
  public:
    explicit EventIndex(const CliffordCircuit &c);
    /// Events on a qubit: instruction indices in circuit order.
    const std::vector<uint32_t> &events(uint32_t q) const { return per_qubit_[q]; }
    /// Slot of an instruction on a qubit (what FaultLocation calls `slot`).
    uint32_t slot_of(uint32_t q, uint32_t instr_index) const;
    size_t event_count(uint32_t q) const { return per_qubit_[q].size(); }

  private:
    std::vector<std::vector<uint32_t>> per_qubit_;
};

/// Sweeps a Pauli frame forward through the circuit, injecting each fault in
/// its gap. Preparations reset the frame on their qubit; measurements record
/// an outcome flip when the frame anticommutes with the measured observable
/// and then discard the frame on the measured qubit.
/// Throws std::invalid_argument naming the first invalid location.
PropagationResult propagate(const CliffordCircuit &c, const FaultSet &faults);
PropagationResult propagate(const CliffordCircuit &c, const EventIndex &idx, const FaultSet &faults);

/// Heisenberg image of measurement `meas_index`'s observable at circuit input
/// time: the measured Z (or X) pulled backwards through all prior
/// instructions. Preparations absorb the Pauli they stabilize; anything left
/// on a prepared qubit means the outcome is not deterministic. Support left
/// on input qubits means the measurement disturbs (or depends on) the input.
PauliString back_propagate_measurement(const CliffordCircuit &c, size_t meas_index);

/// True iff the measurement is deterministic for every input state:
/// back-propagation terminates with no support anywhere.
bool measurement_is_deterministic(const CliffordCircuit &c, size_t meas_index);

/// All Pauli fault locations (3 Paulis per gap) plus one MeasFlip per
/// measurement, restricted to qubits whose role is in `roles`. Canonical
/// deterministic order: instruction index, then qubit, then X < Y < Z. Gaps
/// before preparations are omitted (a reset erases anything before it), as is
/// the gap after a measurement that ends a qubit's lifetime.
std::vector<FaultLocation> enumerate_locations(const CliffordCircuit &c, const std::set<QubitRole> &roles);

}  // namespace flagcirc

#endif
