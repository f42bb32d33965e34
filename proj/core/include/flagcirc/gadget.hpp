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

#ifndef FLAGCIRC_GADGET_HPP
#define FLAGCIRC_GADGET_HPP

#include <optional>
#include <string>
#include <vector>

#include "flagcirc/circuit.hpp"
#include "flagcirc/classical.hpp"
#include "flagcirc/frame.hpp"
#include "flagcirc/gf2.hpp"
#include "flagcirc/stabilizer.hpp"

namespace flagcirc {

/// One primitive measurement slot in the compression column universe.
/// GADGET_PAIR is the two-coupling space-time stabilizer of a data CNOT
/// (control in/out for the X-catching basis), GADGET_TRIPLE the
/// three-coupling one; PREP_VERIFY is the single-coupling |0>-input check
/// used when the boundary reduces to input preparation.
struct PrimitiveColumn {
    enum class Type : uint8_t { GADGET_PAIR, GADGET_TRIPLE, PREP_VERIFY };
    Type type = Type::GADGET_PAIR;
    size_t cnot_ordinal = 0;  // index into the data-CNOT list (gadget types)
    uint32_t qubit = 0;       // PREP_VERIFY only
};

/// Which primitive gadgets each physical flag qubit multiplies together, per
/// basis, plus repetition count and optional meta-flag parity matrices.
struct FlagSpec {
    BinaryMatrix p_x;  // rows = X-error-catching flags (Z basis), cols = primitives
    BinaryMatrix p_z;  // rows = Z-error-catching flags (X basis)
    size_t reps = 1;
    std::optional<BinaryMatrix> meta_x;  // protects X-basis flags (vs X faults)
    std::optional<BinaryMatrix> meta_z;  // protects Z-basis flags (vs Z faults)

    static FlagSpec uncompressed(size_t num_primitives_x, size_t num_primitives_z);
};

enum class BoundaryMode : uint8_t { NONE, CODE_INPUT, PREP_VERIFY };

struct ProvenanceFlag {
    enum class Level : uint8_t { WRAP, FLAG, META };
    size_t meas_index = 0;  // position in circuit measurement order
    char basis = 'Z';       // 'Z' = |0> flag (catches X), 'X' = |+> flag
    size_t rep = 0;
    size_t row = 0;
    Level level = Level::FLAG;
    uint32_t qubit = 0;
    std::vector<size_t> columns;  // covered primitive columns (FLAG level)
};

/// A bulk location together with the gadget region class it realizes.
struct BulkLocation {
    FaultLocation loc;
    size_t gadget = 0;     // data-CNOT ordinal (or qubit for PREP_VERIFY)
    std::string region;    // "A","B","C" (X side), "A'","B'","C'" (Z side), "Y..", "P" (prep)
};

/// Data-syndrome extras carried by flag_data_syndrome outputs.
struct DataSyndromeInfo {
    BinaryMatrix redundant_checks;   // GH over the original check bits (rows = measured checks)
    BinaryMatrix original_parity;    // rows = original stabilizer syndrome bits
    BinaryMatrix encoder;            // G with GH = encoder * original syndrome map
    std::vector<size_t> check_meas_indices;  // measurement order positions of the GH checks
};

/// A flagged circuit: the instrumented circuit plus provenance describing
/// which flag covers which primitive columns and the bulk/boundary location
/// sets the verifier sweeps.
struct FlaggedCircuit {
    CliffordCircuit circuit;
    CliffordCircuit source;  // the bare data circuit this was built from
    FlagSpec spec;
    BoundaryMode boundary_mode = BoundaryMode::NONE;

    std::vector<PrimitiveColumn> columns_x;
    std::vector<PrimitiveColumn> columns_z;
    std::vector<ProvenanceFlag> flags;
    std::vector<BulkLocation> bulk;
    std::vector<FaultLocation> boundary;
    size_t data_cnots = 0;
    size_t first_level_ancillae = 0;  // flag qubits from p_x/p_z rows across reps
    size_t meta_ancillae = 0;
    size_t wrap_ancillae = 0;
    std::optional<DataSyndromeInfo> data_syndrome;

    /// Flag measurement indices (everything except EC checks), per repetition.
    std::vector<size_t> flag_meas_indices() const;
    bool is_bulk(const FaultLocation &f) const;

    /// Sidecar provenance JSON (see io_json.hpp for the schema).
    std::string provenance_json() const;
};

/// Options for the gadget builder pipeline.
struct GadgetOptions {
    FlagSpec spec;
    BoundaryMode boundary = BoundaryMode::NONE;
    /// Restrict gadget insertion to these data-CNOT ordinals (empty = all).
    std::vector<size_t> only_cnots;
    /// Cancel redundant adjacent coupling pairs (Fig. 10/11 translucent CNOTs).
    bool cancel_redundant = true;
};

/// Core pipeline: instrument `data_circuit` with flag gadgets per `options`.
FlaggedCircuit build_flagged_circuit(const CliffordCircuit &data_circuit, const GadgetOptions &options);

/// The nested full gadget on one data CNOT: 4 flag qubits and 10 coupling
/// CNOTs, bulk and boundary recorded. The Z-catching pair sits inside the
/// X-catching pair.
FlaggedCircuit primitive_full_gadget(const CliffordCircuit &c, size_t cnot_index);

/// Full gadgets on every data CNOT, uncompressed (4n ancillae, 10n CNOTs).
FlaggedCircuit full_gadgets_all(const CliffordCircuit &c);

/// Normalizes gadget placement so consecutive bulk regions abut and
/// recomputes the junction (boundary) location sets. The builder already
/// emits abutting gadgets, so this is idempotent; it exists so the
/// junction-equivalence property can be audited in isolation.
FlaggedCircuit overlap_adjacent(const FlaggedCircuit &f);

/// Replaces the detection block of the gadget anchored at `cnot_index` by its
/// conjugation under the single-qubit Cliffords trailing the CNOT. The
/// builder applies this automatically; passing explicit c1/c2 rebuilds with
/// those gates appended after the CNOT first.
FlaggedCircuit conjugate_detector(const FlaggedCircuit &f, size_t cnot_index, SingleQubitClifford c1,
                                  SingleQubitClifford c2);

/// Attach the primitive gadgets selected by each parity row to shared flag
/// qubits and repeat `spec.reps` times in space with staggered boundaries.
FlaggedCircuit compress(const FlaggedCircuit &f, const FlagSpec &spec);

/// Add meta-flag levels protecting the first-level flag qubits.
FlaggedCircuit add_meta_flags(const FlaggedCircuit &f, const BinaryMatrix &meta_x, const BinaryMatrix &meta_z);

/// Prepend the boundary block: for code inputs, per-qubit wrap flags around
/// an error-correction slot that the first gadgets hook into; for fresh |0>
/// inputs, one Z-stabilizer primitive location per qubit.
FlaggedCircuit add_boundary_ec(const FlaggedCircuit &f, const std::optional<StabilizerCode> &code);

/// Flagged GHZ preparation, fault tolerant to distance 3.
/// size=4: 3 ancillae / 5 added CNOTs; size=8: 4 ancillae / 12 added CNOTs.
FlaggedCircuit cat_state_circuit(int size);

/// Data-syndrome-code syndrome extraction for `code`, with checks made
/// redundant by the classical code `g`, per-check flags, and the data-qubit
/// interval gadgets combined according to `h_flag` and repeated `t` times.
/// `include_interval_gadgets=false` builds the non-fault-tolerant redundant
/// measurement circuit used by the mutation test.
FlaggedCircuit flag_data_syndrome(const StabilizerCode &code, const ClassicalCode &g, const ClassicalCode &h_flag,
                                  int t, bool include_interval_gadgets = true);

/// The worked [[5,1,3]] example: Hamming-encoded checks, flagged.
FlaggedCircuit data_syndrome_example_513(bool include_interval_gadgets = true);

/// Strategy layer used by the CLI: builds the FlagSpec for a circuit.
enum class FlagStrategy : uint8_t { UNCOMPRESSED, BCH, HAMMING, SPARSE_LDPC, MATRIX_FILE };
struct StrategyConfig {
    FlagStrategy strategy = FlagStrategy::UNCOMPRESSED;
    int t = 1;
    size_t reps = 0;          // 0 = default (2t+1, or 2t if column weights allow)
    bool meta = false;
    bool boundary = false;
    double density = 0.05;    // SPARSE_LDPC
    size_t ldpc_rows = 12;    // SPARSE_LDPC rows per basis
    uint64_t seed = 0;
    std::optional<BinaryMatrix> matrix;  // MATRIX_FILE
};
FlaggedCircuit flag_circuit(const CliffordCircuit &data_circuit, const StrategyConfig &config);

}  // namespace flagcirc

#endif
