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

#ifndef FLAGCIRC_VERIFY_HPP
#define FLAGCIRC_VERIFY_HPP

#include <cstdint>
#include <set>
#include <stdexcept>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flagcirc/gadget.hpp"
#include "flagcirc/stabilizer.hpp"

namespace flagcirc {

/// Bit vector over flag/meta/EC measurements in circuit order.
using FlagPattern = std::vector<uint8_t>;

struct Failure {
    FaultSet faults;
    FlagPattern pattern;
    std::string residual;         // Pauli string text, data restriction
    int residual_weight_mod = 0;  // modulo the declared stabilizer group
    std::string reason;
};

struct WeightStats {
    size_t enumerated = 0;
    size_t undetected = 0;
    size_t undetected_propagating = 0;
    double undetected_propagating_fraction = 0.0;
};

struct VerificationReport {
    bool pass = false;
    std::vector<Failure> failures;
    std::map<int, WeightStats> stats;  // per fault weight
    std::string note;

};

struct ExhaustiveOptions {
    int t = 1;
    /// Abort (budget error) when the fault-set count would exceed this.
    uint64_t enumeration_budget = 50'000'000;
    /// Also sweep declared boundary locations (strict mode).
    bool include_boundary = false;
    /// Include EC-ancilla faults. The default matches the bulk declaration of
    /// the construction at hand (data-syndrome circuits declare them).
    int jobs = 0;  // 0 = hardware concurrency
};

/// Thrown when the enumeration budget is exceeded (CLI exit code 2).
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exhaustive fault-tolerance decision: enumerate all fault sets of weight
/// <= t over the bulk locations plus measurement flips, group by flag
/// pattern, and demand one correction per group that brings every member's
/// residual weight (modulo the code stabilizers) within its fault weight;
/// the all-zero group must accept the identity. A cheaper pairwise screen
/// (residual products of same-pattern pairs) runs first.
VerificationReport exhaustive_ft_check(const FlaggedCircuit &f, const StabilizerCode &code,
                                       const ExhaustiveOptions &options);

/// Lemma check: every single Pauli fault on every meta-flag qubit propagates
/// to at most one flag qubit and no data qubits.
VerificationReport meta_flag_isolation_check(const FlaggedCircuit &f);

/// Lemma check: every single Pauli fault on every flag qubit leaves a data
/// residual equivalent (modulo code stabilizers and a single relocated data
/// fault) to weight <= 1.
VerificationReport flag_fault_weight_check(const FlaggedCircuit &f, const StabilizerCode &code);

/// Nondisturbance: every flag measurement back-propagates to the identity on
/// the data inputs (or an element of the declared input stabilizer group).
VerificationReport nondisturbance_check(const FlaggedCircuit &f, const StabilizerCode *input_code);

struct MonteCarloOptions {
    enum class Mode { UNIFORM_WEIGHT, PER_GATE } mode = Mode::UNIFORM_WEIGHT;
    int max_weight = 2;       // weights 1..max_weight for UNIFORM_WEIGHT
    double p = 1e-3;          // PER_GATE
    size_t samples = 100000;
    uint64_t seed = 1;
    int jobs = 0;
    /// Roles whose locations are sampled; empty = every role (the per-gate
    /// error model touches flag and ancilla qubits too).
    std::set<QubitRole> roles;
};

struct MonteCarloResult {
    /// fraction[w] = estimated probability that a weight-w fault set flips no
    /// flag and propagates to residual weight > w (modulo stabilizers).
    std::map<int, double> fraction;
    std::map<int, size_t> samples_per_weight;
};

MonteCarloResult monte_carlo_propagation(const CliffordCircuit &c, const std::vector<size_t> &flag_meas,
                                         const StabilizerCode *code, const MonteCarloOptions &options);

struct SearchResult {
    bool found = false;
    BinaryMatrix a, a_meta, b, b_meta;
    size_t ancillae = 0;
    size_t added_cnots = 0;
    std::map<int, double> undetected_fraction;
    uint64_t seed = 0;
    uint64_t trial = 0;
};

struct SearchOptions {
    double density_flags = 0.05;
    double density_meta = 0.10;
    size_t ancilla_budget = 24;
    size_t cnot_budget = 400;
    size_t trials = 50;
    size_t mc_samples = 20000;
    uint64_t seed = 1;
    size_t rows_flags = 6;  // rows per basis for A/B
    size_t rows_meta = 2;   // rows per basis for A'/B'
    int jobs = 0;
};

/// Appendix-style random numerical search over sparse flag/meta matrices,
/// scored by Monte-Carlo undetected-propagation at weights 1-2.
SearchResult random_search(const CliffordCircuit &c, const SearchOptions &options);

/// Build the flagged circuit a SearchResult describes.
FlaggedCircuit instantiate_search_result(const CliffordCircuit &c, const SearchResult &r);

struct OptimizeResult {
    FlaggedCircuit best;
    size_t best_cnots = 0;
    size_t baseline_cnots = 0;
    uint64_t best_trial = 0;
};

/// Randomly sample equivalent parity-check matrices L*H*R, keep the smallest
/// verified circuit by CNOT count.
OptimizeResult optimize_equivalent(const CliffordCircuit &data_circuit, const BinaryMatrix &h, size_t reps,
                                   const StabilizerCode &code, int t, size_t trials, uint64_t seed);

/// Propagation pattern restricted to the given measurement indices.
FlagPattern pattern_of(const PropagationResult &r, const std::vector<size_t> &meas_indices);

}  // namespace flagcirc

#endif
