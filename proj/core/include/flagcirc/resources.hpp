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

#ifndef FLAGCIRC_RESOURCES_HPP
#define FLAGCIRC_RESOURCES_HPP

#include <string>
#include <vector>

#include "flagcirc/circuit.hpp"
#include "flagcirc/stabilizer.hpp"

namespace flagcirc {

struct ResourceCount {
    size_t data_qubits = 0;
    size_t ancilla_qubits = 0;
    size_t total_qubits = 0;
    size_t cnots = 0;
    size_t single_qubit_gates = 0;
    size_t measurements = 0;
    size_t depth = 0;

    std::string str() const;
};

/// Exact gate/qubit/measurement counts. Depth counts Tick-separated layers
/// when Ticks are present and falls back to greedy ASAP layering otherwise.
ResourceCount audit(const CliffordCircuit &c);

/// Cost of the code-switching route for universality: Shor-style measurement
/// of `w4_checks` weight-4 and `w8_checks` weight-8 operators using flagged
/// cat states. Measurements double as the non-resettable ancilla count.
/// Per check: weight-4 costs 4 coupling CNOTs + a (3 ancilla, 5 CNOT) cat-4
/// preparation; weight-8 costs 8 + (4, 12).
ResourceCount code_switching_cost(int rounds, int w4_checks, int w8_checks);

/// Shor-style repeated syndrome extraction: per round, 7 ancillae / 9 CNOTs
/// per weight-4 check and 12 ancillae / 20 CNOTs per weight-8 check.
/// Throws for check weights outside {4, 8}.
ResourceCount shor_ec_cost(const StabilizerCode &code, int rounds);

struct ComparisonRow {
    std::string label;
    ResourceCount count;
    double qubit_ratio = 1.0;  // vs the first (baseline) entry
    double cnot_ratio = 1.0;
};

/// Ratio table against the first entry as baseline.
std::vector<ComparisonRow> comparison_report(const std::vector<std::pair<std::string, ResourceCount>> &entries);
std::string comparison_table_text(const std::vector<ComparisonRow> &rows);

}  // namespace flagcirc

#endif
