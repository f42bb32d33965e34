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

#include "flagcirc/resources.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace flagcirc {

std::string ResourceCount::str() const {
    std::ostringstream out;
    out << "qubits " << total_qubits << " (data " << data_qubits << ", ancilla " << ancilla_qubits << "), cnots "
        << cnots << ", 1q gates " << single_qubit_gates << ", measurements " << measurements << ", depth " << depth;
    return out.str();
}

ResourceCount audit(const CliffordCircuit &c) {
    ResourceCount r;
    for (uint32_t q = 0; q < c.num_qubits(); q++) {
        if (c.role(q) == QubitRole::DATA) {
            r.data_qubits++;
        } else {
            r.ancilla_qubits++;
        }
    }
    r.total_qubits = c.num_qubits();
    bool has_tick = false;
    for (const auto &inst : c.instructions()) {
        switch (inst.op) {
            case Op::CNOT: r.cnots++; break;
            case Op::U1: r.single_qubit_gates++; break;
            case Op::MEAS_Z:
            case Op::MEAS_X: r.measurements++; break;
            case Op::TICK: has_tick = true; break;
            default: break;
        }
    }
    if (has_tick) {
        size_t layers = 1;
        for (const auto &inst : c.instructions()) {
            layers += inst.op == Op::TICK;
        }
        r.depth = layers;
    } else {
        // Greedy ASAP layering over gates and measurements.
        std::vector<size_t> avail(c.num_qubits(), 0);
        size_t depth = 0;
        for (const auto &inst : c.instructions()) {
            switch (inst.op) {
                case Op::TICK: break;
                case Op::CNOT: {
                    size_t layer = std::max(avail[inst.a], avail[inst.b]);
                    avail[inst.a] = avail[inst.b] = layer + 1;
                    depth = std::max(depth, layer + 1);
                    break;
                }
                default: {
                    size_t layer = avail[inst.a];
                    avail[inst.a] = layer + 1;
                    depth = std::max(depth, layer + 1);
                }
            }
        }
        r.depth = depth;
    }
    return r;
}

ResourceCount code_switching_cost(int rounds, int w4_checks, int w8_checks) {
    if (rounds < 0 || w4_checks < 0 || w8_checks < 0) {
        throw std::invalid_argument("counts must be non-negative");
    }
    ResourceCount r;
    if (rounds == 0) {
        return r;
    }
    // Coupling: w CNOTs, w cat qubits, w measurements per weight-w check.
    size_t couple = 4 * static_cast<size_t>(w4_checks) + 8 * static_cast<size_t>(w8_checks);
    // Flagged cat preparation: (3 ancillae, 5 CNOTs) per cat-4 and
    // (4 ancillae, 12 CNOTs) per cat-8.
    size_t prep_anc = 3 * static_cast<size_t>(w4_checks) + 4 * static_cast<size_t>(w8_checks);
    size_t prep_cnots = 5 * static_cast<size_t>(w4_checks) + 12 * static_cast<size_t>(w8_checks);
    r.ancilla_qubits = couple + prep_anc;
    r.total_qubits = r.ancilla_qubits;
    r.measurements = couple + prep_anc;  // non-resettable: every ancilla is measured
    r.cnots = couple + prep_cnots;
    return r;
}

ResourceCount shor_ec_cost(const StabilizerCode &code, int rounds) {
    if (rounds < 0) {
        throw std::invalid_argument("rounds must be non-negative");
    }
    size_t w4 = 0, w8 = 0;
    for (const auto &g : code.generators) {
        size_t w = g.weight();
        if (w == 4) {
            w4++;
        } else if (w == 8) {
            w8++;
        } else {
            throw std::invalid_argument("shor_ec_cost prices only weight-4 and weight-8 checks (got weight " +
                                        std::to_string(w) + ")");
        }
    }
    ResourceCount r;
    r.ancilla_qubits = static_cast<size_t>(rounds) * (7 * w4 + 12 * w8);
    r.total_qubits = r.ancilla_qubits;
    r.measurements = r.ancilla_qubits;
    r.cnots = static_cast<size_t>(rounds) * (9 * w4 + 20 * w8);
    return r;
}

std::vector<ComparisonRow> comparison_report(const std::vector<std::pair<std::string, ResourceCount>> &entries) {
    if (entries.size() < 2) {
        throw std::invalid_argument("comparison needs at least two entries");
    }
    std::vector<ComparisonRow> rows;
    const ResourceCount &base = entries[0].second;
    for (const auto &[label, count] : entries) {
        ComparisonRow row;
        row.label = label;
        row.count = count;
        size_t base_q = base.ancilla_qubits ? base.ancilla_qubits : base.total_qubits;
        size_t this_q = count.ancilla_qubits ? count.ancilla_qubits : count.total_qubits;
        row.qubit_ratio = base_q ? static_cast<double>(this_q) / base_q : 0.0;
        row.cnot_ratio = base.cnots ? static_cast<double>(count.cnots) / base.cnots : 0.0;
        rows.push_back(row);
    }
    return rows;
}

std::string comparison_table_text(const std::vector<ComparisonRow> &rows) {
    std::ostringstream out;
    out << std::left << std::setw(28) << "label" << std::right << std::setw(10) << "qubits" << std::setw(10)
        << "cnots" << std::setw(12) << "q-ratio" << std::setw(12) << "cx-ratio" << '\n';
    for (const auto &r : rows) {
        size_t q = r.count.ancilla_qubits ? r.count.ancilla_qubits : r.count.total_qubits;
        out << std::left << std::setw(28) << r.label << std::right << std::setw(10) << q << std::setw(10)
            << r.count.cnots << std::setw(12) << std::fixed << std::setprecision(3) << r.qubit_ratio << std::setw(12)
            << r.cnot_ratio << '\n';
    }
    return out.str();
}

}  // namespace flagcirc
