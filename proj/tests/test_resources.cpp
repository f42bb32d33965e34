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

#include <stdexcept>

#include "doctest.h"
#include "flagcirc/gadget.hpp"
#include "flagcirc/resources.hpp"

using namespace flagcirc;

TEST_CASE("audit counts the primitive gadget and the empty circuit") {
    CliffordCircuit c = CliffordCircuit::parse("@input 0 1\nCX 0 1\n");
    FlaggedCircuit f = primitive_full_gadget(c, 0);
    ResourceCount r = audit(f.circuit);
    CHECK(r.ancilla_qubits == 4);
    CHECK(r.cnots == 11);  // 10 gadget + 1 data
    CHECK(r.measurements == 4);

    CliffordCircuit empty;
    ResourceCount z = audit(empty);
    CHECK(z.total_qubits == 0);
    CHECK(z.cnots == 0);
    CHECK(z.depth == 0);

    FlaggedCircuit c4 = cat_state_circuit(4);
    ResourceCount rc4 = audit(c4.circuit);
    CHECK(rc4.ancilla_qubits == 3);
    CHECK(rc4.cnots - 3 == 5);  // 5 added beyond the GHZ chain
}

TEST_CASE("audit additivity for gate counts") {
    CliffordCircuit a = CliffordCircuit::parse("@input 0 1\nCX 0 1\nH 0\n");
    CliffordCircuit b = CliffordCircuit::parse("@input 0 1\nCX 1 0\nM 0\nM 1\n");
    CliffordCircuit ab(2);
    ab.add_input(0);
    ab.add_input(1);
    for (const auto &i : a.instructions()) ab.append(i);
    for (const auto &i : b.instructions()) ab.append(i);
    ResourceCount ra = audit(a), rb = audit(b), rab = audit(ab);
    CHECK(rab.cnots == ra.cnots + rb.cnots);
    CHECK(rab.single_qubit_gates == ra.single_qubit_gates + rb.single_qubit_gates);
    CHECK(rab.measurements == ra.measurements + rb.measurements);
}

TEST_CASE("code_switching_cost arithmetic") {
    SUBCASE("single weight-4 check, one round: 7 ancillae, 9 CNOTs") {
        ResourceCount r = code_switching_cost(1, 1, 0);
        CHECK(r.measurements == 7);
        CHECK(r.cnots == 9);
    }
    SUBCASE("zero rounds cost nothing") {
        ResourceCount r = code_switching_cost(0, 27, 9);
        CHECK(r.measurements == 0);
        CHECK(r.cnots == 0);
    }
    SUBCASE("linear in rounds") {
        ResourceCount one = code_switching_cost(1, 3, 1);
        ResourceCount three = code_switching_cost(3, 9, 3);
        CHECK(three.measurements == 3 * one.measurements);
        CHECK(three.cnots == 3 * one.cnots);
    }
    SUBCASE("the full switching round: per-stage arithmetic") {
        // 27 weight-4 + 9 weight-8 checks: coupling 27*4+9*8 = 180; cat
        // preparation 27*3+9*4 = 117 ancillae and 27*5+9*12 = 243 CNOTs.
        ResourceCount r = code_switching_cost(9, 27, 9);
        CHECK(r.measurements == 180 + 117);
        CHECK(r.cnots == 180 + 243);
    }
}

TEST_CASE("shor_ec_cost") {
    StabilizerCode code = qrm15();
    SUBCASE("single round: 118 ancillae, 170 CNOTs") {
        ResourceCount r = shor_ec_cost(code, 1);
        CHECK(r.ancilla_qubits == 118);
        CHECK(r.cnots == 170);
    }
    SUBCASE("nine rounds: 1062 / 1530") {
        ResourceCount r = shor_ec_cost(code, 9);
        CHECK(r.ancilla_qubits == 1062);
        CHECK(r.cnots == 1530);
        CHECK(r.measurements == 1062);
    }
    SUBCASE("the [[5,1,3]] straightforward baseline: 112 / 144") {
        ResourceCount r = shor_ec_cost(perfect5(), 4);
        CHECK(r.ancilla_qubits == 112);
        CHECK(r.cnots == 144);
    }
    SUBCASE("unsupported check weight") {
        StabilizerCode bad = steane7();
        // Steane has weight-4 checks only, so synthesize a weight-3 check code.
        StabilizerCode rep;
        rep.name = "rep3";
        rep.n = 3;
        rep.k = 1;
        rep.d = 1;
        rep.generators.push_back(PauliString::from_text("ZZ_"));
        rep.generators.push_back(PauliString::from_text("_ZZ"));
        rep.logical_x.push_back(PauliString::from_text("XXX"));
        rep.logical_z.push_back(PauliString::from_text("Z__"));
        CHECK_THROWS_AS(shor_ec_cost(rep, 1), std::invalid_argument);
        (void)bad;
    }
}

TEST_CASE("comparison_report ratios") {
    ResourceCount base;
    base.ancilla_qubits = 1062;
    base.total_qubits = 1062;
    base.cnots = 1530;
    ResourceCount flagged;
    flagged.ancilla_qubits = 92;
    flagged.total_qubits = 107;
    flagged.cnots = 7380;
    auto rows = comparison_report({{"shor", base}, {"flagged", flagged}});
    CHECK(rows[1].qubit_ratio == doctest::Approx(92.0 / 1062.0));
    CHECK(rows[1].cnot_ratio == doctest::Approx(7380.0 / 1530.0));
    // Identical entries give unit ratios.
    auto same = comparison_report({{"a", base}, {"b", base}});
    CHECK(same[1].qubit_ratio == doctest::Approx(1.0));
    CHECK(same[1].cnot_ratio == doctest::Approx(1.0));
    CHECK_THROWS_AS(comparison_report({{"only", base}}), std::invalid_argument);
}
