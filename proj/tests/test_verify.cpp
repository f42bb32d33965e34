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
#include "flagcirc/tableau.hpp"
#include "flagcirc/verify.hpp"

using namespace flagcirc;

namespace {

// Treat the two raw data qubits of a standalone gadget as an unencoded
// system: residual weights are raw weights.
StabilizerCode raw_qubits(uint32_t n) {
    StabilizerCode code;
    code.name = "raw";
    code.n = n;
    code.k = n;
    code.d = 1;
    for (uint32_t q = 0; q < n; q++) {
        PauliString x(n), z(n);
        x.set(q, Pauli::X);
        z.set(q, Pauli::Z);
        code.logical_x.push_back(x);
        code.logical_z.push_back(z);
    }
    code.validate();
    return code;
}

}  // namespace

TEST_CASE("exhaustive_ft_check: flagged primitive gadget passes at t=1") {
    CliffordCircuit c = CliffordCircuit::parse("@input 0 1\nCX 0 1\n");
    FlaggedCircuit f = primitive_full_gadget(c, 0);
    ExhaustiveOptions opt;
    opt.t = 1;
    VerificationReport r = exhaustive_ft_check(f, raw_qubits(2), opt);
    CHECK(r.pass);
    CHECK(r.stats[1].enumerated > 0);
}

TEST_CASE("exhaustive_ft_check: budget guard raises an explicit error") {
    CliffordCircuit c = CliffordCircuit::parse("@input 0 1\nCX 0 1\n");
    FlaggedCircuit f = primitive_full_gadget(c, 0);
    ExhaustiveOptions opt;
    opt.t = 1;
    opt.enumeration_budget = 2;
    CHECK_THROWS_AS(exhaustive_ft_check(f, raw_qubits(2), opt), BudgetExceeded);
}

TEST_CASE("meta_flag_isolation_check") {
    SUBCASE("no meta flags: vacuous pass") {
        CliffordCircuit c = CliffordCircuit::parse("@input 0 1\nCX 0 1\n");
        FlaggedCircuit f = primitive_full_gadget(c, 0);
        VerificationReport r = meta_flag_isolation_check(f);
        CHECK(r.pass);
        CHECK(!r.note.empty());
    }
    SUBCASE("even-touch meta construction passes, odd-touch mutant fails") {
        CliffordCircuit c = CliffordCircuit::parse("@input 0 1 2\nCX 0 1\nCX 1 2\n");
        FlagSpec spec;
        spec.p_x = BinaryMatrix::from_rows({{1, 1, 1, 1}});
        spec.p_z = BinaryMatrix::from_rows({{1, 1, 1, 1}});
        spec.reps = 1;
        GadgetOptions opt;
        opt.spec = spec;
        FlaggedCircuit f = build_flagged_circuit(c, opt);
        size_t nz = 0, nx = 0;
        EventIndex idx(f.circuit);
        for (const auto &pf : f.flags) {
            size_t k = 0;
            for (uint32_t e : idx.events(pf.qubit)) {
                k += f.circuit.instructions()[e].op == Op::CNOT;
            }
            (pf.basis == 'Z' ? nz : nx) += k;
        }
        BinaryMatrix mx(1, nz), mz(0, nx);
        mx.set(0, 0, true);
        mx.set(0, 1, true);
        FlaggedCircuit g = add_meta_flags(f, mx, mz);
        CHECK(meta_flag_isolation_check(g).pass);

        // Mutant: strip one of the meta coupling pair, leaving an odd touch.
        FlaggedCircuit mutant = g;
        CliffordCircuit mc(mutant.circuit.num_qubits());
        for (uint32_t q : mutant.circuit.inputs()) {
            mc.add_input(q);
        }
        for (uint32_t q = 0; q < mutant.circuit.num_qubits(); q++) {
            mc.set_role(q, mutant.circuit.role(q));
        }
        bool dropped = false;
        for (const auto &inst : mutant.circuit.instructions()) {
            if (!dropped && inst.op == Op::CNOT &&
                (mutant.circuit.role(inst.a) == QubitRole::META_X ||
                 mutant.circuit.role(inst.b) == QubitRole::META_X ||
                 mutant.circuit.role(inst.a) == QubitRole::META_Z ||
                 mutant.circuit.role(inst.b) == QubitRole::META_Z)) {
                dropped = true;
                continue;
            }
            mc.append(inst);
        }
        REQUIRE(dropped);
        mutant.circuit = mc;
        VerificationReport r = meta_flag_isolation_check(mutant);
        CHECK(!r.pass);
    }
}

TEST_CASE("flag_fault_weight_check holds for uncompressed and compressed gadgets") {
    CliffordCircuit c = CliffordCircuit::parse("@input 0 1 2\nCX 0 1\nCX 1 2\n");
    SUBCASE("uncompressed") {
        FlaggedCircuit f = full_gadgets_all(c);
        CHECK(flag_fault_weight_check(f, raw_qubits(3)).pass);
    }
    SUBCASE("compressed") {
        FlagSpec spec;
        spec.p_x = BinaryMatrix::from_rows({{1, 1, 0, 1}, {0, 1, 1, 1}});
        spec.p_z = BinaryMatrix::from_rows({{1, 1, 0, 1}, {0, 1, 1, 1}});
        spec.reps = 2;
        GadgetOptions opt;
        opt.spec = spec;
        FlaggedCircuit f = build_flagged_circuit(c, opt);
        CHECK(flag_fault_weight_check(f, raw_qubits(3)).pass);
    }
}

TEST_CASE("monte carlo: flagged primitive gadget has zero bad fraction at weight 1") {
    CliffordCircuit c = CliffordCircuit::parse("@input 0 1\nCX 0 1\n");
    FlaggedCircuit f = primitive_full_gadget(c, 0);
    MonteCarloOptions opt;
    opt.max_weight = 1;
    opt.samples = 4000;
    opt.seed = 7;
    opt.roles = {QubitRole::DATA};  // the bulk statement concerns data faults
    MonteCarloResult r = monte_carlo_propagation(f.circuit, f.flag_meas_indices(), nullptr, opt);
    CHECK(r.fraction[1] == 0.0);
}

TEST_CASE("monte carlo: deterministic per seed and converges to the exhaustive fraction") {
    // Unflagged 3-CNOT circuit: weight-1 faults that propagate to weight >= 2.
    CliffordCircuit c = CliffordCircuit::parse("@input 0 1 2\nCX 0 1\nCX 0 2\nCX 1 2\n");
    MonteCarloOptions opt;
    opt.max_weight = 1;
    opt.samples = 60000;
    opt.seed = 11;
    MonteCarloResult a = monte_carlo_propagation(c, {}, nullptr, opt);
    MonteCarloResult b = monte_carlo_propagation(c, {}, nullptr, opt);
    CHECK(a.fraction[1] == b.fraction[1]);

    // Exhaustive fraction over the same location universe (gaps x {X, Z}).
    auto locs = enumerate_locations(c, {QubitRole::DATA});
    size_t total = 0, bad = 0;
    for (const auto &l : locs) {
        if (l.kind != FaultLocation::Kind::PAULI || l.pauli == Pauli::Y) {
            continue;
        }
        total++;
        PropagationResult r = propagate(c, FaultSet::single(l));
        if (r.residual.weight() > 1) {
            bad++;
        }
    }
    double exact = static_cast<double>(bad) / total;
    CHECK(a.fraction[1] == doctest::Approx(exact).epsilon(0.05));
}

TEST_CASE("random_search") {
    CliffordCircuit c = CliffordCircuit::parse("@input 0 1 2\nCX 0 1\nCX 0 2\nCX 1 2\nCX 2 0\n");
    SUBCASE("zero trials give an empty result") {
        SearchOptions opt;
        opt.trials = 0;
        SearchResult r = random_search(c, opt);
        CHECK(!r.found);
    }
    SUBCASE("seed replay reproduces the result; candidates respect budgets") {
        SearchOptions opt;
        opt.trials = 4;
        opt.mc_samples = 1500;
        opt.seed = 5;
        opt.rows_flags = 3;
        opt.rows_meta = 1;
        opt.density_flags = 0.2;
        opt.density_meta = 0.2;
        opt.ancilla_budget = 24;
        opt.cnot_budget = 400;
        SearchResult r1 = random_search(c, opt);
        SearchResult r2 = random_search(c, opt);
        REQUIRE(r1.found);
        CHECK(r1.trial == r2.trial);
        CHECK(r1.added_cnots == r2.added_cnots);
        CHECK(r1.ancillae <= 24);
        CHECK(r1.added_cnots <= 400);
        FlaggedCircuit fc = instantiate_search_result(c, r1);
        CHECK(fc.circuit.num_qubits() - c.num_qubits() == r1.ancillae);
    }
}

TEST_CASE("optimize_equivalent keeps only verified candidates and never regresses") {
    CliffordCircuit c = CliffordCircuit::parse("@input 0 1 2\nCX 0 1\nCX 1 2\n");
    BinaryMatrix h = hamming_parity(4).parity;
    OptimizeResult r = optimize_equivalent(c, h, 2, raw_qubits(3), 1, 4, 99);
    CHECK(r.best_cnots <= r.baseline_cnots);
    ExhaustiveOptions ex;
    ex.t = 1;
    CHECK(exhaustive_ft_check(r.best, raw_qubits(3), ex).pass);
}
