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

#include <map>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "flagcirc/gadget.hpp"
#include "flagcirc/resources.hpp"
#include "flagcirc/verify.hpp"

using namespace flagcirc;

namespace {

CliffordCircuit single_cnot() {
    return CliffordCircuit::parse("@input 0 1\nCX 0 1\n");
}

std::string flag_bits(const FlaggedCircuit &f, const PropagationResult &r) {
    std::string s;
    for (size_t m : f.flag_meas_indices()) {
        s.push_back(r.outcome_flips[m] ? '1' : '0');
    }
    return s;
}

}  // namespace

TEST_CASE("count law: 4n ancillae and 10n added CNOTs") {
    for (size_t n : {size_t{1}, size_t{5}}) {
        CliffordCircuit c(3);
        for (uint32_t q = 0; q < 3; q++) {
            c.add_input(q);
        }
        for (size_t j = 0; j < n; j++) {
            c.append(Instruction::cnot(j % 3, (j + 1) % 3));
        }
        FlaggedCircuit f = full_gadgets_all(c);
        ResourceCount r = audit(f.circuit);
        CHECK(r.ancilla_qubits == 4 * n);
        CHECK(r.cnots == 10 * n + n);
        CHECK(f.circuit.measurement_count() == 4 * n);
    }
}

TEST_CASE("zero-CNOT circuit is unchanged") {
    CliffordCircuit c = CliffordCircuit::parse("@input 0\nH 0\n");
    FlaggedCircuit f = full_gadgets_all(c);
    CHECK(f.circuit.num_qubits() == 1);
    CHECK(f.circuit.cnot_count() == 0);
    CHECK(f.flags.empty());
}

TEST_CASE("primitive gadget rejects a bad index") {
    CHECK_THROWS_AS(primitive_full_gadget(single_cnot(), 3), std::invalid_argument);
}

TEST_CASE("Lemma 1 sweep: bulk X faults flag or vanish, pattern = H * region parities") {
    FlaggedCircuit f = primitive_full_gadget(single_cnot(), 0);
    EventIndex idx(f.circuit);
    std::map<std::string, std::vector<FaultLocation>> regions;
    for (const auto &b : f.bulk) {
        if (b.loc.pauli == Pauli::X) {
            regions[b.region].push_back(b.loc);
        }
    }
    REQUIRE(regions.count("A"));
    REQUIRE(regions.count("B"));
    REQUIRE(regions.count("C"));

    auto x_flag_bits = [&](const PropagationResult &r) {
        std::string s;
        for (const auto &pf : f.flags) {
            if (pf.basis == 'Z') {
                s.push_back(r.outcome_flips[pf.meas_index] ? '1' : '0');
            }
        }
        return s;
    };
    std::map<std::string, std::string> expected = {
        {"A", "11"}, {"B", "01"}, {"C", "10"},
    };
    for (const auto &[region, locs] : regions) {
        for (const auto &loc : locs) {
            PropagationResult r = propagate(f.circuit, idx, FaultSet::single(loc));
            CHECK(x_flag_bits(r) == expected[region]);
        }
    }

    // Exhaustive sweep over every subset of the 9 bulk X gaps: the pattern is
    // H * (a,b,c) region parities; undetected subsets propagate to identity.
    std::vector<FaultLocation> all_x;
    std::map<std::string, int> region_index = {{"A", 0}, {"B", 1}, {"C", 2}};
    std::vector<int> region_of;
    for (const auto &b : f.bulk) {
        if (b.loc.pauli == Pauli::X) {
            all_x.push_back(b.loc);
            region_of.push_back(region_index[b.region]);
        }
    }
    REQUIRE(all_x.size() == 9);
    for (int mask = 0; mask < (1 << 9); mask++) {
        FaultSet fs;
        int parity[3] = {0, 0, 0};
        for (size_t i = 0; i < all_x.size(); i++) {
            if ((mask >> i) & 1) {
                fs.faults.push_back(all_x[i]);
                parity[region_of[i]] ^= 1;
            }
        }
        PropagationResult r = propagate(f.circuit, idx, fs);
        std::string want;
        want.push_back(((parity[0] ^ parity[2]) != 0) ? '1' : '0');  // blue = a + c
        want.push_back(((parity[0] ^ parity[1]) != 0) ? '1' : '0');  // magenta = a + b
        CHECK(x_flag_bits(r) == want);
        if (want == "00") {
            CHECK(r.residual.is_identity());
        }
    }
}

TEST_CASE("overlap: junction faults are a neighboring bulk fault plus one outcome flip") {
    CliffordCircuit c = CliffordCircuit::parse("@input 0 1 2\nCX 0 1\nCX 1 2\n");
    FlaggedCircuit f = full_gadgets_all(c);
    FlaggedCircuit f2 = overlap_adjacent(f);
    CHECK(f2.circuit.to_text() == f.circuit.to_text());

    EventIndex idx(f.circuit);
    std::vector<size_t> z_meas, x_meas;
    for (const auto &pf : f.flags) {
        (pf.basis == 'Z' ? z_meas : x_meas).push_back(pf.meas_index);
    }
    // Per-basis flag bit strings: the junction statement allows one extra
    // measurement error in each basis.
    auto signature = [&](const FaultSet &fs) {
        PropagationResult r = propagate(f.circuit, idx, fs);
        std::string pz, px;
        for (size_t m : z_meas) {
            pz.push_back(r.outcome_flips[m] ? '1' : '0');
        }
        for (size_t m : x_meas) {
            px.push_back(r.outcome_flips[m] ? '1' : '0');
        }
        return std::make_tuple(pz, px, r.residual.packed_key());
    };
    auto hamming = [](const std::string &a, const std::string &b) {
        int d = 0;
        for (size_t i = 0; i < a.size(); i++) {
            d += a[i] != b[i];
        }
        return d;
    };
    size_t checked = 0;
    std::string id_res = PauliString(f.circuit.num_qubits()).packed_key();
    for (const auto &loc : f.boundary) {
        auto [bz, bx, bres] = signature(FaultSet::single(loc));
        bool matched = false;
        for (const auto &bl : f.bulk) {
            auto [pz, px, res] = signature(FaultSet::single(bl.loc));
            if (res == bres && hamming(pz, bz) <= 1 && hamming(px, bx) <= 1) {
                matched = true;
                break;
            }
        }
        if (!matched && bres == id_res) {
            int oz = 0, ox = 0;
            for (char ch : bz) {
                oz += ch == '1';
            }
            for (char ch : bx) {
                ox += ch == '1';
            }
            matched = oz <= 1 && ox <= 1;
        }
        CHECK(matched);
        checked++;
    }
    CHECK(checked > 0);
}

TEST_CASE("overlap: disjoint CNOTs do not interact") {
    CliffordCircuit c = CliffordCircuit::parse("@input 0 1 2 3\nCX 0 1\nCX 2 3\n");
    FlaggedCircuit f = full_gadgets_all(c);
    ResourceCount r = audit(f.circuit);
    CHECK(r.ancilla_qubits == 8);
    CHECK(r.cnots == 22);
}

TEST_CASE("coverage: every data gap between first and last CNOT is bulk or boundary") {
    CliffordCircuit c = CliffordCircuit::parse("@input 0 1\nCX 0 1\nCX 1 0\nCX 0 1\nCX 1 0\nCX 0 1\n");
    FlaggedCircuit f = full_gadgets_all(c);
    EventIndex idx(f.circuit);
    const auto &insts = f.circuit.instructions();
    std::set<std::tuple<uint32_t, uint32_t, Pauli>> covered;
    for (const auto &b : f.bulk) {
        covered.insert({b.loc.qubit, b.loc.slot, b.loc.pauli});
    }
    for (const auto &b : f.boundary) {
        covered.insert({b.qubit, b.slot, b.pauli});
    }
    for (uint32_t q = 0; q < 2; q++) {
        const auto &ev = idx.events(q);
        uint32_t first_cx = UINT32_MAX, last_cx = 0;
        for (uint32_t s = 0; s < ev.size(); s++) {
            const auto &inst = insts[ev[s]];
            if (inst.op == Op::CNOT && f.circuit.role(inst.a) == QubitRole::DATA &&
                f.circuit.role(inst.b) == QubitRole::DATA) {
                first_cx = std::min(first_cx, s);
                last_cx = std::max(last_cx, s);
            }
        }
        REQUIRE(first_cx != UINT32_MAX);
        for (uint32_t s = first_cx + 1; s <= last_cx; s++) {
            for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
                CHECK(covered.count({q, s, p}));
            }
        }
    }
}

TEST_CASE("conjugate_detector") {
    SUBCASE("identity Cliffords change nothing") {
        CliffordCircuit c = single_cnot();
        FlaggedCircuit f = primitive_full_gadget(c, 0);
        FlaggedCircuit g =
            conjugate_detector(f, 0, SingleQubitClifford::identity(), SingleQubitClifford::identity());
        CHECK(g.circuit.to_text() == f.circuit.to_text());
    }
    SUBCASE("H on the target keeps flags deterministic and the bulk caught") {
        CliffordCircuit c = single_cnot();
        FlaggedCircuit f = primitive_full_gadget(c, 0);
        FlaggedCircuit g = conjugate_detector(f, 0, SingleQubitClifford::identity(), SingleQubitClifford::h());
        for (const auto &pf : g.flags) {
            CHECK(measurement_is_deterministic(g.circuit, pf.meas_index));
        }
        EventIndex idx(g.circuit);
        for (const auto &b : g.bulk) {
            PropagationResult r = propagate(g.circuit, idx, FaultSet::single(b.loc));
            bool flagged = false;
            for (size_t m : g.flag_meas_indices()) {
                flagged |= r.outcome_flips[m] != 0;
            }
            bool harmless = r.residual.restricted_to({0, 1}).weight() <= 1;
            CHECK((flagged || harmless));
        }
    }
    SUBCASE("S on the control: bulk faults still detect or stay small") {
        CliffordCircuit c = single_cnot();
        FlaggedCircuit f = primitive_full_gadget(c, 0);
        FlaggedCircuit g = conjugate_detector(f, 0, SingleQubitClifford::s(), SingleQubitClifford::identity());
        for (const auto &pf : g.flags) {
            CHECK(measurement_is_deterministic(g.circuit, pf.meas_index));
        }
        EventIndex idx(g.circuit);
        for (const auto &b : g.bulk) {
            PropagationResult r = propagate(g.circuit, idx, FaultSet::single(b.loc));
            bool flagged = false;
            for (size_t m : g.flag_meas_indices()) {
                flagged |= r.outcome_flips[m] != 0;
            }
            bool harmless = r.residual.restricted_to({0, 1}).weight() <= 1;
            CHECK((flagged || harmless));
        }
    }
    SUBCASE("missing gadget throws") {
        CliffordCircuit c = single_cnot();
        FlaggedCircuit f = primitive_full_gadget(c, 0);
        CHECK_THROWS_AS(conjugate_detector(f, 5, SingleQubitClifford::h(), SingleQubitClifford::identity()),
                        std::invalid_argument);
    }
}

TEST_CASE("compress: identity parity matrix reproduces the uncompressed circuit") {
    CliffordCircuit c = CliffordCircuit::parse("@input 0 1 2\nCX 0 1\nCX 1 2\n");
    FlaggedCircuit f = full_gadgets_all(c);
    FlagSpec spec = FlagSpec::uncompressed(4, 4);
    FlaggedCircuit g = compress(f, spec);
    ResourceCount rf = audit(f.circuit), rg = audit(g.circuit);
    CHECK(rf.ancilla_qubits == rg.ancilla_qubits);
    CHECK(rf.cnots == rg.cnots);
}

TEST_CASE("compress: a parity row measures the product of its primitives") {
    CliffordCircuit c = CliffordCircuit::parse("@input 0 1 2 3 4 5\nCX 0 1\nCX 2 3\nCX 4 5\n");
    FlaggedCircuit un = full_gadgets_all(c);

    FlagSpec spec;
    spec.p_x = BinaryMatrix::from_rows({{1, 1, 0, 0, 0, 1}});
    spec.p_z = BinaryMatrix::from_rows({{1, 1, 0, 0, 0, 1}});
    spec.reps = 1;
    FlaggedCircuit co = compress(un, spec);

    EventIndex iu(un.circuit);
    EventIndex ic(co.circuit);
    std::vector<size_t> un_x_meas(6), un_z_meas(6);
    for (const auto &pf : un.flags) {
        REQUIRE(pf.columns.size() == 1);
        (pf.basis == 'Z' ? un_x_meas : un_z_meas)[pf.columns[0]] = pf.meas_index;
    }
    size_t co_x_meas = SIZE_MAX, co_z_meas = SIZE_MAX;
    for (const auto &pf : co.flags) {
        (pf.basis == 'Z' ? co_x_meas : co_z_meas) = pf.meas_index;
    }
    size_t checked = 0;
    for (const auto &b : un.bulk) {
        const BulkLocation *match = nullptr;
        for (const auto &cb : co.bulk) {
            if (cb.gadget == b.gadget && cb.region == b.region && cb.loc.pauli == b.loc.pauli) {
                match = &cb;
                break;
            }
        }
        if (!match) {
            continue;
        }
        PropagationResult ru = propagate(un.circuit, iu, FaultSet::single(b.loc));
        PropagationResult rc = propagate(co.circuit, ic, FaultSet::single(match->loc));
        uint8_t want_x = ru.outcome_flips[un_x_meas[0]] ^ ru.outcome_flips[un_x_meas[1]] ^
                         ru.outcome_flips[un_x_meas[5]];
        uint8_t want_z = ru.outcome_flips[un_z_meas[0]] ^ ru.outcome_flips[un_z_meas[1]] ^
                         ru.outcome_flips[un_z_meas[5]];
        CHECK(rc.outcome_flips[co_x_meas] == want_x);
        CHECK(rc.outcome_flips[co_z_meas] == want_z);
        checked++;
    }
    CHECK(checked >= 30);
}

TEST_CASE("meta flags: empty matrices change nothing; rows touch flags evenly") {
    CliffordCircuit c = CliffordCircuit::parse("@input 0 1 2\nCX 0 1\nCX 1 2\n");
    FlagSpec spec;
    spec.p_x = BinaryMatrix::from_rows({{1, 1, 1, 1}});
    spec.p_z = BinaryMatrix::from_rows({{1, 1, 1, 1}});
    spec.reps = 1;
    GadgetOptions opt;
    opt.spec = spec;
    FlaggedCircuit f = build_flagged_circuit(c, opt);

    FlaggedCircuit same = add_meta_flags(f, BinaryMatrix(0, 0), BinaryMatrix(0, 0));
    CHECK(same.circuit.to_text() == f.circuit.to_text());

    EventIndex idx(f.circuit);
    size_t nz = 0, nx = 0;
    for (const auto &pf : f.flags) {
        size_t k = 0;
        for (uint32_t e : idx.events(pf.qubit)) {
            k += f.circuit.instructions()[e].op == Op::CNOT;
        }
        (pf.basis == 'Z' ? nz : nx) += k;
    }
    BinaryMatrix mx(1, nz), mz(1, nx);
    for (size_t i = 0; i < nz; i++) {
        mx.set(0, i, i == 0 || i == 2 || i == 3);
    }
    for (size_t i = 0; i < nx; i++) {
        mz.set(0, i, i < 2);
    }
    FlaggedCircuit g = add_meta_flags(f, mx, mz);
    CHECK(g.meta_ancillae == 2);
    EventIndex gi(g.circuit);
    for (uint32_t mq = 0; mq < g.circuit.num_qubits(); mq++) {
        QubitRole role = g.circuit.role(mq);
        if (role != QubitRole::META_X && role != QubitRole::META_Z) {
            continue;
        }
        std::map<uint32_t, int> touches;
        for (uint32_t e : gi.events(mq)) {
            const auto &inst = g.circuit.instructions()[e];
            if (inst.op == Op::CNOT) {
                touches[inst.a == mq ? inst.b : inst.a]++;
            }
        }
        for (const auto &[fq, n] : touches) {
            CHECK(n % 2 == 0);
        }
    }
    VerificationReport iso = meta_flag_isolation_check(g);
    CHECK(iso.pass);
}

TEST_CASE("boundary: prep-verify adds one location per prepared qubit") {
    CliffordCircuit c(4);
    for (uint32_t q = 0; q < 4; q++) {
        c.append(Instruction::prep_z(q));
    }
    c.append(Instruction::cnot(0, 1));
    c.append(Instruction::cnot(2, 3));
    FlaggedCircuit plain = full_gadgets_all(c);
    FlaggedCircuit f = add_boundary_ec(plain, std::nullopt);
    CHECK(f.columns_x.size() == 2 * 2 + 4);
    size_t prep_cols = 0;
    for (const auto &col : f.columns_x) {
        prep_cols += col.type == PrimitiveColumn::Type::PREP_VERIFY;
    }
    CHECK(prep_cols == 4);
    size_t prep_bulk = 0;
    for (const auto &b : f.bulk) {
        prep_bulk += b.region == "P";
    }
    CHECK(prep_bulk >= 4);
    FlaggedCircuit again = add_boundary_ec(f, std::nullopt);
    CHECK(again.circuit.to_text() == f.circuit.to_text());
}

TEST_CASE("boundary: code input wraps every data qubit in two flags") {
    StabilizerCode code = steane7();
    CliffordCircuit c(7);
    for (uint32_t q = 0; q < 7; q++) {
        c.add_input(q);
    }
    c.append(Instruction::cnot(0, 1));
    c.append(Instruction::cnot(2, 3));
    FlaggedCircuit plain = full_gadgets_all(c);
    FlaggedCircuit f = add_boundary_ec(plain, code);
    CHECK(f.wrap_ancillae == 14);
    size_t wraps = 0;
    for (const auto &pf : f.flags) {
        wraps += pf.level == ProvenanceFlag::Level::WRAP;
    }
    CHECK(wraps == 14);
    for (const auto &pf : f.flags) {
        CHECK(measurement_is_deterministic(f.circuit, pf.meas_index));
    }
    CHECK_THROWS_AS(add_boundary_ec(plain, qrm15()), std::invalid_argument);
}

TEST_CASE("cat state circuits meet the stated budgets") {
    FlaggedCircuit c4 = cat_state_circuit(4);
    ResourceCount r4 = audit(c4.circuit);
    CHECK(r4.ancilla_qubits == 3);
    CHECK(r4.cnots == 3 + 5);
    FlaggedCircuit c8 = cat_state_circuit(8);
    ResourceCount r8 = audit(c8.circuit);
    CHECK(r8.ancilla_qubits == 4);
    CHECK(r8.cnots == 7 + 12);
    CHECK_THROWS_AS(cat_state_circuit(6), std::invalid_argument);
    for (const FlaggedCircuit *f : {&c4, &c8}) {
        for (const auto &pf : f->flags) {
            CHECK(measurement_is_deterministic(f->circuit, pf.meas_index));
        }
    }
}
