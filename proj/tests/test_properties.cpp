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
// Property tests: the spec-level invariants checked against randomized
// circuits and fault sets.

#include <random>

#include "doctest.h"
#include "flagcirc/gadget.hpp"
#include "flagcirc/verify.hpp"

using namespace flagcirc;

namespace {

CliffordCircuit random_circuit(std::mt19937_64 &rng, uint32_t nq, size_t gates) {
    CliffordCircuit c(nq);
    for (uint32_t q = 0; q < nq; q++) {
        c.add_input(q);
    }
    for (size_t i = 0; i < gates; i++) {
        switch (rng() % 3) {
            case 0: {
                uint32_t a = rng() % nq, b = rng() % nq;
                if (a == b) {
                    b = (a + 1) % nq;
                }
                c.append(Instruction::cnot(a, b));
                break;
            }
            case 1:
                c.append(Instruction::u1(rng() % nq, SingleQubitClifford::h()));
                break;
            default:
                c.append(Instruction::u1(rng() % nq, SingleQubitClifford::s()));
        }
    }
    for (uint32_t q = 0; q < nq; q++) {
        c.append(Instruction::meas_z(q));
    }
    return c;
}

FaultSet random_fault_set(std::mt19937_64 &rng, const std::vector<FaultLocation> &locs, size_t max_size) {
    FaultSet fs;
    size_t want = 1 + rng() % max_size;
    std::set<uint64_t> used;
    size_t guard = 0;
    while (fs.faults.size() < want && guard++ < 100) {
        const auto &l = locs[rng() % locs.size()];
        uint64_t key = (uint64_t{l.qubit} << 32) | l.slot;
        if (used.count(key)) {
            continue;
        }
        used.insert(key);
        fs.faults.push_back(l);
    }
    return fs;
}

}  // namespace

TEST_CASE("propagate is linear over disjoint fault sets") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; trial++) {
        CliffordCircuit c = random_circuit(rng, 4, 10);
        auto locs = enumerate_locations(c, {QubitRole::DATA});
        EventIndex idx(c);
        FaultSet f1 = random_fault_set(rng, locs, 2);
        FaultSet f2 = random_fault_set(rng, locs, 2);
        // Skip overlapping draws.
        bool overlap = false;
        for (const auto &a : f1.faults) {
            for (const auto &b : f2.faults) {
                if (a.qubit == b.qubit && a.slot == b.slot && a.kind == b.kind) {
                    overlap = true;
                }
            }
        }
        if (overlap) {
            continue;
        }
        FaultSet both = f1;
        for (const auto &b : f2.faults) {
            both.faults.push_back(b);
        }
        PropagationResult r1 = propagate(c, idx, f1);
        PropagationResult r2 = propagate(c, idx, f2);
        PropagationResult rb = propagate(c, idx, both);
        CHECK(rb.residual == r1.residual * r2.residual);
        for (size_t m = 0; m < rb.outcome_flips.size(); m++) {
            CHECK(rb.outcome_flips[m] == (r1.outcome_flips[m] ^ r2.outcome_flips[m]));
        }
    }
}

TEST_CASE("zero-fault determinism for every generated circuit") {
    // FlagPattern(empty) is all-zero, and independently every flag measurement
    // back-propagates deterministically.
    std::vector<FlaggedCircuit> gens;
    gens.push_back(cat_state_circuit(4));
    gens.push_back(cat_state_circuit(8));
    gens.push_back(data_syndrome_example_513());
    {
        CliffordCircuit c = CliffordCircuit::parse("@input 0 1 2\nCX 0 1\nCX 1 2\nCX 0 2\n");
        gens.push_back(full_gadgets_all(c));
    }
    for (const auto &f : gens) {
        PropagationResult r = propagate(f.circuit, FaultSet{});
        CHECK(!r.any_flip());
        for (const auto &pf : f.flags) {
            CHECK(measurement_is_deterministic(f.circuit, pf.meas_index));
        }
    }
}

TEST_CASE("residual weight never exceeds fan-out growth") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; trial++) {
        CliffordCircuit c = random_circuit(rng, 5, 12);
        size_t cnots = c.cnot_count();
        auto locs = enumerate_locations(c, {QubitRole::DATA});
        FaultSet fs = random_fault_set(rng, locs, 3);
        PropagationResult r = propagate(c, fs);
        CHECK(r.residual.weight() <= cnots * fs.weight() + fs.weight());
    }
}

TEST_CASE("pattern weight per repetition is at most twice the fault count") {
    // |f_i| <= 2s on the uncompressed flagged chain, exhaustively for s <= 2.
    CliffordCircuit c = CliffordCircuit::parse("@input 0 1 2\nCX 0 1\nCX 1 2\nCX 0 1\nCX 2 0\nCX 0 1\n");
    FlaggedCircuit f = full_gadgets_all(c);
    EventIndex idx(f.circuit);
    std::vector<size_t> z_basis_meas, x_basis_meas;
    for (const auto &pf : f.flags) {
        (pf.basis == 'Z' ? z_basis_meas : x_basis_meas).push_back(pf.meas_index);
    }
    std::vector<FaultLocation> bulk;
    for (const auto &b : f.bulk) {
        bulk.push_back(b.loc);
    }
    // Per-basis pattern weight: the bound is stated for each basis pattern.
    auto pattern_weight = [&](const FaultSet &fs) {
        PropagationResult r = propagate(f.circuit, idx, fs);
        size_t wz = 0, wx = 0;
        for (size_t m : z_basis_meas) {
            wz += r.outcome_flips[m];
        }
        for (size_t m : x_basis_meas) {
            wx += r.outcome_flips[m];
        }
        return std::max(wz, wx);
    };
    for (size_t i = 0; i < bulk.size(); i++) {
        CHECK(pattern_weight(FaultSet::single(bulk[i])) <= 2);
        for (size_t j = i + 1; j < bulk.size(); j++) {
            if (bulk[i].qubit == bulk[j].qubit && bulk[i].slot == bulk[j].slot) {
                continue;
            }
            FaultSet fs;
            fs.faults.push_back(bulk[i]);
            fs.faults.push_back(bulk[j]);
            CHECK(pattern_weight(fs) <= 4);
        }
    }
}

TEST_CASE("nondisturbance of every synthesized flag across the library circuits") {
    SUBCASE("cat circuits") {
        for (int size : {4, 8}) {
            FlaggedCircuit f = cat_state_circuit(size);
            CHECK(nondisturbance_check(f, nullptr).pass);
        }
    }
    SUBCASE("uncompressed and compressed gadgets on a CNOT network") {
        CliffordCircuit c = CliffordCircuit::parse("@input 0 1 2 3\nCX 0 1\nCX 1 2\nCX 2 3\nCX 3 0\n");
        FlaggedCircuit f = full_gadgets_all(c);
        CHECK(nondisturbance_check(f, nullptr).pass);
        FlagSpec spec;
        spec.p_x = hamming_parity(8).parity;
        spec.p_z = hamming_parity(8).parity;
        spec.reps = 2;
        FlaggedCircuit g = compress(f, spec);
        CHECK(nondisturbance_check(g, nullptr).pass);
    }
    SUBCASE("data-syndrome example") {
        FlaggedCircuit f = data_syndrome_example_513();
        StabilizerCode code = perfect5();
        CHECK(nondisturbance_check(f, &code).pass);
    }
}

TEST_CASE("single flag faults stay within weight one of a relocated data fault") {
    CliffordCircuit c = CliffordCircuit::parse("@input 0 1 2\nCX 0 1\nCX 1 2\n");
    StabilizerCode raw;
    raw.name = "raw3";
    raw.n = 3;
    raw.k = 3;
    raw.d = 1;
    for (uint32_t q = 0; q < 3; q++) {
        PauliString x(3), z(3);
        x.set(q, Pauli::X);
        z.set(q, Pauli::Z);
        raw.logical_x.push_back(x);
        raw.logical_z.push_back(z);
    }
    raw.validate();
    FlaggedCircuit f = full_gadgets_all(c);
    CHECK(flag_fault_weight_check(f, raw).pass);
}
