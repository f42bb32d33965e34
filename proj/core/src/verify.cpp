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

#include "flagcirc/verify.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>
#include <future>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace flagcirc {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::vector<uint32_t> data_qubits_of(const CliffordCircuit &c) {
    std::vector<uint32_t> out;
    for (uint32_t q = 0; q < c.num_qubits(); q++) {
        if (c.role(q) == QubitRole::DATA) {
            out.push_back(q);
        }
    }
    return out;
}

int residual_weight_mod(const PauliString &residual, const std::vector<uint32_t> &data, const StabilizerCode *code) {
    PauliString r = residual.restricted_to(data);
    if (!code) {
        return static_cast<int>(r.weight());
    }
    // weight_mod_stabilizers expects the operator on >= code->n qubits with the
    // code occupying qubits 0..n-1; our data qubits are always 0..n-1.
    return weight_mod_stabilizers(r, *code);
}

size_t run_jobs(size_t njobs, size_t total, const std::function<void(size_t, size_t, size_t)> &work) {
    // work(job_index, begin, end); returns the job count used.
    if (njobs == 0) {
        njobs = std::max<size_t>(1, std::thread::hardware_concurrency());
    }
    njobs = std::min(njobs, std::max<size_t>(1, total));
    std::vector<std::thread> threads;
    size_t chunk = (total + njobs - 1) / njobs;
    for (size_t j = 0; j < njobs; j++) {
        size_t b = j * chunk;
        size_t e = std::min(total, b + chunk);
        if (b >= e) {
            break;
        }
        threads.emplace_back(work, j, b, e);
    }
    for (auto &t : threads) {
        t.join();
    }
    return njobs;
}

}  // namespace

FlagPattern pattern_of(const PropagationResult &r, const std::vector<size_t> &meas_indices) {
    FlagPattern p(meas_indices.size());
    for (size_t i = 0; i < meas_indices.size(); i++) {
        p[i] = r.outcome_flips[meas_indices[i]];
    }
    return p;
}

VerificationReport exhaustive_ft_check(const FlaggedCircuit &f, const StabilizerCode &code,
                                       const ExhaustiveOptions &options) {
    const CliffordCircuit &c = f.circuit;
    EventIndex idx(c);
    std::vector<uint32_t> data = data_qubits_of(c);

    // Fault universe: bulk Pauli locations (+ boundary in strict mode) plus a
    // MeasFlip at every measurement.
    std::vector<FaultLocation> universe;
    for (const auto &b : f.bulk) {
        universe.push_back(b.loc);
    }
    if (options.include_boundary) {
        for (const auto &b : f.boundary) {
            universe.push_back(b);
        }
    }
    {
        const auto &insts = c.instructions();
        std::vector<uint32_t> cursor(c.num_qubits(), 0);
        for (const auto &inst : insts) {
            if (inst.op == Op::TICK) {
                continue;
            }
            if (inst.is_measurement()) {
                universe.push_back(FaultLocation::meas_flip(inst.a, cursor[inst.a]));
            }
            if (inst.op == Op::CNOT) {
                cursor[inst.a]++;
                cursor[inst.b]++;
            } else {
                cursor[inst.a]++;
            }
        }
    }

    // Enumeration size guard: sum_{w<=t} C(universe, w).
    {
        double total = 0;
        double cur = 1;
        for (int w = 1; w <= options.t; w++) {
            cur = cur * static_cast<double>(universe.size() - (w - 1)) / w;
            total += cur;
        }
        if (total > static_cast<double>(options.enumeration_budget)) {
            throw BudgetExceeded("enumeration budget exceeded: ~" + std::to_string(static_cast<uint64_t>(total)) +
                                 " fault sets");
        }
    }

    struct Entry {
        FaultSet faults;
        int weight;
        PauliString residual;
        FlagPattern pattern;
        std::string pattern_key;
    };
    // Enumerate fault sets of weight 1..t (combinations over the universe,
    // skipping same-(qubit,slot,kind) collisions).
    std::vector<Entry> entries;
    std::vector<size_t> stack;
    std::function<void(size_t, int)> rec = [&](size_t start, int remaining) {
        if (!stack.empty()) {
            FaultSet fs;
            bool ok = true;
            for (size_t i : stack) {
                const auto &fl = universe[i];
                for (const auto &g : fs.faults) {
                    if (g.qubit == fl.qubit && g.slot == fl.slot && g.kind == fl.kind) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) {
                    break;
                }
                fs.faults.push_back(fl);
            }
            if (ok) {
                Entry e;
                e.faults = fs;
                e.weight = static_cast<int>(fs.faults.size());
                entries.push_back(std::move(e));
            }
        }
        if (remaining == 0) {
            return;
        }
        for (size_t i = start; i < universe.size(); i++) {
            stack.push_back(i);
            rec(i + 1, remaining - 1);
            stack.pop_back();
        }
    };
    rec(0, options.t);

    // Propagate in parallel.
    std::vector<size_t> flag_meas = f.flag_meas_indices();
    std::vector<size_t> all_meas(c.measurement_count());
    for (size_t i = 0; i < all_meas.size(); i++) {
        all_meas[i] = i;
    }
    run_jobs(options.jobs, entries.size(), [&](size_t, size_t b, size_t e) {
        for (size_t i = b; i < e; i++) {
            PropagationResult r = propagate(c, idx, entries[i].faults);
            entries[i].residual = r.residual.restricted_to(data);
            entries[i].pattern = pattern_of(r, all_meas);
            entries[i].pattern_key.assign(entries[i].pattern.begin(), entries[i].pattern.end());
        }
    });

    VerificationReport report;
    report.pass = true;
    for (auto &e : entries) {
        auto &st = report.stats[e.weight];
        st.enumerated++;
        bool undetected = true;
        for (uint8_t b : e.pattern) {
            if (b) {
                undetected = false;
                break;
            }
        }
        if (undetected) {
            st.undetected++;
            if (residual_weight_mod(e.residual, data, &code) > e.weight) {
                st.undetected_propagating++;
            }
        }
    }
    for (auto &[w, st] : report.stats) {
        st.undetected_propagating_fraction =
            st.enumerated ? static_cast<double>(st.undetected_propagating) / st.enumerated : 0.0;
    }

    // Group by pattern.
    std::unordered_map<std::string, std::vector<size_t>> groups;
    for (size_t i = 0; i < entries.size(); i++) {
        groups[entries[i].pattern_key].push_back(i);
    }
    std::string zero_key(c.measurement_count(), '\0');

    auto add_failure = [&](const Entry &e, int rw, const std::string &reason) {
        report.pass = false;
        if (report.failures.size() < 64) {
            Failure fl;
            fl.faults = e.faults;
            fl.pattern = e.pattern;
            fl.residual = e.residual.restricted_to(data).str();
            fl.residual_weight_mod = rw;
            fl.reason = reason;
            report.failures.push_back(std::move(fl));
        }
    };

    std::vector<std::string> group_keys;
    group_keys.reserve(groups.size());
    for (auto &g : groups) {
        group_keys.push_back(g.first);
    }
    std::mutex report_mutex;
    run_jobs(options.jobs, group_keys.size(), [&](size_t, size_t gb, size_t ge) {
        for (size_t gi = gb; gi < ge; gi++) {
            const auto &members = groups[group_keys[gi]];
            bool zero_group = group_keys[gi] == zero_key;
            // Pairwise screen.
            for (size_t a = 0; a < members.size(); a++) {
                for (size_t b2 = a + 1; b2 < members.size(); b2++) {
                    const Entry &ea = entries[members[a]];
                    const Entry &eb = entries[members[b2]];
                    if (ea.weight + eb.weight > 2 * options.t) {
                        continue;
                    }
                    PauliString prod = ea.residual * eb.residual;
                    int rw = residual_weight_mod(prod, data, &code);
                    if (rw > ea.weight + eb.weight) {
                        std::lock_guard<std::mutex> lock(report_mutex);
                        add_failure(ea, rw, "pairwise indistinguishable from another fault set");
                    }
                }
            }
            // Decoder existence: a single correction fixing every member.
            std::vector<PauliString> candidates;
            if (zero_group) {
                candidates.push_back(PauliString(c.num_qubits()));
            } else {
                candidates.push_back(PauliString(c.num_qubits()));
                for (size_t m : members) {
                    candidates.push_back(entries[m].residual);
                }
            }
            bool ok = false;
            for (const auto &k : candidates) {
                bool all = true;
                for (size_t m : members) {
                    PauliString corrected = entries[m].residual * k;
                    if (residual_weight_mod(corrected, data, &code) > entries[m].weight) {
                        all = false;
                        break;
                    }
                }
                if (all) {
                    ok = true;
                    break;
                }
                if (zero_group) {
                    break;  // the identity is mandatory for the zero group
                }
            }
            if (!ok) {
                // Report the heaviest-residual member as the witness.
                size_t worst = members[0];
                int worst_w = -1;
                for (size_t m : members) {
                    int rw = residual_weight_mod(entries[m].residual, data, &code);
                    if (rw > worst_w) {
                        worst_w = rw;
                        worst = m;
                    }
                }
                std::lock_guard<std::mutex> lock(report_mutex);
                add_failure(entries[worst], worst_w,
                            zero_group ? "undetected fault propagates beyond its weight"
                                       : "no single correction decodes this flag pattern group");
            }
        }
    });

    return report;
}

VerificationReport meta_flag_isolation_check(const FlaggedCircuit &f) {
    const CliffordCircuit &c = f.circuit;
    EventIndex idx(c);
    VerificationReport report;
    report.pass = true;
    bool any_meta = false;
    std::set<QubitRole> meta_roles = {QubitRole::META_X, QubitRole::META_Z};
    auto locations = enumerate_locations(c, meta_roles);
    for (const auto &loc : locations) {
        if (loc.kind != FaultLocation::Kind::PAULI) {
            continue;
        }
        any_meta = true;
        PropagationResult r = propagate(c, idx, FaultSet::single(loc));
        // Count touched flag qubits: residual support plus flipped flag
        // measurements on flag qubits.
        std::set<uint32_t> touched_flags;
        size_t touched_data = 0;
        for (const auto &[q, p] : r.residual.support()) {
            QubitRole role = c.role(q);
            if (role == QubitRole::DATA) {
                touched_data++;
            } else if (role == QubitRole::FLAG_X || role == QubitRole::FLAG_Z) {
                touched_flags.insert(q);
            }
        }
        auto positions = c.measurement_positions();
        for (size_t i = 0; i < r.outcome_flips.size(); i++) {
            if (!r.outcome_flips[i]) {
                continue;
            }
            uint32_t mq = c.instructions()[positions[i]].a;
            QubitRole role = c.role(mq);
            if (role == QubitRole::FLAG_X || role == QubitRole::FLAG_Z) {
                touched_flags.insert(mq);
            }
        }
        if (touched_flags.size() > 1 || touched_data > 0) {
            report.pass = false;
            Failure fl;
            fl.faults = FaultSet::single(loc);
            fl.residual = r.residual.str();
            fl.reason = "meta-flag fault reaches " + std::to_string(touched_flags.size()) + " flags and " +
                        std::to_string(touched_data) + " data qubits";
            report.failures.push_back(std::move(fl));
        }
        report.stats[1].enumerated++;
    }
    if (!any_meta) {
        report.note = "no meta-flags present; vacuous pass";
    }
    return report;
}

VerificationReport flag_fault_weight_check(const FlaggedCircuit &f, const StabilizerCode &code) {
    const CliffordCircuit &c = f.circuit;
    EventIndex idx(c);
    std::vector<uint32_t> data = data_qubits_of(c);
    VerificationReport report;
    report.pass = true;

    // Precompute the coset residues reachable by single relocated data faults
    // (any location, any Pauli), plus the trivial coset.
    StabilizerCoset coset(code.generators, c.num_qubits());
    std::unordered_set<std::string> reachable;
    reachable.insert(coset.residue(PauliString(c.num_qubits())));
    std::set<QubitRole> droles = {QubitRole::DATA};
    for (const auto &loc : enumerate_locations(c, droles)) {
        if (loc.kind != FaultLocation::Kind::PAULI) {
            continue;
        }
        PropagationResult r = propagate(c, idx, FaultSet::single(loc));
        reachable.insert(coset.residue(r.residual.restricted_to(data)));
    }
    std::set<QubitRole> froles = {QubitRole::FLAG_X, QubitRole::FLAG_Z};
    for (const auto &loc : enumerate_locations(c, froles)) {
        if (loc.kind != FaultLocation::Kind::PAULI) {
            continue;
        }
        PropagationResult r = propagate(c, idx, FaultSet::single(loc));
        PauliString res = r.residual.restricted_to(data);
        report.stats[1].enumerated++;
        if (!reachable.count(coset.residue(res))) {
            report.pass = false;
            Failure fl;
            fl.faults = FaultSet::single(loc);
            fl.residual = res.str();
            fl.residual_weight_mod = residual_weight_mod(res, data, &code);
            fl.reason = "flag fault is not equivalent to a weight <= 1 data fault";
            report.failures.push_back(std::move(fl));
        }
    }
    return report;
}

VerificationReport nondisturbance_check(const FlaggedCircuit &f, const StabilizerCode *input_code) {
    const CliffordCircuit &c = f.circuit;
    VerificationReport report;
    report.pass = true;
    std::optional<StabilizerCoset> coset;
    if (input_code) {
        coset.emplace(input_code->generators, c.num_qubits());
    }
    for (const auto &pf : f.flags) {
        PauliString obs = back_propagate_measurement(c, pf.meas_index);
        // Restrict to declared inputs; everything else must have been absorbed.
        bool absorbed_ok = true;
        for (const auto &[q, p] : obs.support()) {
            if (!c.inputs().count(q)) {
                absorbed_ok = false;
            }
        }
        PauliString on_inputs(c.num_qubits());
        for (const auto &[q, p] : obs.support()) {
            if (c.inputs().count(q)) {
                on_inputs.set(q, p);
            }
        }
        bool ok = absorbed_ok;
        if (ok && !on_inputs.is_identity()) {
            ok = coset ? coset->in_group(on_inputs) : false;
        }
        report.stats[0].enumerated++;
        if (!ok) {
            report.pass = false;
            Failure fl;
            fl.residual = obs.str();
            fl.reason = "flag measurement " + std::to_string(pf.meas_index) + " disturbs the data";
            report.failures.push_back(std::move(fl));
        }
    }
    return report;
}

MonteCarloResult monte_carlo_propagation(const CliffordCircuit &c, const std::vector<size_t> &flag_meas,
                                         const StabilizerCode *code, const MonteCarloOptions &options) {
    if (options.samples < 1) {
        throw std::invalid_argument("samples must be >= 1");
    }
    EventIndex idx(c);
    std::vector<uint32_t> data = data_qubits_of(c);
    // Fault locations: the gap before every gate on every qubit it touches
    // (the per-gate error model's injection points).
    std::set<QubitRole> roles = options.roles;
    if (roles.empty()) {
        roles = {QubitRole::DATA,   QubitRole::FLAG_X, QubitRole::FLAG_Z,
                 QubitRole::META_X, QubitRole::META_Z, QubitRole::EC_ANCILLA};
    }
    std::vector<FaultLocation> slots;
    for (const auto &loc : enumerate_locations(c, roles)) {
        if (loc.kind == FaultLocation::Kind::PAULI && loc.pauli == Pauli::X) {
            slots.push_back(loc);  // one entry per (qubit, slot); Pauli drawn per sample
        }
    }
    if (slots.empty()) {
        throw std::invalid_argument("circuit has no fault locations");
    }

    MonteCarloResult result;
    struct Acc {
        size_t samples = 0;
        size_t bad = 0;
    };
    std::map<int, Acc> acc;
    std::mutex merge_mutex;

    auto eval_sample = [&](const FaultSet &fs, int weight, Acc *local) {
        PropagationResult r = propagate(c, idx, fs);
        local->samples++;
        for (size_t m : flag_meas) {
            if (r.outcome_flips[m]) {
                return;  // detected
            }
        }
        PauliString res = r.residual.restricted_to(data);
        int rw = code ? weight_mod_stabilizers(res, *code) : static_cast<int>(res.weight());
        if (rw > weight) {
            local->bad++;
        }
    };

    if (options.mode == MonteCarloOptions::Mode::UNIFORM_WEIGHT) {
        for (int w = 1; w <= options.max_weight; w++) {
            std::vector<Acc> locals(options.jobs == 0 ? std::max<size_t>(1, std::thread::hardware_concurrency())
                                                      : options.jobs);
            run_jobs(options.jobs, options.samples, [&](size_t j, size_t b, size_t e) {
                std::mt19937_64 rng(splitmix64(options.seed ^ (static_cast<uint64_t>(w) << 32) ^ j));
                Acc local;
                for (size_t i = b; i < e; i++) {
                    FaultSet fs;
                    std::unordered_set<uint64_t> used;
                    while (fs.faults.size() < static_cast<size_t>(w)) {
                        const FaultLocation &base = slots[rng() % slots.size()];
                        uint64_t key = (uint64_t{base.qubit} << 32) | base.slot;
                        if (used.count(key)) {
                            continue;
                        }
                        used.insert(key);
                        Pauli p = (rng() & 1) ? Pauli::X : Pauli::Z;
                        fs.faults.push_back(FaultLocation::pauli_fault(base.qubit, base.slot, p));
                    }
                    eval_sample(fs, w, &local);
                }
                std::lock_guard<std::mutex> lock(merge_mutex);
                acc[w].samples += local.samples;
                acc[w].bad += local.bad;
            });
        }
    } else {
        run_jobs(options.jobs, options.samples, [&](size_t j, size_t b, size_t e) {
            std::map<int, Acc> local;
            std::mt19937_64 rng(splitmix64(options.seed ^ 0xabcdef ^ j));
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            for (size_t i = b; i < e; i++) {
                FaultSet fs;
                for (const auto &s : slots) {
                    bool fx = unif(rng) < options.p;
                    bool fz = unif(rng) < options.p;
                    if (!fx && !fz) {
                        continue;
                    }
                    Pauli p = fx && fz ? Pauli::Y : (fx ? Pauli::X : Pauli::Z);
                    fs.faults.push_back(FaultLocation::pauli_fault(s.qubit, s.slot, p));
                }
                int w = static_cast<int>(fs.faults.size());
                if (w == 0) {
                    continue;
                }
                Acc tmp;
                eval_sample(fs, w, &tmp);
                local[w].samples += tmp.samples;
                local[w].bad += tmp.bad;
            }
            std::lock_guard<std::mutex> lock(merge_mutex);
            for (auto &[w, a] : local) {
                acc[w].samples += a.samples;
                acc[w].bad += a.bad;
            }
        });
    }
    for (auto &[w, a] : acc) {
        result.samples_per_weight[w] = a.samples;
        result.fraction[w] = a.samples ? static_cast<double>(a.bad) / a.samples : 0.0;
    }
    return result;
}

SearchResult random_search(const CliffordCircuit &c, const SearchOptions &options) {
    SearchResult best;
    best.seed = options.seed;
    if (options.trials == 0) {
        return best;
    }
    size_t n = 0;
    for (const auto &inst : c.instructions()) {
        n += inst.op == Op::CNOT;
    }
    double best_score = 2.0;
    for (uint64_t trial = 0; trial < options.trials; trial++) {
        uint64_t s = splitmix64(options.seed + trial);
        BinaryMatrix a = random_sparse(options.rows_flags, 2 * n, options.density_flags, s);
        BinaryMatrix b = random_sparse(options.rows_flags, 2 * n, options.density_flags, splitmix64(s + 1));
        GadgetOptions opt;
        opt.spec.p_x = a;
        opt.spec.p_z = b;
        opt.spec.reps = 1;
        FlaggedCircuit fc = build_flagged_circuit(c, opt);
        // Meta matrices over the first level's coupling counts.
        size_t nz = 0, nx = 0;
        {
            EventIndex idx(fc.circuit);
            for (const auto &pf : fc.flags) {
                if (pf.level != ProvenanceFlag::Level::FLAG) {
                    continue;
                }
                size_t k = 0;
                for (uint32_t e : idx.events(pf.qubit)) {
                    k += fc.circuit.instructions()[e].op == Op::CNOT;
                }
                (pf.basis == 'Z' ? nz : nx) += k;
            }
        }
        BinaryMatrix am = random_sparse(options.rows_meta, nz, options.density_meta, splitmix64(s + 2));
        BinaryMatrix bm = random_sparse(options.rows_meta, nx, options.density_meta, splitmix64(s + 3));
        opt.spec.meta_x = am;
        opt.spec.meta_z = bm;
        fc = build_flagged_circuit(c, opt);
        size_t ancillae = fc.circuit.num_qubits() - c.num_qubits();
        size_t added = fc.circuit.cnot_count() - n;
        if (ancillae > options.ancilla_budget || added > options.cnot_budget) {
            continue;
        }
        MonteCarloOptions mc;
        mc.mode = MonteCarloOptions::Mode::UNIFORM_WEIGHT;
        mc.max_weight = 2;
        mc.samples = options.mc_samples;
        mc.seed = splitmix64(s + 4);
        mc.jobs = options.jobs;
        MonteCarloResult r = monte_carlo_propagation(fc.circuit, fc.flag_meas_indices(), nullptr, mc);
        double score = 0;
        for (auto &[w, frac] : r.fraction) {
            score = std::max(score, frac);
        }
        if (!best.found || score < best_score) {
            best.found = true;
            best_score = score;
            best.a = a;
            best.b = b;
            best.a_meta = am;
            best.b_meta = bm;
            best.ancillae = ancillae;
            best.added_cnots = added;
            best.undetected_fraction = r.fraction;
            best.trial = trial;
        }
    }
    return best;
}

FlaggedCircuit instantiate_search_result(const CliffordCircuit &c, const SearchResult &r) {
    if (!r.found) {
        throw std::invalid_argument("empty search result");
    }
    GadgetOptions opt;
    opt.spec.p_x = r.a;
    opt.spec.p_z = r.b;
    opt.spec.reps = 1;
    opt.spec.meta_x = r.a_meta;
    opt.spec.meta_z = r.b_meta;
    return build_flagged_circuit(c, opt);
}

OptimizeResult optimize_equivalent(const CliffordCircuit &data_circuit, const BinaryMatrix &h, size_t reps,
                                   const StabilizerCode &code, int t, size_t trials, uint64_t seed) {
    if (trials < 1) {
        throw std::invalid_argument("trials must be >= 1");
    }
    OptimizeResult result;
    bool have = false;
    for (uint64_t trial = 0; trial < trials; trial++) {
        BinaryMatrix hh = trial == 0 ? h : sample_equivalent(h, splitmix64(seed + trial));
        GadgetOptions opt;
        opt.spec.p_x = hh;
        opt.spec.p_z = hh;
        opt.spec.reps = reps;
        FlaggedCircuit fc = build_flagged_circuit(data_circuit, opt);
        size_t cnots = fc.circuit.cnot_count();
        if (trial == 0) {
            result.baseline_cnots = cnots;
        }
        ExhaustiveOptions ex;
        ex.t = t;
        VerificationReport rep = exhaustive_ft_check(fc, code, ex);
        if (!rep.pass) {
            continue;
        }
        if (!have || cnots < result.best_cnots) {
            have = true;
            result.best = fc;
            result.best_cnots = cnots;
            result.best_trial = trial;
        }
    }
    if (!have) {
        throw std::runtime_error("no equivalent-matrix candidate passed verification");
    }
    return result;
}

}  // namespace flagcirc
