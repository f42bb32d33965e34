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

#include "flagcirc/gadget.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "flagcirc/tableau.hpp"

namespace flagcirc {

FlagSpec FlagSpec::uncompressed(size_t num_primitives_x, size_t num_primitives_z) {
    FlagSpec s;
    s.p_x = BinaryMatrix::identity(num_primitives_x);
    s.p_z = BinaryMatrix::identity(num_primitives_z);
    s.reps = 1;
    return s;
}

std::vector<size_t> FlaggedCircuit::flag_meas_indices() const {
    std::vector<size_t> out;
    for (const auto &f : flags) {
        out.push_back(f.meas_index);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool FlaggedCircuit::is_bulk(const FaultLocation &f) const {
    for (const auto &b : bulk) {
        if (b.loc == f) {
            return true;
        }
    }
    return false;
}

namespace {

struct CnotInfo {
    size_t instr = 0;
    uint32_t c = 0, t = 0;
    SingleQubitClifford trail_c, trail_t;
    size_t post_anchor_c = 0, post_anchor_t = 0;
};

struct FlagInfo {
    uint32_t qubit = 0;
    char basis = 'Z';  // 'Z': |0> prep, Z meas, data->flag. 'X': |+>, flag->data.
    size_t rep = 0;
    size_t row = 0;
    ProvenanceFlag::Level level = ProvenanceFlag::Level::FLAG;
    std::vector<size_t> columns;
};

struct PlannedCoupling {
    uint32_t data_q = 0;
    size_t flag = 0;
};

struct CouplingGroup {
    uint32_t data_q = 0;
    SingleQubitClifford frame;  // emit U1(q, frame^-1) ... U1(q, frame)
    std::vector<PlannedCoupling> couplings;
};

struct Tag {
    enum class Kind : uint8_t { OTHER, COUPLING, EC_TICK } kind = Kind::OTHER;
    size_t flag = SIZE_MAX;
};

struct Assembly {
    std::vector<Instruction> insts;
    std::vector<Tag> tags;
    void push(const Instruction &i, Tag t = {}) {
        insts.push_back(i);
        tags.push_back(t);
    }
};

struct ColumnIndex {
    std::vector<size_t> pair_col, triple_col;
    std::map<uint32_t, size_t> prep_col;
};

ColumnIndex index_columns(const std::vector<PrimitiveColumn> &cols, size_t num_gadgets) {
    ColumnIndex idx;
    idx.pair_col.assign(num_gadgets, SIZE_MAX);
    idx.triple_col.assign(num_gadgets, SIZE_MAX);
    for (size_t i = 0; i < cols.size(); i++) {
        switch (cols[i].type) {
            case PrimitiveColumn::Type::GADGET_PAIR:
                idx.pair_col[cols[i].cnot_ordinal] = i;
                break;
            case PrimitiveColumn::Type::GADGET_TRIPLE:
                idx.triple_col[cols[i].cnot_ordinal] = i;
                break;
            case PrimitiveColumn::Type::PREP_VERIFY:
                idx.prep_col[cols[i].qubit] = i;
                break;
        }
    }
    return idx;
}

std::string region_label(bool on_control, bool after, Pauli p) {
    if (p == Pauli::X) {
        if (on_control) {
            return after ? "A" : "C";
        }
        return "B";
    }
    if (p == Pauli::Z) {
        if (on_control) {
            return "B'";
        }
        return after ? "A'" : "C'";
    }
    std::string s = "Y:";
    s += on_control ? 'c' : 't';
    s += after ? 'a' : 'b';
    return s;
}

void classify_regions(FlaggedCircuit *out, const std::vector<bool> &gadgeted);

}  // namespace

FlaggedCircuit build_flagged_circuit(const CliffordCircuit &data_circuit, const GadgetOptions &options) {
    data_circuit.validate();
    for (uint32_t q = 0; q < data_circuit.num_qubits(); q++) {
        if (data_circuit.role(q) != QubitRole::DATA) {
            throw std::invalid_argument("build_flagged_circuit expects an all-data input circuit");
        }
    }
    const auto &src = data_circuit.instructions();

    // ---- Analysis ----------------------------------------------------------
    std::vector<CnotInfo> cnots;
    for (size_t i = 0; i < src.size(); i++) {
        if (src[i].op == Op::CNOT) {
            CnotInfo info;
            info.instr = i;
            info.c = src[i].a;
            info.t = src[i].b;
            cnots.push_back(info);
        }
    }
    const size_t n_cnots = cnots.size();
    std::vector<bool> gadgeted(n_cnots, options.only_cnots.empty());
    for (size_t j : options.only_cnots) {
        if (j >= n_cnots) {
            throw std::invalid_argument("gadget index does not address a data CNOT");
        }
        gadgeted[j] = true;
    }
    for (auto &info : cnots) {
        for (int leg = 0; leg < 2; leg++) {
            uint32_t q = leg == 0 ? info.c : info.t;
            SingleQubitClifford acc;
            size_t anchor = info.instr;
            for (size_t i = info.instr + 1; i < src.size(); i++) {
                if (!src[i].touches(q)) {
                    continue;
                }
                if (src[i].op == Op::U1) {
                    acc = acc.then(src[i].u);
                    anchor = i;
                    continue;
                }
                break;
            }
            if (leg == 0) {
                info.trail_c = acc;
                info.post_anchor_c = anchor;
            } else {
                info.trail_t = acc;
                info.post_anchor_t = anchor;
            }
        }
    }
    std::vector<std::vector<size_t>> qubit_cnots(data_circuit.num_qubits());
    for (size_t j = 0; j < n_cnots; j++) {
        qubit_cnots[cnots[j].c].push_back(j);
        qubit_cnots[cnots[j].t].push_back(j);
    }
    std::vector<SingleQubitClifford> leading(data_circuit.num_qubits());
    std::vector<size_t> prep_pos(data_circuit.num_qubits(), SIZE_MAX);
    {
        std::vector<bool> seen_cnot(data_circuit.num_qubits(), false);
        for (size_t i = 0; i < src.size(); i++) {
            const auto &inst = src[i];
            if (inst.op == Op::CNOT) {
                seen_cnot[inst.a] = seen_cnot[inst.b] = true;
            } else if (inst.op == Op::U1 && !seen_cnot[inst.a]) {
                leading[inst.a] = leading[inst.a].then(inst.u);
            } else if (inst.is_preparation() && prep_pos[inst.a] == SIZE_MAX) {
                prep_pos[inst.a] = i;
            }
        }
    }

    // ---- Column universes ----------------------------------------------------
    FlaggedCircuit out;
    out.source = data_circuit;
    out.spec = options.spec;
    out.boundary_mode = options.boundary;
    out.data_cnots = n_cnots;
    for (size_t j = 0; j < n_cnots; j++) {
        if (!gadgeted[j]) {
            continue;
        }
        out.columns_x.push_back({PrimitiveColumn::Type::GADGET_PAIR, j, 0});
        out.columns_x.push_back({PrimitiveColumn::Type::GADGET_TRIPLE, j, 0});
        out.columns_z.push_back({PrimitiveColumn::Type::GADGET_PAIR, j, 0});
        out.columns_z.push_back({PrimitiveColumn::Type::GADGET_TRIPLE, j, 0});
    }
    if (options.boundary == BoundaryMode::PREP_VERIFY) {
        for (uint32_t q = 0; q < data_circuit.num_qubits(); q++) {
            if (prep_pos[q] != SIZE_MAX) {
                out.columns_x.push_back({PrimitiveColumn::Type::PREP_VERIFY, 0, q});
            }
        }
    }
    const FlagSpec &spec = options.spec;
    if (spec.p_x.cols() != out.columns_x.size() || spec.p_z.cols() != out.columns_z.size()) {
        throw std::invalid_argument(
            "parity matrix column count does not match the primitive universe (" +
            std::to_string(out.columns_x.size()) + " X / " + std::to_string(out.columns_z.size()) + " Z columns)");
    }
    if (spec.reps < 1) {
        throw std::invalid_argument("repetition count must be >= 1");
    }
    ColumnIndex colx = index_columns(out.columns_x, n_cnots);
    ColumnIndex colz = index_columns(out.columns_z, n_cnots);

    // ---- Flag allocation -------------------------------------------------------
    std::vector<FlagInfo> flags;
    uint32_t next_q = data_circuit.num_qubits();
    std::vector<size_t> wrap_z(data_circuit.num_qubits(), SIZE_MAX), wrap_x(data_circuit.num_qubits(), SIZE_MAX);
    if (options.boundary == BoundaryMode::CODE_INPUT) {
        for (uint32_t q = 0; q < data_circuit.num_qubits(); q++) {
            wrap_z[q] = flags.size();
            flags.push_back({next_q++, 'Z', 0, q, ProvenanceFlag::Level::WRAP, {}});
            wrap_x[q] = flags.size();
            flags.push_back({next_q++, 'X', 0, q, ProvenanceFlag::Level::WRAP, {}});
        }
        out.wrap_ancillae = 2 * data_circuit.num_qubits();
    }
    std::vector<std::array<std::vector<size_t>, 2>> flag_of(spec.reps);
    for (size_t rep = 0; rep < spec.reps; rep++) {
        for (int b = 0; b < 2; b++) {
            const BinaryMatrix &p = b == 0 ? spec.p_x : spec.p_z;
            for (size_t row = 0; row < p.rows(); row++) {
                FlagInfo f;
                f.qubit = next_q++;
                f.basis = b == 0 ? 'Z' : 'X';  // X-catching flags are Z-basis
                f.rep = rep;
                f.row = row;
                f.level = ProvenanceFlag::Level::FLAG;
                for (size_t c = 0; c < p.cols(); c++) {
                    if (p.get(row, c)) {
                        f.columns.push_back(c);
                    }
                }
                flag_of[rep][b].push_back(flags.size());
                flags.push_back(std::move(f));
            }
        }
    }
    out.first_level_ancillae = spec.reps * (spec.p_x.rows() + spec.p_z.rows());

    // ---- Corridor construction -------------------------------------------------
    std::map<size_t, std::vector<CouplingGroup>> before, after;

    auto covers = [&](int basis, size_t row, size_t col) {
        const BinaryMatrix &p = basis == 0 ? spec.p_x : spec.p_z;
        return col != SIZE_MAX && p.get(row, col);
    };
    // Couplings grouped by flag basis. Determinism requires every pair of
    // opposite-basis coupling windows to nest or stay disjoint, so the Z-basis
    // (X-catching) block sits strictly outside the X-basis (Z-catching) block
    // around each data CNOT, across all repetitions.
    auto post_group = [&](size_t j, uint32_t q, int basis) {
        CouplingGroup g;
        g.data_q = q;
        const CnotInfo &info = cnots[j];
        g.frame = (q == info.c) ? info.trail_c : info.trail_t;
        for (size_t rep = 0; rep < spec.reps; rep++) {
            if (basis == 1) {
                for (size_t row = 0; row < spec.p_z.rows(); row++) {
                    size_t fi = flag_of[rep][1][row];
                    if (q == info.t && covers(1, row, colz.pair_col[j])) {
                        g.couplings.push_back({q, fi});
                    }
                    if (q == info.c && covers(1, row, colz.triple_col[j])) {
                        g.couplings.push_back({q, fi});
                    }
                    if (q == info.t && covers(1, row, colz.triple_col[j])) {
                        g.couplings.push_back({q, fi});
                    }
                }
            } else {
                for (size_t row = 0; row < spec.p_x.rows(); row++) {
                    size_t fi = flag_of[rep][0][row];
                    if (q == info.c && covers(0, row, colx.pair_col[j])) {
                        g.couplings.push_back({q, fi});
                    }
                    if (q == info.c && covers(0, row, colx.triple_col[j])) {
                        g.couplings.push_back({q, fi});
                    }
                    if (q == info.t && covers(0, row, colx.triple_col[j])) {
                        g.couplings.push_back({q, fi});
                    }
                }
            }
        }
        return g;
    };
    // Pre side: descending repetitions and rows so cancellation pairs up with
    // the preceding post block of the same basis.
    auto pre_group = [&](size_t j, uint32_t q, int basis) {
        CouplingGroup g;
        g.data_q = q;
        const CnotInfo &info = cnots[j];
        for (size_t rep_ = spec.reps; rep_-- > 0;) {
            if (basis == 0) {
                for (size_t row_ = spec.p_x.rows(); row_-- > 0;) {
                    size_t fi = flag_of[rep_][0][row_];
                    if (q == info.t && covers(0, row_, colx.triple_col[j])) {
                        g.couplings.push_back({q, fi});
                    }
                    if (q == info.c && covers(0, row_, colx.pair_col[j])) {
                        g.couplings.push_back({q, fi});
                    }
                }
            } else {
                for (size_t row_ = spec.p_z.rows(); row_-- > 0;) {
                    size_t fi = flag_of[rep_][1][row_];
                    if (q == info.c && covers(1, row_, colz.triple_col[j])) {
                        g.couplings.push_back({q, fi});
                    }
                    if (q == info.t && covers(1, row_, colz.pair_col[j])) {
                        g.couplings.push_back({q, fi});
                    }
                }
            }
        }
        return g;
    };

    for (uint32_t q = 0; q < data_circuit.num_qubits(); q++) {
        const auto &seq = qubit_cnots[q];
        if (seq.empty()) {
            continue;
        }
        {
            std::vector<CouplingGroup> head;
            if (options.boundary == BoundaryMode::CODE_INPUT) {
                // Wrap closes come first (X-basis wrap nested inside the
                // Z-basis wrap), before any gadget coupling, so neither wrap
                // window straddles gadget couplings of the opposite basis.
                CouplingGroup wxg, wzg;
                wxg.data_q = wzg.data_q = q;
                wxg.frame = wzg.frame = leading[q];
                wxg.couplings.push_back({q, wrap_x[q]});
                wzg.couplings.push_back({q, wrap_z[q]});
                head.push_back(wxg);
                head.push_back(wzg);
            }
            head.push_back(pre_group(seq[0], q, 0));
            head.push_back(pre_group(seq[0], q, 1));
            auto &dst = before[cnots[seq[0]].instr];
            for (auto &g : head) {
                dst.push_back(std::move(g));
            }
        }
        for (size_t s = 0; s < seq.size(); s++) {
            size_t j = seq[s];
            size_t anchor = (q == cnots[j].c) ? cnots[j].post_anchor_c : cnots[j].post_anchor_t;
            auto &dst = after[anchor];
            dst.push_back(post_group(j, q, 1));
            dst.push_back(post_group(j, q, 0));
            if (s + 1 < seq.size()) {
                dst.push_back(pre_group(seq[s + 1], q, 0));
                dst.push_back(pre_group(seq[s + 1], q, 1));
            }
        }
    }
    if (options.boundary == BoundaryMode::PREP_VERIFY) {
        for (uint32_t q = 0; q < data_circuit.num_qubits(); q++) {
            auto it = colx.prep_col.find(q);
            if (it == colx.prep_col.end()) {
                continue;
            }
            for (size_t k = 0; k < spec.reps; k++) {
                CouplingGroup g;
                g.data_q = q;
                for (size_t row = 0; row < spec.p_x.rows(); row++) {
                    if (spec.p_x.get(row, it->second)) {
                        g.couplings.push_back({q, flag_of[k][0][row]});
                    }
                }
                if (!g.couplings.empty()) {
                    after[prep_pos[q]].push_back(std::move(g));
                }
            }
        }
    }

    // ---- Assembly ------------------------------------------------------------
    Assembly body;
    if (options.boundary == BoundaryMode::CODE_INPUT) {
        for (uint32_t q = 0; q < data_circuit.num_qubits(); q++) {
            CouplingGroup gz, gx;
            gz.data_q = gx.data_q = q;
            gz.couplings.push_back({q, wrap_z[q]});
            gx.couplings.push_back({q, wrap_x[q]});
            auto emit_open = [&](const CouplingGroup &g) {
                for (const auto &pc : g.couplings) {
                    const FlagInfo &f = flags[pc.flag];
                    Instruction cx = (f.basis == 'Z') ? Instruction::cnot(pc.data_q, f.qubit)
                                                      : Instruction::cnot(f.qubit, pc.data_q);
                    Tag t;
                    t.kind = Tag::Kind::COUPLING;
                    t.flag = pc.flag;
                    body.push(cx, t);
                }
            };
            emit_open(gz);
            emit_open(gx);
        }
        Tag t;
        t.kind = Tag::Kind::EC_TICK;
        body.push(Instruction::tick(), t);
        // Close immediately for qubits that never meet a gadget.
        for (uint32_t q = 0; q < data_circuit.num_qubits(); q++) {
            if (!qubit_cnots[q].empty()) {
                continue;
            }
            CouplingGroup wz, wx;
            wz.data_q = wx.data_q = q;
            wz.couplings.push_back({q, wrap_z[q]});
            wx.couplings.push_back({q, wrap_x[q]});
            // frame: the full single-qubit product on q never matters here; the
            // window closes before any gate on q.
            auto emit_close = [&](const CouplingGroup &g) {
                for (const auto &pc : g.couplings) {
                    const FlagInfo &f = flags[pc.flag];
                    Instruction cx = (f.basis == 'Z') ? Instruction::cnot(pc.data_q, f.qubit)
                                                      : Instruction::cnot(f.qubit, pc.data_q);
                    Tag t2;
                    t2.kind = Tag::Kind::COUPLING;
                    t2.flag = pc.flag;
                    body.push(cx, t2);
                }
            };
            emit_close(wz);
            emit_close(wx);
        }
    }
    auto emit_group = [&](const CouplingGroup &g) {
        if (g.couplings.empty()) {
            return;
        }
        bool framed = !g.frame.is_identity_action();
        if (framed) {
            body.push(Instruction::u1(g.data_q, g.frame.inverse()));
        }
        for (const auto &pc : g.couplings) {
            const FlagInfo &f = flags[pc.flag];
            Instruction cx = (f.basis == 'Z') ? Instruction::cnot(pc.data_q, f.qubit)
                                              : Instruction::cnot(f.qubit, pc.data_q);
            Tag t;
            t.kind = Tag::Kind::COUPLING;
            t.flag = pc.flag;
            body.push(cx, t);
        }
        if (framed) {
            body.push(Instruction::u1(g.data_q, g.frame));
        }
    };
    for (size_t i = 0; i < src.size(); i++) {
        auto bit = before.find(i);
        if (bit != before.end()) {
            for (const auto &g : bit->second) {
                emit_group(g);
            }
        }
        body.push(src[i]);
        auto ait = after.find(i);
        if (ait != after.end()) {
            for (const auto &g : ait->second) {
                emit_group(g);
            }
        }
    }

    // ---- Redundant-pair cancellation ------------------------------------------
    auto cancel_pairs = [&](Assembly *a) {
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<bool> dead(a->insts.size(), false);
            for (size_t i = 0; i < a->insts.size(); i++) {
                if (dead[i] || a->insts[i].op != Op::CNOT || a->tags[i].kind != Tag::Kind::COUPLING) {
                    continue;
                }
                for (size_t j = i + 1; j < a->insts.size(); j++) {
                    if (dead[j]) {
                        continue;
                    }
                    const auto &x = a->insts[i];
                    const auto &y = a->insts[j];
                    if (!(y.touches(x.a) || y.touches(x.b))) {
                        continue;
                    }
                    if (y.op == Op::CNOT && a->tags[j].kind == Tag::Kind::COUPLING && x.a == y.a && x.b == y.b) {
                        dead[i] = dead[j] = true;
                        changed = true;
                    }
                    break;
                }
            }
            if (changed) {
                Assembly next;
                for (size_t i = 0; i < a->insts.size(); i++) {
                    if (!dead[i]) {
                        next.push(a->insts[i], a->tags[i]);
                    }
                }
                *a = std::move(next);
            }
        }
    };
    if (options.cancel_redundant) {
        cancel_pairs(&body);
    }

    // ---- Meta flags -------------------------------------------------------------
    std::vector<size_t> meta_cols_zbasis, meta_cols_xbasis;  // coupling instruction indices
    for (size_t i = 0; i < body.insts.size(); i++) {
        if (body.tags[i].kind != Tag::Kind::COUPLING) {
            continue;
        }
        const FlagInfo &f = flags[body.tags[i].flag];
        if (f.level != ProvenanceFlag::Level::FLAG) {
            continue;
        }
        (f.basis == 'Z' ? meta_cols_zbasis : meta_cols_xbasis).push_back(i);
    }
    if (spec.meta_x && spec.meta_x->cols() != meta_cols_zbasis.size()) {
        throw std::invalid_argument("meta_x columns must match the Z-basis flag coupling count (" +
                                    std::to_string(meta_cols_zbasis.size()) + ")");
    }
    if (spec.meta_z && spec.meta_z->cols() != meta_cols_xbasis.size()) {
        throw std::invalid_argument("meta_z columns must match the X-basis flag coupling count (" +
                                    std::to_string(meta_cols_xbasis.size()) + ")");
    }
    if ((spec.meta_x && spec.meta_x->rows() > 0) || (spec.meta_z && spec.meta_z->rows() > 0)) {
        std::vector<std::pair<char, size_t>> meta_rows;  // (meta qubit basis, row)
        if (spec.meta_x) {
            for (size_t r = 0; r < spec.meta_x->rows(); r++) {
                meta_rows.push_back({'X', r});
            }
        }
        if (spec.meta_z) {
            for (size_t r = 0; r < spec.meta_z->rows(); r++) {
                meta_rows.push_back({'Z', r});
            }
        }
        std::map<size_t, std::vector<size_t>> pre_ins, post_ins;  // instr -> meta flag indices
        for (auto &[basis, row] : meta_rows) {
            FlagInfo m;
            m.qubit = next_q++;
            m.basis = basis;
            m.row = row;
            m.level = ProvenanceFlag::Level::META;
            size_t mi = flags.size();
            // X-basis metas protect Z-basis flags; Z-basis metas protect X-basis.
            const BinaryMatrix &mat = basis == 'X' ? *spec.meta_x : *spec.meta_z;
            const auto &cols = basis == 'X' ? meta_cols_zbasis : meta_cols_xbasis;
            for (size_t c = 0; c < mat.cols(); c++) {
                if (mat.get(row, c)) {
                    m.columns.push_back(c);
                    pre_ins[cols[c]].push_back(mi);
                    post_ins[cols[c]].push_back(mi);
                }
            }
            flags.push_back(std::move(m));
        }
        out.meta_ancillae = meta_rows.size();
        Assembly next;
        for (size_t i = 0; i < body.insts.size(); i++) {
            auto emit_meta = [&](const std::map<size_t, std::vector<size_t>> &ins, bool reverse) {
                auto it = ins.find(i);
                if (it == ins.end()) {
                    return;
                }
                auto metas = it->second;
                if (reverse) {
                    std::reverse(metas.begin(), metas.end());
                }
                for (size_t mi : metas) {
                    const FlagInfo &m = flags[mi];
                    const FlagInfo &prot = flags[body.tags[i].flag];
                    Instruction cx = (m.basis == 'Z') ? Instruction::cnot(prot.qubit, m.qubit)
                                                      : Instruction::cnot(m.qubit, prot.qubit);
                    Tag t;
                    t.kind = Tag::Kind::COUPLING;
                    t.flag = mi;
                    next.push(cx, t);
                }
            };
            emit_meta(pre_ins, true);
            next.push(body.insts[i], body.tags[i]);
            emit_meta(post_ins, false);
        }
        body = std::move(next);
        if (options.cancel_redundant) {
            cancel_pairs(&body);
        }
    }

    // ---- Final circuit -----------------------------------------------------------
    CliffordCircuit result(next_q);
    for (uint32_t q = 0; q < data_circuit.num_qubits(); q++) {
        result.set_role(q, QubitRole::DATA);
        if (data_circuit.inputs().count(q)) {
            result.add_input(q);
        }
    }
    for (const auto &f : flags) {
        QubitRole r;
        if (f.level == ProvenanceFlag::Level::META) {
            r = f.basis == 'Z' ? QubitRole::META_Z : QubitRole::META_X;
        } else {
            r = f.basis == 'Z' ? QubitRole::FLAG_Z : QubitRole::FLAG_X;
        }
        result.set_role(f.qubit, r);
    }
    for (const auto &f : flags) {
        result.append(f.basis == 'Z' ? Instruction::prep_z(f.qubit) : Instruction::prep_x(f.qubit));
    }
    for (size_t i = 0; i < body.insts.size(); i++) {
        result.append(body.insts[i]);
    }
    for (size_t fi = 0; fi < flags.size(); fi++) {
        const FlagInfo &f = flags[fi];
        result.append(f.basis == 'Z' ? Instruction::meas_z(f.qubit) : Instruction::meas_x(f.qubit));
        ProvenanceFlag p;
        p.meas_index = result.measurement_count() - 1;
        p.basis = f.basis;
        p.rep = f.rep;
        p.row = f.row;
        p.level = f.level;
        p.qubit = f.qubit;
        p.columns = f.columns;
        out.flags.push_back(p);
    }
    result.validate();
    out.circuit = std::move(result);

    classify_regions(&out, gadgeted);
    return out;
}

namespace {

void classify_regions(FlaggedCircuit *out, const std::vector<bool> &gadgeted) {
    const CliffordCircuit &c = out->circuit;
    EventIndex idx(c);
    // Data CNOTs in the final circuit, in order.
    std::vector<size_t> cnot_instr;
    const auto &insts = c.instructions();
    for (size_t i = 0; i < insts.size(); i++) {
        if (insts[i].op == Op::CNOT && c.role(insts[i].a) == QubitRole::DATA &&
            c.role(insts[i].b) == QubitRole::DATA) {
            cnot_instr.push_back(i);
        }
    }
    if (cnot_instr.size() != out->data_cnots) {
        throw std::logic_error("lost track of data CNOTs during assembly");
    }

    auto tuple_of = [&](const FaultLocation &f) {
        PropagationResult r = propagate(c, idx, FaultSet::single(f));
        std::string key(r.outcome_flips.begin(), r.outcome_flips.end());
        key.push_back('|');
        key += r.residual.packed_key();
        return key;
    };

    // Canonical region tuples, per gadget.
    std::map<std::string, std::pair<size_t, std::string>> canon;
    for (size_t j = 0; j < out->data_cnots; j++) {
        if (!gadgeted[j]) {
            continue;
        }
        uint32_t cq = insts[cnot_instr[j]].a;
        uint32_t tq = insts[cnot_instr[j]].b;
        for (int leg = 0; leg < 2; leg++) {
            uint32_t q = leg == 0 ? cq : tq;
            uint32_t at = idx.slot_of(q, static_cast<uint32_t>(cnot_instr[j]));
            for (int aft = 0; aft < 2; aft++) {
                for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
                    FaultLocation f = FaultLocation::pauli_fault(q, at + aft, p);
                    std::string key = tuple_of(f);
                    canon.emplace(key, std::make_pair(j, region_label(leg == 0, aft == 1, p)));
                }
            }
        }
    }
    // Prep-verify canonical locations: the gap right after the preparation.
    std::map<uint64_t, uint32_t> prep_slot;  // qubit -> slot after prep
    if (out->boundary_mode == BoundaryMode::PREP_VERIFY) {
        for (const auto &col : out->columns_x) {
            if (col.type != PrimitiveColumn::Type::PREP_VERIFY) {
                continue;
            }
            uint32_t q = col.qubit;
            const auto &ev = idx.events(q);
            for (uint32_t s = 0; s < ev.size(); s++) {
                if (insts[ev[s]].is_preparation() && insts[ev[s]].a == q) {
                    prep_slot[q] = s + 1;
                    for (Pauli p : {Pauli::X, Pauli::Y}) {
                        // Z before a |0> wire is trivial; X and Y are the errors.
                        std::string key = tuple_of(FaultLocation::pauli_fault(q, s + 1, p));
                        canon.emplace(key, std::make_pair(static_cast<size_t>(q), std::string("P")));
                    }
                    break;
                }
            }
        }
    }

    // Wrap-window exclusion: gaps up to and including the wrap close couplings
    // are conceptually covered by the boundary error correction.
    std::vector<uint32_t> min_slot(c.num_qubits(), 0);
    if (out->boundary_mode == BoundaryMode::CODE_INPUT) {
        // For each WRAP flag, its second coupling is the window close; raise
        // min_slot on the wrapped data qubit past it.
        for (const auto &f : out->flags) {
            if (f.level != ProvenanceFlag::Level::WRAP) {
                continue;
            }
            const auto &ev = idx.events(f.qubit);
            int seen = 0;
            for (uint32_t s = 0; s < ev.size(); s++) {
                if (insts[ev[s]].op == Op::CNOT) {
                    seen++;
                    if (seen == 2) {
                        uint32_t dq = insts[ev[s]].a == f.qubit ? insts[ev[s]].b : insts[ev[s]].a;
                        uint32_t dslot = idx.slot_of(dq, ev[s]);
                        min_slot[dq] = std::max(min_slot[dq], dslot + 1);
                    }
                }
            }
        }
    }

    // Classify every data-qubit gap between its first and last CNOT event.
    for (uint32_t q = 0; q < c.num_qubits(); q++) {
        if (c.role(q) != QubitRole::DATA) {
            continue;
        }
        const auto &ev = idx.events(q);
        uint32_t first_cx = UINT32_MAX, last_cx = 0;
        for (uint32_t s = 0; s < ev.size(); s++) {
            if (insts[ev[s]].op == Op::CNOT) {
                first_cx = std::min(first_cx, s);
                last_cx = std::max(last_cx, s);
            }
        }
        if (first_cx == UINT32_MAX) {
            continue;
        }
        for (uint32_t s = first_cx + 1; s <= last_cx; s++) {
            if (s < min_slot[q]) {
                continue;
            }
            for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
                FaultLocation f = FaultLocation::pauli_fault(q, s, p);
                auto it = canon.find(tuple_of(f));
                if (it != canon.end()) {
                    out->bulk.push_back({f, it->second.first, it->second.second});
                } else {
                    out->boundary.push_back(f);
                }
            }
        }
        // The prep-verify location itself (before the first CNOT) is bulk.
        auto pit = prep_slot.find(q);
        if (pit != prep_slot.end() && pit->second <= first_cx) {
            for (Pauli p : {Pauli::X, Pauli::Y}) {
                FaultLocation f = FaultLocation::pauli_fault(q, pit->second, p);
                auto it = canon.find(tuple_of(f));
                if (it != canon.end()) {
                    out->bulk.push_back({f, it->second.first, it->second.second});
                }
            }
        }
    }
}

}  // namespace

// ---- Composable op wrappers ---------------------------------------------------

FlaggedCircuit primitive_full_gadget(const CliffordCircuit &c, size_t cnot_index) {
    // cnot_index counts data CNOTs in order.
    size_t n = 0;
    for (const auto &inst : c.instructions()) {
        n += inst.op == Op::CNOT;
    }
    if (cnot_index >= n) {
        throw std::invalid_argument("index does not address a data CNOT");
    }
    GadgetOptions opt;
    opt.only_cnots = {cnot_index};
    opt.spec = FlagSpec::uncompressed(2, 2);
    return build_flagged_circuit(c, opt);
}

FlaggedCircuit full_gadgets_all(const CliffordCircuit &c) {
    size_t n = 0;
    for (const auto &inst : c.instructions()) {
        n += inst.op == Op::CNOT;
    }
    GadgetOptions opt;
    opt.spec = FlagSpec::uncompressed(2 * n, 2 * n);
    return build_flagged_circuit(c, opt);
}

FlaggedCircuit overlap_adjacent(const FlaggedCircuit &f) {
    GadgetOptions opt;
    opt.spec = f.spec;
    opt.boundary = f.boundary_mode;
    return build_flagged_circuit(f.source, opt);
}

FlaggedCircuit conjugate_detector(const FlaggedCircuit &f, size_t cnot_index, SingleQubitClifford c1,
                                  SingleQubitClifford c2) {
    // Verify that c1/c2 match the Cliffords trailing the addressed CNOT (or
    // append them when the source has none), then rebuild: the builder
    // conjugates the detection couplings by the trailing product.
    CliffordCircuit src = f.source;
    size_t seen = 0;
    size_t pos = SIZE_MAX;
    uint32_t cq = 0, tq = 0;
    const auto &insts = src.instructions();
    for (size_t i = 0; i < insts.size(); i++) {
        if (insts[i].op == Op::CNOT) {
            if (seen == cnot_index) {
                pos = i;
                cq = insts[i].a;
                tq = insts[i].b;
                break;
            }
            seen++;
        }
    }
    if (pos == SIZE_MAX) {
        throw std::invalid_argument("no gadget at this CNOT index");
    }
    CliffordCircuit rebuilt(src.num_qubits());
    for (uint32_t q : src.inputs()) {
        rebuilt.add_input(q);
    }
    for (size_t i = 0; i < insts.size(); i++) {
        rebuilt.append(insts[i]);
        if (i == pos) {
            if (!c1.is_identity_action()) {
                rebuilt.append(Instruction::u1(cq, c1));
            }
            if (!c2.is_identity_action()) {
                rebuilt.append(Instruction::u1(tq, c2));
            }
        }
    }
    GadgetOptions opt;
    opt.spec = f.spec;
    opt.boundary = f.boundary_mode;
    return build_flagged_circuit(rebuilt, opt);
}

FlaggedCircuit compress(const FlaggedCircuit &f, const FlagSpec &spec) {
    GadgetOptions opt;
    opt.spec = spec;
    opt.boundary = f.boundary_mode;
    return build_flagged_circuit(f.source, opt);
}

FlaggedCircuit add_meta_flags(const FlaggedCircuit &f, const BinaryMatrix &meta_x, const BinaryMatrix &meta_z) {
    GadgetOptions opt;
    opt.spec = f.spec;
    opt.spec.meta_x = meta_x;
    opt.spec.meta_z = meta_z;
    opt.boundary = f.boundary_mode;
    return build_flagged_circuit(f.source, opt);
}

FlaggedCircuit add_boundary_ec(const FlaggedCircuit &f, const std::optional<StabilizerCode> &code) {
    BoundaryMode mode = code.has_value() ? BoundaryMode::CODE_INPUT : BoundaryMode::PREP_VERIFY;
    if (f.boundary_mode == mode) {
        return f;  // idempotent
    }
    if (code.has_value() && code->n != f.source.num_qubits()) {
        throw std::invalid_argument("boundary code qubit count does not match the circuit");
    }
    GadgetOptions opt;
    opt.spec = f.spec;
    opt.boundary = mode;
    if (mode == BoundaryMode::PREP_VERIFY) {
        // The X-side universe grows by one prep-verify column per prepared
        // qubit; extend the matrix with identity columns-as-rows.
        size_t preps = 0;
        for (const auto &inst : f.source.instructions()) {
            preps += inst.op == Op::PREP_Z || inst.op == Op::PREP_X;
        }
        BinaryMatrix px(f.spec.p_x.rows() + preps, f.spec.p_x.cols() + preps);
        for (size_t r = 0; r < f.spec.p_x.rows(); r++) {
            for (size_t c = 0; c < f.spec.p_x.cols(); c++) {
                if (f.spec.p_x.get(r, c)) {
                    px.set(r, c, true);
                }
            }
        }
        for (size_t i = 0; i < preps; i++) {
            px.set(f.spec.p_x.rows() + i, f.spec.p_x.cols() + i, true);
        }
        opt.spec.p_x = px;
    }
    return build_flagged_circuit(f.source, opt);
}

// ---- Strategy layer --------------------------------------------------------------

FlaggedCircuit flag_circuit(const CliffordCircuit &data_circuit, const StrategyConfig &config) {
    size_t n = 0;
    size_t preps = 0;
    for (const auto &inst : data_circuit.instructions()) {
        n += inst.op == Op::CNOT;
        preps += inst.is_preparation();
    }
    bool prep_mode = config.boundary && preps > 0;
    size_t cols_x = 2 * n + (prep_mode ? preps : 0);
    size_t cols_z = 2 * n;

    GadgetOptions opt;
    opt.boundary = config.boundary ? (prep_mode ? BoundaryMode::PREP_VERIFY : BoundaryMode::CODE_INPUT)
                                   : BoundaryMode::NONE;

    auto matrix_for = [&](size_t cols) -> BinaryMatrix {
        switch (config.strategy) {
            case FlagStrategy::UNCOMPRESSED:
                return BinaryMatrix::identity(cols);
            case FlagStrategy::BCH: {
                int d = 2 * config.t + 3;  // distance 2r+1 with r = t+1 (two flips per error)
                return bch_parity_check(cols, d).parity;
            }
            case FlagStrategy::HAMMING:
                return hamming_parity(cols).parity;
            case FlagStrategy::SPARSE_LDPC:
                return random_sparse(config.ldpc_rows, cols, config.density, config.seed);
            case FlagStrategy::MATRIX_FILE:
                if (!config.matrix) {
                    throw std::invalid_argument("matrix strategy requires a matrix");
                }
                return *config.matrix;
        }
        throw std::invalid_argument("unknown strategy");
    };
    opt.spec.p_x = matrix_for(cols_x);
    opt.spec.p_z = matrix_for(cols_z);
    if (config.strategy == FlagStrategy::UNCOMPRESSED) {
        opt.spec.reps = config.reps ? config.reps : 1;
    } else if (config.reps) {
        opt.spec.reps = config.reps;
    } else {
        // Default 2t+1; drop to 2t when every parity column has weight >= 2.
        bool all_heavy = true;
        for (size_t c = 0; c < opt.spec.p_x.cols() && all_heavy; c++) {
            all_heavy = opt.spec.p_x.col_weight(c) >= 2;
        }
        for (size_t c = 0; c < opt.spec.p_z.cols() && all_heavy; c++) {
            all_heavy = opt.spec.p_z.col_weight(c) >= 2;
        }
        opt.spec.reps = all_heavy ? 2 * config.t : 2 * config.t + 1;
    }

    if (!config.meta) {
        return build_flagged_circuit(data_circuit, opt);
    }
    // Meta levels need the built first level to count flag couplings.
    FlaggedCircuit first = build_flagged_circuit(data_circuit, opt);
    size_t nz = 0, nx = 0;
    {
        EventIndex idx(first.circuit);
        for (const auto &pf : first.flags) {
            if (pf.level != ProvenanceFlag::Level::FLAG) {
                continue;
            }
            size_t k = 0;
            for (uint32_t e : idx.events(pf.qubit)) {
                k += first.circuit.instructions()[e].op == Op::CNOT;
            }
            (pf.basis == 'Z' ? nz : nx) += k;
        }
    }
    opt.spec.meta_x = nz ? hamming_parity_no_weight1(nz).parity : BinaryMatrix(0, 0);
    opt.spec.meta_z = nx ? hamming_parity_no_weight1(nx).parity : BinaryMatrix(0, 0);
    return build_flagged_circuit(data_circuit, opt);
}

}  // namespace flagcirc

namespace flagcirc {

// ---- Cat states -------------------------------------------------------------

namespace {

// Marks every gap on the cat qubits (after preparation, through the terminal
// slot) as bulk; the cat circuits are verified against every single fault.
void classify_cat(FlaggedCircuit *out) {
    const CliffordCircuit &c = out->circuit;
    EventIndex idx(c);
    for (uint32_t q = 0; q < c.num_qubits(); q++) {
        if (c.role(q) != QubitRole::DATA) {
            continue;
        }
        size_t nev = idx.event_count(q);
        for (uint32_t s = 1; s <= nev; s++) {
            for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
                out->bulk.push_back({FaultLocation::pauli_fault(q, s, p), q, "cat"});
            }
        }
    }
}

}  // namespace

FlaggedCircuit cat_state_circuit(int size) {
    if (size != 4 && size != 8) {
        throw std::invalid_argument("cat_state_circuit supports sizes 4 and 8");
    }
    FlaggedCircuit out;
    uint32_t n = static_cast<uint32_t>(size);
    if (size == 4) {
        // Data c0..c3; flags: v1 checks Z1Z2, v2 checks Z2Z3, w verifies the
        // preparation of c1. 3 ancillae, 5 CNOTs beyond the 3 GHZ CNOTs.
        CliffordCircuit c(7);
        for (uint32_t q = 4; q < 7; q++) {
            c.set_role(q, QubitRole::FLAG_Z);
        }
        c.append(Instruction::prep_z(4));
        c.append(Instruction::prep_z(5));
        c.append(Instruction::prep_z(6));
        c.append(Instruction::prep_x(0));
        for (uint32_t q = 1; q < 4; q++) {
            c.append(Instruction::prep_z(q));
        }
        c.append(Instruction::cnot(1, 6));  // prep verify on c1
        c.append(Instruction::cnot(0, 1));
        c.append(Instruction::cnot(0, 2));
        c.append(Instruction::cnot(0, 3));
        c.append(Instruction::cnot(1, 4));
        c.append(Instruction::cnot(2, 4));
        c.append(Instruction::cnot(2, 5));
        c.append(Instruction::cnot(3, 5));
        c.append(Instruction::meas_z(4));
        c.append(Instruction::meas_z(5));
        c.append(Instruction::meas_z(6));
        c.validate();
        out.circuit = c;
        out.source = c;
        for (int i = 0; i < 3; i++) {
            ProvenanceFlag p;
            p.meas_index = i;
            p.basis = 'Z';
            p.level = ProvenanceFlag::Level::FLAG;
            p.qubit = 4 + i;
            out.flags.push_back(p);
        }
        out.first_level_ancillae = 3;
    } else {
        // Data c0..c7; flags A=8 (Z1 Z3 Z5 Z7), B=9 (Z2 Z4 Z6 Z7),
        // C=10 (Z3 Z6), D=11 (Z4 Z7). 4 ancillae, 12 CNOTs beyond the 7 GHZ.
        CliffordCircuit c(12);
        for (uint32_t q = 8; q < 12; q++) {
            c.set_role(q, QubitRole::FLAG_Z);
        }
        for (uint32_t q = 8; q < 12; q++) {
            c.append(Instruction::prep_z(q));
        }
        c.append(Instruction::prep_x(0));
        for (uint32_t q = 1; q < 8; q++) {
            c.append(Instruction::prep_z(q));
        }
        const uint32_t A = 8, B = 9, C = 10, D = 11;
        auto cx = [&](uint32_t a, uint32_t b) { c.append(Instruction::cnot(a, b)); };
        cx(0, 1);
        cx(1, A);
        cx(0, 2);
        cx(2, B);
        cx(0, 3);
        cx(3, A);
        cx(3, C);
        cx(0, 4);
        cx(4, B);
        cx(4, D);
        cx(0, 5);
        cx(5, A);
        cx(0, 6);
        cx(6, B);
        cx(6, C);
        cx(0, 7);
        cx(7, A);
        cx(7, B);
        cx(7, D);
        for (uint32_t q = 8; q < 12; q++) {
            c.append(Instruction::meas_z(q));
        }
        c.validate();
        out.circuit = c;
        out.source = c;
        for (int i = 0; i < 4; i++) {
            ProvenanceFlag p;
            p.meas_index = i;
            p.basis = 'Z';
            p.level = ProvenanceFlag::Level::FLAG;
            p.qubit = 8 + i;
            out.flags.push_back(p);
        }
        out.first_level_ancillae = 4;
    }
    out.data_cnots = n - 1;
    classify_cat(&out);
    return out;
}

// ---- Data-syndrome codes ------------------------------------------------------

FlaggedCircuit flag_data_syndrome(const StabilizerCode &code, const ClassicalCode &g, const ClassicalCode &h_flag,
                                  int t, bool include_interval_gadgets) {
    if (t < 1) {
        throw std::invalid_argument("t must be >= 1");
    }
    if (h_flag.design_d && *h_flag.design_d < 2 * t + 1) {
        throw std::invalid_argument("flag code distance too small for requested t");
    }
    auto basis = gf2_nullspace(g.parity);
    const size_t ell = code.generators.size();
    if (basis.size() != ell) {
        throw std::invalid_argument("classical code dimension must equal the stabilizer generator count");
    }
    const size_t n_checks = g.n;
    const uint32_t nd = code.n;

    // Measured Paulis: rows of the redundant check set G*H.
    BinaryMatrix encoder(n_checks, ell);
    for (size_t j = 0; j < ell; j++) {
        for (size_t i = 0; i < n_checks; i++) {
            if (basis[j][i]) {
                encoder.set(i, j, true);
            }
        }
    }
    std::vector<PauliString> checks;
    for (size_t i = 0; i < n_checks; i++) {
        PauliString p(nd);
        for (size_t j = 0; j < ell; j++) {
            if (encoder.get(i, j)) {
                p *= code.generators[j];
            }
        }
        checks.push_back(p);
    }
    if (h_flag.n != nd) {
        throw std::invalid_argument("h_flag block length must equal the data qubit count");
    }

    FlaggedCircuit out;
    CliffordCircuit c(nd);
    for (uint32_t q = 0; q < nd; q++) {
        c.add_input(q);
    }
    uint32_t next_q = nd;
    struct Leg {
        size_t check;
        uint32_t qubit;
        Pauli pauli;
        uint32_t anc;
    };
    std::vector<Leg> legs;
    std::vector<uint32_t> check_anc(n_checks);
    std::vector<uint32_t> rc_flag(n_checks, UINT32_MAX);
    for (size_t i = 0; i < n_checks; i++) {
        check_anc[i] = next_q++;
        c.set_role(check_anc[i], QubitRole::EC_ANCILLA);
        if (checks[i].weight() >= 3) {
            rc_flag[i] = next_q++;
            c.set_role(rc_flag[i], QubitRole::FLAG_Z);
        }
    }
    // Interval window flags: h_flag rows per basis per spatial repetition.
    struct WindowFlag {
        uint32_t qubit;
        char basis;  // 'Z' catches X on the data, 'X' catches Z
        size_t row;
        size_t rep;
        std::vector<uint32_t> data_qubits;
    };
    std::vector<WindowFlag> windows;
    if (include_interval_gadgets) {
        for (int rep = 0; rep < t; rep++) {
            for (char basis : {'Z', 'X'}) {
                for (size_t r = 0; r < h_flag.parity.rows(); r++) {
                    WindowFlag w;
                    w.qubit = next_q++;
                    w.basis = basis;
                    w.row = r;
                    w.rep = static_cast<size_t>(rep);
                    for (uint32_t q = 0; q < nd; q++) {
                        if (h_flag.parity.get(r, q)) {
                            w.data_qubits.push_back(q);
                        }
                    }
                    windows.push_back(w);
                    c.set_role(w.qubit, basis == 'Z' ? QubitRole::FLAG_Z : QubitRole::FLAG_X);
                }
            }
        }
    }
    c.ensure_qubits(next_q);

    // Preparations.
    for (size_t i = 0; i < n_checks; i++) {
        c.append(Instruction::prep_x(check_anc[i]));
        if (rc_flag[i] != UINT32_MAX) {
            c.append(Instruction::prep_z(rc_flag[i]));
        }
    }
    for (const auto &w : windows) {
        c.append(w.basis == 'Z' ? Instruction::prep_z(w.qubit) : Instruction::prep_x(w.qubit));
    }
    // Window opens: before any check coupling on the selected qubits.
    for (const auto &w : windows) {
        for (uint32_t q : w.data_qubits) {
            c.append(w.basis == 'Z' ? Instruction::cnot(q, w.qubit) : Instruction::cnot(w.qubit, q));
        }
    }

    // Check couplings, with RC flags and window-absorbing couplings.
    std::vector<size_t> check_meas_index(n_checks);
    size_t meas_count = 0;
    std::vector<ProvenanceFlag> flag_prov;
    for (size_t i = 0; i < n_checks; i++) {
        auto support = checks[i].support();
        std::vector<std::pair<uint32_t, Pauli>> srt(support.begin(), support.end());
        size_t w = srt.size();
        for (size_t k = 0; k < w; k++) {
            auto [q, p] = srt[k];
            // Controlled-P from the ancilla onto the data qubit.
            if (p == Pauli::Z) {
                c.append(Instruction::u1(q, SingleQubitClifford::h()));
            } else if (p == Pauli::Y) {
                c.append(Instruction::u1(q, SingleQubitClifford::s_dag()));
            }
            c.append(Instruction::cnot(check_anc[i], q));
            if (p == Pauli::Z) {
                c.append(Instruction::u1(q, SingleQubitClifford::h()));
            } else if (p == Pauli::Y) {
                c.append(Instruction::u1(q, SingleQubitClifford::s()));
            }
            legs.push_back({i, q, p, check_anc[i]});
            // Window-absorbing couplings: a Z window crossing an X leg picks up
            // the ancilla's Z; an X window crossing a Z/Y leg picks up its Z
            // via a CZ.
            for (const auto &win : windows) {
                bool sel = false;
                for (uint32_t dq : win.data_qubits) {
                    sel |= dq == q;
                }
                if (!sel) {
                    continue;
                }
                bool x_component = pauli_x_bit(p);
                bool z_component = pauli_z_bit(p);
                if (win.basis == 'Z' && x_component) {
                    c.append(Instruction::cnot(check_anc[i], win.qubit));
                } else if (win.basis == 'X' && z_component) {
                    c.append(Instruction::u1(check_anc[i], SingleQubitClifford::h()));
                    c.append(Instruction::cnot(win.qubit, check_anc[i]));
                    c.append(Instruction::u1(check_anc[i], SingleQubitClifford::h()));
                }
            }
            if (rc_flag[i] != UINT32_MAX && (k == 0 || k + 1 == w - 1)) {
                // After the first leg and before the last leg.
                c.append(Instruction::cnot(check_anc[i], rc_flag[i]));
            }
        }
        c.append(Instruction::meas_x(check_anc[i]));
        check_meas_index[i] = meas_count++;
        if (rc_flag[i] != UINT32_MAX) {
            c.append(Instruction::meas_z(rc_flag[i]));
            ProvenanceFlag p;
            p.meas_index = meas_count++;
            p.basis = 'Z';
            p.level = ProvenanceFlag::Level::FLAG;
            p.qubit = rc_flag[i];
            flag_prov.push_back(p);
        }
    }
    // Window closes, in reverse so opposite-basis windows nest.
    for (auto it = windows.rbegin(); it != windows.rend(); ++it) {
        for (uint32_t q : it->data_qubits) {
            c.append(it->basis == 'Z' ? Instruction::cnot(q, it->qubit) : Instruction::cnot(it->qubit, q));
        }
    }
    for (const auto &w : windows) {
        c.append(w.basis == 'Z' ? Instruction::meas_z(w.qubit) : Instruction::meas_x(w.qubit));
        ProvenanceFlag p;
        p.meas_index = meas_count++;
        p.basis = w.basis;
        p.row = w.row;
        p.rep = w.rep;
        p.level = ProvenanceFlag::Level::FLAG;
        p.qubit = w.qubit;
        flag_prov.push_back(p);
    }
    c.validate();

    out.circuit = c;
    out.source = c;
    out.flags = flag_prov;
    out.data_cnots = legs.size();
    out.first_level_ancillae = windows.size();
    DataSyndromeInfo info;
    info.original_parity = BinaryMatrix::identity(ell);
    info.encoder = encoder;
    info.redundant_checks = encoder;
    info.check_meas_indices = check_meas_index;
    out.data_syndrome = info;

    // Bulk: every gap on data qubits between their first and last check leg,
    // plus every gap on the check ancillae.
    EventIndex idx(out.circuit);
    const auto &insts = out.circuit.instructions();
    for (uint32_t q = 0; q < out.circuit.num_qubits(); q++) {
        QubitRole role = out.circuit.role(q);
        if (role != QubitRole::DATA && role != QubitRole::EC_ANCILLA) {
            continue;
        }
        const auto &ev = idx.events(q);
        uint32_t first = UINT32_MAX, last = 0;
        for (uint32_t s = 0; s < ev.size(); s++) {
            const auto &inst = insts[ev[s]];
            bool is_leg = inst.op == Op::CNOT;
            if (role == QubitRole::DATA && is_leg) {
                // Only legs to check ancillae bound the protected interval.
                uint32_t other = inst.a == q ? inst.b : inst.a;
                is_leg = out.circuit.role(other) == QubitRole::EC_ANCILLA;
            }
            if (is_leg) {
                first = std::min(first, s);
                last = std::max(last, s);
            }
        }
        if (first == UINT32_MAX) {
            continue;
        }
        for (uint32_t s = first + 1; s <= last; s++) {
            for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
                out.bulk.push_back({FaultLocation::pauli_fault(q, s, p), q, role == QubitRole::DATA ? "D" : "E"});
            }
        }
    }
    return out;
}

FlaggedCircuit data_syndrome_example_513(bool include_interval_gadgets) {
    StabilizerCode code = perfect5();
    ClassicalCode g = hamming_parity(7);
    ClassicalCode h_flag = hamming_parity(5);
    return flag_data_syndrome(code, g, h_flag, 1, include_interval_gadgets);
}

}  // namespace flagcirc
