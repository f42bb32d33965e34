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

#include "flagcirc/tableau.hpp"

#include <stdexcept>

namespace flagcirc {

PauliString conjugate_through(const PauliString &p, const Instruction &inst) {
    if (inst.op != Op::CNOT && inst.op != Op::U1) {
        throw std::invalid_argument("conjugate_through expects a CNOT or single-qubit Clifford");
    }
    PauliString out = p;
    if (inst.op == Op::CNOT) {
        Pauli pc = out.get(inst.a);
        Pauli pt = out.get(inst.b);
        if (pauli_x_bit(pc)) {
            out.mul_x(inst.b);
        }
        if (pauli_z_bit(pt)) {
            out.mul_z(inst.a);
        }
    } else {
        out.set(inst.a, inst.u.conjugate(out.get(inst.a)));
    }
    return out;
}

PauliString conjugate_through_circuit(const CliffordCircuit &c, const PauliString &p) {
    PauliString cur = p;
    for (const auto &inst : c.instructions()) {
        switch (inst.op) {
            case Op::CNOT:
            case Op::U1:
                cur = conjugate_through(cur, inst);
                break;
            case Op::TICK:
                break;
            default:
                throw std::invalid_argument("conjugate_through_circuit expects a unitary circuit");
        }
    }
    return cur;
}

namespace {

/// Stabilizer rows plus a gate recorder. Gates are recorded in the order they
/// are applied to reduce the target tableau down to <Z_0..Z_{n-1}>; the
/// encoder is the reversed, inverted list.
struct Reduction {
    size_t n;
    std::vector<PauliString> rows;
    std::vector<Instruction> gates;

    void h(uint32_t q) {
        gates.push_back(Instruction::u1(q, SingleQubitClifford::h()));
        for (auto &r : rows) {
            Pauli p = r.get(q);
            r.set(q, SingleQubitClifford::h().conjugate(p));
        }
    }
    void s(uint32_t q) {
        gates.push_back(Instruction::u1(q, SingleQubitClifford::s()));
        for (auto &r : rows) {
            r.set(q, SingleQubitClifford::s().conjugate(r.get(q)));
        }
    }
    void cx(uint32_t c, uint32_t t) {
        gates.push_back(Instruction::cnot(c, t));
        for (auto &r : rows) {
            Pauli pc = r.get(c);
            Pauli pt = r.get(t);
            if (pauli_x_bit(pc)) {
                r.mul_x(t);
            }
            if (pauli_z_bit(pt)) {
                r.mul_z(c);
            }
        }
    }
    void cz(uint32_t a, uint32_t b) {
        h(b);
        cx(a, b);
        h(b);
    }
    bool x_bit(size_t r, uint32_t q) const { return pauli_x_bit(rows[r].get(q)); }
    bool z_bit(size_t r, uint32_t q) const { return pauli_z_bit(rows[r].get(q)); }
};

}  // namespace

CliffordCircuit synth_prep(const StabilizerCode &code, LogicalState state) {
    const size_t n = code.n;
    const size_t g = code.generators.size();
    Reduction red;
    red.n = n;
    red.rows = code.generators;
    for (size_t i = 0; i < code.k; i++) {
        red.rows.push_back(state == LogicalState::ZERO ? code.logical_z[i] : code.logical_x[i]);
    }
    if (red.rows.size() != n) {
        throw std::invalid_argument("code data does not determine a full stabilizer state");
    }
    const std::vector<PauliString> target = red.rows;

    // Row ops are free (they re-generate the same group) but must respect the
    // generator/logical block split: logical rows may absorb generator rows,
    // never the other way around.
    auto row_xor = [&](size_t src, size_t dst) {
        if (src >= g && dst < g) {
            throw std::logic_error("row op would mix a logical row into the generator block");
        }
        red.rows[dst] *= red.rows[src];
    };

    // Stage 1: X-block elimination to per-row pivots, generator rows first so
    // the block split survives the row swaps.
    std::vector<uint32_t> pivot_col;
    std::vector<size_t> pivot_row;
    std::vector<bool> col_used(n, false);
    auto eliminate_block = [&](size_t begin, size_t end, size_t *done) {
        for (uint32_t q = 0; q < n; q++) {
            if (*done >= end || col_used[q]) {
                continue;
            }
            size_t sel = SIZE_MAX;
            for (size_t r = *done; r < end; r++) {
                if (red.x_bit(r, q)) {
                    sel = r;
                    break;
                }
            }
            if (sel == SIZE_MAX) {
                continue;
            }
            std::swap(red.rows[sel], red.rows[*done]);
            for (size_t r = 0; r < n; r++) {
                if (r != *done && red.x_bit(r, q)) {
                    row_xor(*done, r);
                }
            }
            pivot_col.push_back(q);
            pivot_row.push_back(*done);
            col_used[q] = true;
            (*done)++;
        }
        (void)begin;
    };
    // After a block is eliminated, CX away the X support its pivot rows carry
    // outside their pivot columns; only the pivot row holds X there, so the
    // column op touches nothing else. This keeps X confined to pivot columns
    // before the next block runs (the block-restricted row ops rely on it).
    auto bare_pivots = [&](size_t from) {
        for (size_t i = from; i < pivot_row.size(); i++) {
            size_t r = pivot_row[i];
            uint32_t q = pivot_col[i];
            for (uint32_t c = 0; c < n; c++) {
                if (c != q && red.x_bit(r, c)) {
                    red.cx(q, c);
                }
            }
        }
    };
    size_t done = 0;
    eliminate_block(0, g, &done);
    bare_pivots(0);
    size_t gen_pivots = pivot_row.size();
    if (done < g) {
        done = g;  // remaining generator rows are pure Z
    }
    eliminate_block(g, n, &done);
    bare_pivots(gen_pivots);

    // Stage 2: clear the pivot rows' Z parts. S clears the diagonal, CZ the
    // rest; commutation makes pivot-pair cross terms symmetric, so one CZ
    // fixes both sides.
    std::vector<bool> is_pivot_col(n, false);
    for (uint32_t q : pivot_col) {
        is_pivot_col[q] = true;
    }
    for (size_t i = 0; i < pivot_row.size(); i++) {
        size_t r = pivot_row[i];
        uint32_t q = pivot_col[i];
        if (red.z_bit(r, q)) {
            red.s(q);
        }
        for (uint32_t c = 0; c < n; c++) {
            if (c != q && red.z_bit(r, c) && !is_pivot_col[c]) {
                red.cz(q, c);
            }
        }
        for (size_t j = i + 1; j < pivot_row.size(); j++) {
            uint32_t q2 = pivot_col[j];
            if (red.z_bit(r, q2)) {
                red.cz(q, q2);
            }
        }
    }
    // Stage 3: rotate the X pivots into Z.
    for (uint32_t q : pivot_col) {
        red.h(q);
    }
    // All rows are now pure Z. Sanity check.
    for (size_t r = 0; r < n; r++) {
        for (uint32_t q = 0; q < n; q++) {
            if (red.x_bit(r, q)) {
                throw std::logic_error("tableau reduction failed to clear the X block");
            }
        }
    }
    // Stage 4: CX column ops bring the Z block to the identity: row r ends as
    // a bare Z on qubit r, generators on qubits 0..g-1, logicals trailing.
    for (size_t r = 0; r < n; r++) {
        uint32_t want = static_cast<uint32_t>(r);
        uint32_t sel = UINT32_MAX;
        if (red.z_bit(r, want)) {
            sel = want;
        } else {
            // Any column at or past `want` is unowned (earlier rows are bare).
            for (uint32_t q = 0; q < n; q++) {
                if (q != want && q >= r && red.z_bit(r, q)) {
                    sel = q;
                    break;
                }
            }
        }
        if (sel == UINT32_MAX) {
            throw std::logic_error("tableau reduction lost rank in the Z block");
        }
        if (sel != want) {
            // Column swap via three CXs (CX(c,t) is col_c ^= col_t on a pure-Z
            // tableau).
            red.cx(sel, want);
            red.cx(want, sel);
            red.cx(sel, want);
        }
        for (uint32_t q = 0; q < n; q++) {
            if (q != want && red.z_bit(r, q)) {
                red.cx(q, want);
            }
        }
        for (size_t r2 = 0; r2 < n; r2++) {
            if (r2 != r && red.z_bit(r2, want)) {
                row_xor(r, r2);
            }
        }
    }

    // The recorded gates map the target group onto <Z_0..Z_{n-1}>; the encoder
    // is the reverse with each gate inverted.
    CliffordCircuit enc(static_cast<uint32_t>(n));
    for (auto it = red.gates.rbegin(); it != red.gates.rend(); ++it) {
        if (it->op == Op::CNOT) {
            enc.append(*it);
        } else {
            enc.append(Instruction::u1(it->a, it->u.inverse()));
        }
    }
    if (!pushforward_matches(enc, target)) {
        throw std::logic_error("encoder pushforward check failed");
    }
    return enc;
}

bool pushforward_matches(const CliffordCircuit &c, const std::vector<PauliString> &target_group) {
    size_t n = c.num_qubits();
    BinaryMatrix img(target_group.size(), 2 * n);
    BinaryMatrix tgt(target_group.size(), 2 * n);
    for (size_t i = 0; i < target_group.size(); i++) {
        PauliString z(n);
        // Row i of the input group for a prep circuit is Z_i.
        z.set(static_cast<uint32_t>(i), Pauli::Z);
        PauliString pushed = conjugate_through_circuit(c, z);
        for (uint32_t q = 0; q < n; q++) {
            Pauli p = pushed.get(q);
            if (pauli_x_bit(p)) {
                img.set(i, q, true);
            }
            if (pauli_z_bit(p)) {
                img.set(i, n + q, true);
            }
            Pauli t = target_group[i].get(q);
            if (pauli_x_bit(t)) {
                tgt.set(i, q, true);
            }
            if (pauli_z_bit(t)) {
                tgt.set(i, n + q, true);
            }
        }
    }
    return gf2_same_rowspace(img, tgt);
}

CliffordCircuit inverse_circuit(const CliffordCircuit &c) {
    CliffordCircuit inv(c.num_qubits());
    const auto &insts = c.instructions();
    for (auto it = insts.rbegin(); it != insts.rend(); ++it) {
        switch (it->op) {
            case Op::CNOT:
                inv.append(*it);
                break;
            case Op::U1:
                inv.append(Instruction::u1(it->a, it->u.inverse()));
                break;
            case Op::TICK:
                break;
            default:
                throw std::invalid_argument("cannot invert a non-unitary circuit");
        }
    }
    return inv;
}

CliffordCircuit peephole_cancel(const CliffordCircuit &c) {
    std::vector<Instruction> insts;
    for (const auto &inst : c.instructions()) {
        if (inst.op == Op::TICK) {
            continue;
        }
        if (inst.op == Op::U1 && inst.u.is_identity_action()) {
            continue;
        }
        insts.push_back(inst);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Instruction> next;
        std::vector<bool> dead(insts.size(), false);
        for (size_t i = 0; i < insts.size(); i++) {
            if (dead[i]) {
                continue;
            }
            const auto &a = insts[i];
            // Find the next instruction touching any of a's qubits.
            size_t j = i + 1;
            for (; j < insts.size(); j++) {
                if (dead[j]) {
                    continue;
                }
                const auto &b = insts[j];
                bool touches = false;
                if (a.op == Op::CNOT) {
                    touches = b.touches(a.a) || b.touches(a.b);
                } else {
                    touches = b.touches(a.a);
                }
                if (touches) {
                    break;
                }
            }
            if (j >= insts.size()) {
                continue;
            }
            const auto &b = insts[j];
            if (a.op == Op::CNOT && b.op == Op::CNOT && a.a == b.a && a.b == b.b) {
                dead[i] = dead[j] = true;
                changed = true;
            } else if (a.op == Op::U1 && b.op == Op::U1 && a.a == b.a) {
                Instruction merged = Instruction::u1(a.a, a.u.then(b.u));
                dead[j] = true;
                insts[i] = merged;
                if (merged.u.is_identity_action()) {
                    dead[i] = true;
                }
                changed = true;
            }
        }
        for (size_t i = 0; i < insts.size(); i++) {
            if (!dead[i]) {
                next.push_back(insts[i]);
            }
        }
        insts = std::move(next);
    }
    CliffordCircuit out(c.num_qubits());
    for (const auto &inst : insts) {
        out.append(inst);
    }
    return out;
}

CliffordCircuit synth_logical_h(const StabilizerCode &code) {
    if (code.k != 1) {
        throw std::invalid_argument("synth_logical_h requires a k=1 code");
    }
    CliffordCircuit prep_zero = synth_prep(code, LogicalState::ZERO);
    CliffordCircuit prep_plus = synth_prep(code, LogicalState::PLUS);
    CliffordCircuit decode = inverse_circuit(prep_zero);
    CliffordCircuit u(code.n);
    for (const auto &inst : decode.instructions()) {
        u.append(inst);
    }
    for (const auto &inst : prep_plus.instructions()) {
        u.append(inst);
    }
    // Fix the logical X leg if the composition landed in the Y class: an S on
    // the logical input qubit of the decode stage flips it to Z.
    auto x_image_ok = [&](const CliffordCircuit &cand) {
        PauliString img = conjugate_through_circuit(cand, code.logical_x[0]);
        img *= code.logical_z[0];
        StabilizerCoset coset(code);
        return coset.in_group(img);
    };
    if (!x_image_ok(u)) {
        CliffordCircuit fixed(code.n);
        for (const auto &inst : decode.instructions()) {
            fixed.append(inst);
        }
        fixed.append(Instruction::u1(code.n - 1, SingleQubitClifford::s()));
        for (const auto &inst : prep_plus.instructions()) {
            fixed.append(inst);
        }
        u = fixed;
    }
    u = peephole_cancel(u);
    for (uint32_t q = 0; q < code.n; q++) {
        u.add_input(q);
    }
    if (!verify_logical_action(u, code, LogicalTarget::HADAMARD)) {
        throw std::logic_error("synthesized logical H failed verification");
    }
    return u;
}

bool verify_logical_action(const CliffordCircuit &c, const StabilizerCode &code, LogicalTarget target) {
    StabilizerCoset coset(code);
    for (const auto &g : code.generators) {
        if (!coset.in_group(conjugate_through_circuit(c, g))) {
            return false;
        }
    }
    for (size_t i = 0; i < code.k; i++) {
        PauliString ix = conjugate_through_circuit(c, code.logical_x[i]);
        PauliString iz = conjugate_through_circuit(c, code.logical_z[i]);
        const PauliString &want_x = (target == LogicalTarget::HADAMARD) ? code.logical_z[i] : code.logical_x[i];
        const PauliString &want_z = (target == LogicalTarget::HADAMARD) ? code.logical_x[i] : code.logical_z[i];
        ix *= want_x;
        iz *= want_z;
        if (!coset.in_group(ix) || !coset.in_group(iz)) {
            return false;
        }
    }
    return true;
}

}  // namespace flagcirc
