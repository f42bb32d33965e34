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

#include "flagcirc/stabilizer.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace flagcirc {

void StabilizerCode::validate() const {
    for (const auto &g : generators) {
        if (g.num_qubits() != n) {
            throw std::invalid_argument("generator on wrong qubit count");
        }
    }
    for (size_t i = 0; i < generators.size(); i++) {
        for (size_t j = i + 1; j < generators.size(); j++) {
            if (generators[i].anticommutes_with(generators[j])) {
                throw std::invalid_argument("generators " + std::to_string(i) + " and " + std::to_string(j) +
                                            " anticommute");
            }
        }
    }
    if (generators.size() != n - k) {
        throw std::invalid_argument("expected n-k generators");
    }
    // Independence over the symplectic representation.
    BinaryMatrix m(generators.size(), 2 * n);
    for (size_t i = 0; i < generators.size(); i++) {
        for (uint32_t q = 0; q < n; q++) {
            Pauli p = generators[i].get(q);
            if (pauli_x_bit(p)) {
                m.set(i, q, true);
            }
            if (pauli_z_bit(p)) {
                m.set(i, n + q, true);
            }
        }
    }
    if (gf2_rank(m) != generators.size()) {
        throw std::invalid_argument("generators are not independent");
    }
    if (logical_x.size() != k || logical_z.size() != k) {
        throw std::invalid_argument("expected k logical X and Z operators");
    }
    for (size_t i = 0; i < k; i++) {
        for (const auto &g : generators) {
            if (logical_x[i].anticommutes_with(g) || logical_z[i].anticommutes_with(g)) {
                throw std::invalid_argument("logical operator anticommutes with a generator");
            }
        }
        for (size_t j = 0; j < k; j++) {
            bool want = (i == j);
            if (logical_x[i].anticommutes_with(logical_z[j]) != want) {
                throw std::invalid_argument("logical pairing violated");
            }
            if (j > i && logical_x[i].anticommutes_with(logical_x[j])) {
                throw std::invalid_argument("logical X operators anticommute");
            }
        }
    }
}

bool StabilizerCode::is_css() const {
    for (const auto &g : generators) {
        bool has_x = false, has_z = false;
        for (const auto &[q, p] : g.support()) {
            has_x |= pauli_x_bit(p);
            has_z |= pauli_z_bit(p);
        }
        if (has_x && has_z) {
            return false;
        }
    }
    return true;
}

std::string StabilizerCode::to_text() const {
    std::ostringstream out;
    out << "# " << name << " [[" << n << "," << k << "," << d << "]]\n";
    out << "[generators]\n";
    for (const auto &g : generators) {
        out << g.str() << '\n';
    }
    out << "[logical_x]\n";
    for (const auto &g : logical_x) {
        out << g.str() << '\n';
    }
    out << "[logical_z]\n";
    for (const auto &g : logical_z) {
        out << g.str() << '\n';
    }
    return out.str();
}

StabilizerCode StabilizerCode::parse(const std::string &text) {
    StabilizerCode code;
    std::istringstream in(text);
    std::string line;
    int section = -1;
    std::vector<std::vector<PauliString> *> sections = {&code.generators, &code.logical_x, &code.logical_z};
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        // trim
        while (!line.empty() && isspace(static_cast<unsigned char>(line.back()))) {
            line.pop_back();
        }
        size_t start = 0;
        while (start < line.size() && isspace(static_cast<unsigned char>(line[start]))) {
            start++;
        }
        line = line.substr(start);
        if (line.empty()) {
            continue;
        }
        if (line == "[generators]") {
            section = 0;
        } else if (line == "[logical_x]") {
            section = 1;
        } else if (line == "[logical_z]") {
            section = 2;
        } else {
            if (section < 0) {
                throw std::invalid_argument("Pauli line before section header");
            }
            sections[section]->push_back(PauliString::from_text(line));
        }
    }
    if (code.generators.empty()) {
        throw std::invalid_argument("code has no generators");
    }
    code.n = static_cast<uint32_t>(code.generators[0].num_qubits());
    code.k = code.n - static_cast<uint32_t>(code.generators.size());
    code.name = "custom";
    code.validate();
    return code;
}

namespace {
PauliString paulis_on(size_t n, Pauli p, const std::vector<uint32_t> &qs) {
    PauliString s(n);
    for (uint32_t q : qs) {
        s.set(q, p);
    }
    return s;
}
}  // namespace

StabilizerCode qrm15() {
    // Qubits are numbered 1..15 in the geometric picture; stored 0-indexed as
    // q-1. The four weight-8 X stabilizers (polytopes) are the bit-indicator
    // sets of the labels; the ten weight-4 Z stabilizers (faces) below are an
    // independent generating set of the dual space.
    auto bit_support = [](uint32_t mask_bit) {
        std::vector<uint32_t> qs;
        for (uint32_t v = 1; v <= 15; v++) {
            if ((v >> mask_bit) & 1) {
                qs.push_back(v - 1);
            }
        }
        return qs;
    };
    StabilizerCode code;
    code.name = "qrm15";
    code.n = 15;
    code.k = 1;
    code.d = 3;
    for (uint32_t b = 0; b < 4; b++) {
        code.generators.push_back(paulis_on(15, Pauli::X, bit_support(b)));  // weight 8
    }
    const std::vector<std::vector<uint32_t>> faces = {
        {0, 1, 3, 6},  {0, 1, 4, 5},  {0, 1, 7, 10}, {0, 1, 8, 9},   {0, 1, 11, 14},
        {0, 1, 12, 13}, {0, 2, 3, 5}, {0, 2, 7, 9},  {0, 2, 11, 13}, {0, 3, 7, 12},
    };
    for (const auto &f : faces) {
        code.generators.push_back(paulis_on(15, Pauli::Z, f));  // weight 4
    }
    // Logical Z is ZZZ on an edge {1,2,3}; logical X is X on a face (7 qubits).
    code.logical_z.push_back(paulis_on(15, Pauli::Z, {0, 1, 2}));
    code.logical_x.push_back(paulis_on(15, Pauli::X, {0, 1, 2, 3, 4, 5, 6}));
    code.validate();
    return code;
}

StabilizerCode steane7() {
    StabilizerCode code;
    code.name = "steane7";
    code.n = 7;
    code.k = 1;
    code.d = 3;
    auto bit_support = [](uint32_t b) {
        std::vector<uint32_t> qs;
        for (uint32_t v = 1; v <= 7; v++) {
            if ((v >> b) & 1) {
                qs.push_back(v - 1);
            }
        }
        return qs;
    };
    for (uint32_t b = 0; b < 3; b++) {
        code.generators.push_back(paulis_on(7, Pauli::X, bit_support(b)));
    }
    for (uint32_t b = 0; b < 3; b++) {
        code.generators.push_back(paulis_on(7, Pauli::Z, bit_support(b)));
    }
    code.logical_x.push_back(paulis_on(7, Pauli::X, {0, 1, 2}));
    code.logical_z.push_back(paulis_on(7, Pauli::Z, {0, 1, 2}));
    code.validate();
    return code;
}

StabilizerCode perfect5() {
    StabilizerCode code;
    code.name = "perfect5";
    code.n = 5;
    code.k = 1;
    code.d = 3;
    code.generators.push_back(PauliString::from_text("XZZX_"));
    code.generators.push_back(PauliString::from_text("_XZZX"));
    code.generators.push_back(PauliString::from_text("X_XZZ"));
    code.generators.push_back(PauliString::from_text("ZX_XZ"));
    code.logical_x.push_back(PauliString::from_text("XXXXX"));
    code.logical_z.push_back(PauliString::from_text("ZZZZZ"));
    code.validate();
    return code;
}

StabilizerCode all_zeros_code(uint32_t n) {
    StabilizerCode code;
    code.name = "zeros" + std::to_string(n);
    code.n = n;
    code.k = 0;
    code.d = 1;
    for (uint32_t q = 0; q < n; q++) {
        PauliString z(n);
        z.set(q, Pauli::Z);
        code.generators.push_back(z);
    }
    code.validate();
    return code;
}

StabilizerCode cat_code(uint32_t n) {
    StabilizerCode code;
    code.name = "cat" + std::to_string(n);
    code.n = n;
    code.k = 0;
    code.d = 1;
    PauliString xall(n);
    for (uint32_t q = 0; q < n; q++) {
        xall.set(q, Pauli::X);
    }
    code.generators.push_back(xall);
    for (uint32_t q = 0; q + 1 < n; q++) {
        PauliString zz(n);
        zz.set(q, Pauli::Z);
        zz.set(q + 1, Pauli::Z);
        code.generators.push_back(zz);
    }
    code.validate();
    return code;
}

StabilizerCode code_by_name(const std::string &name) {
    if (name == "qrm15") return qrm15();
    if (name == "steane7") return steane7();
    if (name == "perfect5") return perfect5();
    throw std::invalid_argument("unknown code: " + name + " (known: qrm15, steane7, perfect5)");
}

int weight_mod_stabilizers(const PauliString &p, const StabilizerCode &code) {
    size_t g = code.generators.size();
    if (g > 16) {
        throw std::invalid_argument("weight_mod_stabilizers supports at most 16 generators");
    }
    if (p.num_qubits() < code.n) {
        throw std::invalid_argument("operator does not cover the code qubits");
    }
    // Pack into at most 4 words (<= 256 qubits is far beyond every use here).
    size_t words = p.x_words().size();
    std::vector<uint64_t> px(p.x_words()), pz(p.z_words());
    std::vector<std::vector<uint64_t>> gx(g), gz(g);
    for (size_t i = 0; i < g; i++) {
        PauliString gen = code.generators[i];
        gx[i].assign(words, 0);
        gz[i].assign(words, 0);
        for (size_t w = 0; w < gen.x_words().size() && w < words; w++) {
            gx[i][w] = gen.x_words()[w];
            gz[i][w] = gen.z_words()[w];
        }
    }
    int best = 1 << 30;
    std::vector<uint64_t> cx = px, cz = pz;
    auto weigh = [&]() {
        int w = 0;
        for (size_t i = 0; i < words; i++) {
            w += std::popcount(cx[i] | cz[i]);
        }
        return w;
    };
    best = weigh();
    uint64_t total = uint64_t{1} << g;
    for (uint64_t gray = 1; gray < total; gray++) {
        int flip = std::countr_zero(gray);
        for (size_t w = 0; w < words; w++) {
            cx[w] ^= gx[flip][w];
            cz[w] ^= gz[flip][w];
        }
        int wgt = weigh();
        if (wgt < best) {
            best = wgt;
        }
    }
    return best;
}

StabilizerCoset::StabilizerCoset(const StabilizerCode &code) : StabilizerCoset(code.generators, code.n) {}

StabilizerCoset::StabilizerCoset(const std::vector<PauliString> &group, size_t num_qubits) : n_(num_qubits) {
    size_t words = 2 * ((n_ + 63) / 64);
    for (const auto &g : group) {
        std::vector<uint64_t> v(words, 0);
        size_t half = words / 2;
        for (size_t w = 0; w < g.x_words().size() && w < half; w++) {
            v[w] = g.x_words()[w];
            v[half + w] = g.z_words()[w];
        }
        // Reduce against existing basis.
        for (size_t i = 0; i < basis_.size(); i++) {
            size_t pw = pivot_[i] >> 6;
            uint64_t pm = uint64_t{1} << (pivot_[i] & 63);
            if (v[pw] & pm) {
                for (size_t w = 0; w < words; w++) {
                    v[w] ^= basis_[i][w];
                }
            }
        }
        // Find pivot.
        size_t piv = SIZE_MAX;
        for (size_t w = 0; w < words && piv == SIZE_MAX; w++) {
            if (v[w]) {
                piv = w * 64 + std::countr_zero(v[w]);
            }
        }
        if (piv == SIZE_MAX) {
            continue;  // dependent generator
        }
        // Back-reduce existing rows.
        size_t pw = piv >> 6;
        uint64_t pm = uint64_t{1} << (piv & 63);
        for (size_t i = 0; i < basis_.size(); i++) {
            if (basis_[i][pw] & pm) {
                for (size_t w = 0; w < words; w++) {
                    basis_[i][w] ^= v[w];
                }
            }
        }
        basis_.push_back(std::move(v));
        pivot_.push_back(piv);
    }
}

std::vector<uint64_t> StabilizerCoset::to_vec(const PauliString &p) const {
    size_t words = 2 * ((n_ + 63) / 64);
    size_t half = words / 2;
    std::vector<uint64_t> v(words, 0);
    for (size_t w = 0; w < p.x_words().size() && w < half; w++) {
        v[w] = p.x_words()[w];
        v[half + w] = p.z_words()[w];
    }
    return v;
}

std::string StabilizerCoset::residue(const PauliString &p) const {
    auto v = to_vec(p);
    for (size_t i = 0; i < basis_.size(); i++) {
        size_t pw = pivot_[i] >> 6;
        uint64_t pm = uint64_t{1} << (pivot_[i] & 63);
        if (v[pw] & pm) {
            for (size_t w = 0; w < v.size(); w++) {
                v[w] ^= basis_[i][w];
            }
        }
    }
    std::string key;
    key.reserve(v.size() * 8);
    for (uint64_t w : v) {
        for (int b = 0; b < 8; b++) {
            key.push_back(static_cast<char>((w >> (8 * b)) & 0xff));
        }
    }
    return key;
}

bool StabilizerCoset::in_group(const PauliString &p) const {
    auto r = residue(p);
    for (char c : r) {
        if (c) {
            return false;
        }
    }
    return true;
}

std::vector<PauliString> compute_destabilizers(const StabilizerCode &code) {
    // Solve for d_i: anticommutes with generator i, commutes with the other
    // generators and with all logical representatives.
    size_t g = code.generators.size();
    size_t n = code.n;
    std::vector<PauliString> result;
    // Build constraint matrix rows: symplectic products against generators and
    // logicals. Unknown is the (x|z) vector of d_i (length 2n).
    std::vector<PauliString> constraints = code.generators;
    for (const auto &l : code.logical_x) {
        constraints.push_back(l);
    }
    for (const auto &l : code.logical_z) {
        constraints.push_back(l);
    }
    BinaryMatrix a(constraints.size(), 2 * n);
    for (size_t r = 0; r < constraints.size(); r++) {
        for (uint32_t q = 0; q < n; q++) {
            Pauli p = constraints[r].get(q);
            // Symplectic product <c, d> = c_x . d_z + c_z . d_x.
            if (pauli_x_bit(p)) {
                a.set(r, n + q, true);  // multiplies d_z
            }
            if (pauli_z_bit(p)) {
                a.set(r, q, true);  // multiplies d_x
            }
        }
    }
    for (size_t i = 0; i < g; i++) {
        // Want a * d = e_i (1 for constraint i, else 0). Solve least-structure
        // via RREF of [a | e_i].
        BinaryMatrix aug(constraints.size(), 2 * n + 1);
        for (size_t r = 0; r < constraints.size(); r++) {
            for (size_t c = 0; c < 2 * n; c++) {
                if (a.get(r, c)) {
                    aug.set(r, c, true);
                }
            }
        }
        aug.set(i, 2 * n, true);
        std::vector<size_t> piv;
        BinaryMatrix red = gf2_rref(aug, &piv);
        // Solution: set free vars to 0, read pivot values from the last column.
        std::vector<uint8_t> sol(2 * n, 0);
        bool ok = true;
        for (size_t r = 0; r < piv.size(); r++) {
            if (piv[r] == 2 * n) {
                ok = false;  // inconsistent
                break;
            }
            if (red.get(r, 2 * n)) {
                sol[piv[r]] = 1;
            }
        }
        if (!ok) {
            throw std::logic_error("destabilizer system inconsistent (invalid code?)");
        }
        PauliString d(n);
        for (uint32_t q = 0; q < n; q++) {
            d.set(q, pauli_from_bits(sol[q] != 0, sol[n + q] != 0));
        }
        result.push_back(d);
    }
    return result;
}

}  // namespace flagcirc
