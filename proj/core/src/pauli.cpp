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

#include "flagcirc/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace flagcirc {

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I: return '_';
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        case Pauli::Z: return 'Z';
    }
    return '?';
}

Pauli pauli_from_char(char c) {
    switch (c) {
        case '_':
        case 'I': return Pauli::I;
        case 'X': return Pauli::X;
        case 'Y': return Pauli::Y;
        case 'Z': return Pauli::Z;
        default: throw std::invalid_argument(std::string("not a Pauli character: ") + c);
    }
}

PauliString::PauliString(size_t num_qubits)
    : n_(num_qubits), x_((num_qubits + 63) / 64, 0), z_((num_qubits + 63) / 64, 0) {}

PauliString PauliString::from_text(const std::string &text) {
    PauliString p(text.size());
    for (size_t q = 0; q < text.size(); q++) {
        p.set(static_cast<uint32_t>(q), pauli_from_char(text[q]));
    }
    return p;
}

PauliString PauliString::from_support(size_t num_qubits, const std::map<uint32_t, Pauli> &support) {
    PauliString p(num_qubits);
    for (const auto &[q, v] : support) {
        p.set(q, v);
    }
    return p;
}

Pauli PauliString::get(uint32_t q) const {
    if (q >= n_) {
        throw std::out_of_range("PauliString::get out of range");
    }
    bool x = (x_[q >> 6] >> (q & 63)) & 1;
    bool z = (z_[q >> 6] >> (q & 63)) & 1;
    return pauli_from_bits(x, z);
}

void PauliString::set(uint32_t q, Pauli p) {
    if (q >= n_) {
        throw std::out_of_range("PauliString::set out of range");
    }
    uint64_t mask = uint64_t{1} << (q & 63);
    if (pauli_x_bit(p)) {
        x_[q >> 6] |= mask;
    } else {
        x_[q >> 6] &= ~mask;
    }
    if (pauli_z_bit(p)) {
        z_[q >> 6] |= mask;
    } else {
        z_[q >> 6] &= ~mask;
    }
}

void PauliString::mul_x(uint32_t q) {
    x_[q >> 6] ^= uint64_t{1} << (q & 63);
}

void PauliString::mul_z(uint32_t q) {
    z_[q >> 6] ^= uint64_t{1} << (q & 63);
}

void PauliString::mul_pauli(uint32_t q, Pauli p) {
    if (pauli_x_bit(p)) {
        mul_x(q);
    }
    if (pauli_z_bit(p)) {
        mul_z(q);
    }
}

size_t PauliString::weight() const {
    size_t w = 0;
    for (size_t i = 0; i < x_.size(); i++) {
        w += std::popcount(x_[i] | z_[i]);
    }
    return w;
}

bool PauliString::is_identity() const {
    for (size_t i = 0; i < x_.size(); i++) {
        if (x_[i] | z_[i]) {
            return false;
        }
    }
    return true;
}

PauliString PauliString::operator*(const PauliString &other) const {
    PauliString r = *this;
    r *= other;
    return r;
}

PauliString &PauliString::operator*=(const PauliString &other) {
    if (other.n_ != n_) {
        throw std::invalid_argument("PauliString size mismatch");
    }
    for (size_t i = 0; i < x_.size(); i++) {
        x_[i] ^= other.x_[i];
        z_[i] ^= other.z_[i];
    }
    return *this;
}

bool PauliString::operator==(const PauliString &other) const {
    return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
}

bool PauliString::anticommutes_with(const PauliString &other) const {
    if (other.n_ != n_) {
        throw std::invalid_argument("PauliString size mismatch");
    }
    uint64_t acc = 0;
    for (size_t i = 0; i < x_.size(); i++) {
        acc ^= (x_[i] & other.z_[i]) ^ (z_[i] & other.x_[i]);
    }
    return std::popcount(acc) & 1;
}

std::map<uint32_t, Pauli> PauliString::support() const {
    std::map<uint32_t, Pauli> m;
    for (uint32_t q = 0; q < n_; q++) {
        Pauli p = get(q);
        if (p != Pauli::I) {
            m[q] = p;
        }
    }
    return m;
}

PauliString PauliString::restricted_to(const std::vector<uint32_t> &qubits) const {
    PauliString r(n_);
    for (uint32_t q : qubits) {
        r.set(q, get(q));
    }
    return r;
}

std::string PauliString::str() const {
    std::string s;
    s.reserve(n_);
    for (uint32_t q = 0; q < n_; q++) {
        s.push_back(pauli_char(get(q)));
    }
    return s;
}

std::string PauliString::packed_key() const {
    std::string k;
    k.reserve(x_.size() * 16);
    auto put = [&k](uint64_t w) {
        for (int i = 0; i < 8; i++) {
            k.push_back(static_cast<char>((w >> (8 * i)) & 0xff));
        }
    };
    for (uint64_t w : x_) {
        put(w);
    }
    for (uint64_t w : z_) {
        put(w);
    }
    return k;
}

SingleQubitClifford::SingleQubitClifford(Pauli img_x, bool neg_x, Pauli img_z, bool neg_z)
    : img_x_(img_x), img_z_(img_z), neg_x_(neg_x), neg_z_(neg_z) {
    if (img_x == Pauli::I || img_z == Pauli::I || img_x == img_z) {
        throw std::invalid_argument("invalid single-qubit Clifford action");
    }
}

SingleQubitClifford SingleQubitClifford::identity() { return {}; }
SingleQubitClifford SingleQubitClifford::h() { return {Pauli::Z, false, Pauli::X, false}; }
SingleQubitClifford SingleQubitClifford::s() { return {Pauli::Y, false, Pauli::Z, false}; }
SingleQubitClifford SingleQubitClifford::s_dag() { return {Pauli::Y, true, Pauli::Z, false}; }
SingleQubitClifford SingleQubitClifford::x() { return {Pauli::X, false, Pauli::Z, true}; }
SingleQubitClifford SingleQubitClifford::y() { return {Pauli::X, true, Pauli::Z, true}; }
SingleQubitClifford SingleQubitClifford::z() { return {Pauli::X, true, Pauli::Z, false}; }

SingleQubitClifford SingleQubitClifford::named(const std::string &name) {
    SingleQubitClifford result = identity();
    size_t start = 0;
    // "A*B" means apply B first, then A.
    std::vector<std::string> parts;
    while (start <= name.size()) {
        size_t sep = name.find('*', start);
        if (sep == std::string::npos) {
            parts.push_back(name.substr(start));
            break;
        }
        parts.push_back(name.substr(start, sep - start));
        start = sep + 1;
    }
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        const std::string &g = *it;
        SingleQubitClifford u;
        if (g == "I") {
            u = identity();
        } else if (g == "H") {
            u = h();
        } else if (g == "S") {
            u = s();
        } else if (g == "SDG" || g == "S_DAG") {
            u = s_dag();
        } else if (g == "X") {
            u = x();
        } else if (g == "Y") {
            u = y();
        } else if (g == "Z") {
            u = z();
        } else {
            throw std::invalid_argument("unknown single-qubit Clifford: " + g);
        }
        result = result.then(u);
    }
    return result;
}

Pauli SingleQubitClifford::conjugate(Pauli p) const {
    Pauli out = Pauli::I;
    if (pauli_x_bit(p)) {
        out = pauli_mul(out, img_x_);
    }
    if (pauli_z_bit(p)) {
        out = pauli_mul(out, img_z_);
    }
    return out;
}

namespace {
// Single-qubit Pauli product with the exact i^k phase: a * b = i^phase * c.
void pauli_mul_phased(Pauli a, Pauli b, Pauli *c, int *phase) {
    *c = pauli_mul(a, b);
    if (a == Pauli::I || b == Pauli::I || a == b) {
        *phase = 0;
        return;
    }
    // Cyclic: XY = iZ, YZ = iX, ZX = iY; reversed order gives -i.
    bool forward = (a == Pauli::X && b == Pauli::Y) || (a == Pauli::Y && b == Pauli::Z) ||
                   (a == Pauli::Z && b == Pauli::X);
    *phase = forward ? 1 : 3;
}

// Conjugate a signed Pauli through the map X -> (-1)^nx ix, Z -> (-1)^nz iz.
// Y is i*X*Z, so its image is i * image(X) * image(Z) with the exact phase.
void conj_signed(Pauli p, bool neg, Pauli ix, bool nx, Pauli iz, bool nz, Pauli *out, bool *out_neg) {
    int phase = neg ? 2 : 0;
    Pauli r;
    switch (p) {
        case Pauli::I:
            *out = Pauli::I;
            *out_neg = neg;
            return;
        case Pauli::X:
            r = ix;
            phase += nx ? 2 : 0;
            break;
        case Pauli::Z:
            r = iz;
            phase += nz ? 2 : 0;
            break;
        case Pauli::Y: {
            int mul_phase;
            pauli_mul_phased(ix, iz, &r, &mul_phase);
            phase += 1 + mul_phase + (nx ? 2 : 0) + (nz ? 2 : 0);
            break;
        }
    }
    phase &= 3;
    if (phase & 1) {
        throw std::logic_error("Clifford image acquired an imaginary phase");
    }
    *out = r;
    *out_neg = phase == 2;
}
}  // namespace

SingleQubitClifford SingleQubitClifford::then(const SingleQubitClifford &second) const {
    // (second o first): conjugate this gate's images through `second`.
    Pauli ix;
    bool nx;
    conj_signed(img_x_, neg_x_, second.img_x_, second.neg_x_, second.img_z_, second.neg_z_, &ix, &nx);
    Pauli iz;
    bool nz;
    conj_signed(img_z_, neg_z_, second.img_x_, second.neg_x_, second.img_z_, second.neg_z_, &iz, &nz);
    return {ix, nx, iz, nz};
}

SingleQubitClifford SingleQubitClifford::inverse() const {
    // Search is fine: the group has 24 elements and this is not a hot path.
    static const std::vector<SingleQubitClifford> &all = []() -> const std::vector<SingleQubitClifford> & {
        static std::vector<SingleQubitClifford> v;
        const Pauli ps[3] = {Pauli::X, Pauli::Y, Pauli::Z};
        for (Pauli ix : ps) {
            for (Pauli iz : ps) {
                if (ix == iz) {
                    continue;
                }
                for (int nx = 0; nx < 2; nx++) {
                    for (int nz = 0; nz < 2; nz++) {
                        v.emplace_back(ix, nx != 0, iz, nz != 0);
                    }
                }
            }
        }
        return v;
    }();
    for (const auto &u : all) {
        SingleQubitClifford c = this->then(u);
        if (c.img_x_ == Pauli::X && !c.neg_x_ && c.img_z_ == Pauli::Z && !c.neg_z_) {
            return u;
        }
    }
    throw std::logic_error("single-qubit Clifford has no inverse (unreachable)");
}

bool SingleQubitClifford::is_identity_action() const {
    return img_x_ == Pauli::X && img_z_ == Pauli::Z;
}

bool SingleQubitClifford::operator==(const SingleQubitClifford &o) const {
    return img_x_ == o.img_x_ && img_z_ == o.img_z_ && neg_x_ == o.neg_x_ && neg_z_ == o.neg_z_;
}

std::string SingleQubitClifford::canonical_name() const {
    // Unsigned part first (permutation of the axes), then a Pauli fixing signs.
    std::string perm;
    if (img_x_ == Pauli::X && img_z_ == Pauli::Z) {
        perm = "";
    } else if (img_x_ == Pauli::Z && img_z_ == Pauli::X) {
        perm = "H";
    } else if (img_x_ == Pauli::Y && img_z_ == Pauli::Z) {
        perm = "S";
    } else if (img_x_ == Pauli::X && img_z_ == Pauli::Y) {
        perm = "H*S*H";
    } else if (img_x_ == Pauli::Y && img_z_ == Pauli::X) {
        perm = "H*S";
    } else if (img_x_ == Pauli::Z && img_z_ == Pauli::Y) {
        perm = "S*H";
    } else {
        throw std::logic_error("invalid Clifford action");
    }
    SingleQubitClifford base = perm.empty() ? identity() : named(perm);
    // Find the Pauli p with this == base.then(conj by p)... signs only.
    for (const std::string &pn : {std::string(""), std::string("X"), std::string("Y"), std::string("Z")}) {
        SingleQubitClifford cand = pn.empty() ? base : named(pn).then(base);
        if (cand == *this) {
            if (pn.empty()) {
                return perm.empty() ? "I" : perm;
            }
            return perm.empty() ? pn : perm + "*" + pn;
        }
    }
    throw std::logic_error("unresolvable Clifford sign structure");
}

}  // namespace flagcirc
