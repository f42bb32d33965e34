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

#ifndef FLAGCIRC_PAULI_HPP
#define FLAGCIRC_PAULI_HPP

#include <cstdint>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace flagcirc {

/// Single-qubit Pauli, phase-free. Encoded as (x bit, z bit):
/// I=00, X=10, Y=11, Z=01.
enum class Pauli : uint8_t { I = 0, X = 1, Y = 3, Z = 2 };

inline bool pauli_x_bit(Pauli p) { return static_cast<uint8_t>(p) & 1; }
inline bool pauli_z_bit(Pauli p) { return static_cast<uint8_t>(p) & 2; }
inline Pauli pauli_from_bits(bool x, bool z) {
    return static_cast<Pauli>((x ? 1 : 0) | (z ? 2 : 0));
}
/// Product with phases discarded: X*Z = Y, P*P = I.
inline Pauli pauli_mul(Pauli a, Pauli b) {
    return static_cast<Pauli>(static_cast<uint8_t>(a) ^ static_cast<uint8_t>(b));
}
inline bool pauli_anticommutes(Pauli a, Pauli b) {
    // Symplectic product of the (x,z) encodings.
    return (pauli_x_bit(a) && pauli_z_bit(b)) != (pauli_z_bit(a) && pauli_x_bit(b));
}
char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// Multi-qubit Pauli operator with phases discarded, bit-packed over a fixed
/// qubit count. Semantically a map qubit -> non-identity Pauli; the packed
/// representation is what the enumeration hot paths operate on.
class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(size_t num_qubits);
    /// Parse "X__ZY" style text (underscore or I for identity).
    static PauliString from_text(const std::string &text);
    /// Build from a sparse support map.
    static PauliString from_support(size_t num_qubits, const std::map<uint32_t, Pauli> &support);

    size_t num_qubits() const { return n_; }
    Pauli get(uint32_t q) const;
    void set(uint32_t q, Pauli p);
    /// Multiply this by X/Z on one qubit (phase-free).
    void mul_x(uint32_t q);
    void mul_z(uint32_t q);
    void mul_pauli(uint32_t q, Pauli p);

    /// Number of non-identity entries.
    size_t weight() const;
    bool is_identity() const;
    /// Componentwise product, phases discarded.
    PauliString operator*(const PauliString &other) const;
    PauliString &operator*=(const PauliString &other);
    bool operator==(const PauliString &other) const;
    bool operator!=(const PauliString &other) const { return !(*this == other); }
    /// True iff the two operators anticommute.
    bool anticommutes_with(const PauliString &other) const;

    std::map<uint32_t, Pauli> support() const;
    /// Keep only the listed qubits.
    PauliString restricted_to(const std::vector<uint32_t> &qubits) const;
    std::string str() const;

    /// Packed accessors used by the enumeration hot path and GF(2) reductions.
    const std::vector<uint64_t> &x_words() const { return x_; }
    const std::vector<uint64_t> &z_words() const { return z_; }
    std::vector<uint64_t> &x_words() { return x_; }
    std::vector<uint64_t> &z_words() { return z_; }

    /// Hashable dense key, for grouping.
    std::string packed_key() const;

  private:
    size_t n_ = 0;
    std::vector<uint64_t> x_;
    std::vector<uint64_t> z_;
};

/// One of the 24 single-qubit Clifford group elements, stored by its
/// conjugation action on X and Z as signed Paulis. Signs are retained so the
/// group composes exactly; error propagation only reads the unsigned part.
class SingleQubitClifford {
  public:
    /// Identity by default.
    SingleQubitClifford() = default;
    SingleQubitClifford(Pauli img_x, bool neg_x, Pauli img_z, bool neg_z);

    static SingleQubitClifford identity();
    static SingleQubitClifford h();
    static SingleQubitClifford s();
    static SingleQubitClifford s_dag();
    static SingleQubitClifford x();
    static SingleQubitClifford y();
    static SingleQubitClifford z();
    /// Parse one of: I H S SDG X Y Z or a composite "H*S" product (left acts last).
    static SingleQubitClifford named(const std::string &name);

    /// Image of a Pauli under conjugation U p U^dag, sign discarded.
    Pauli conjugate(Pauli p) const;
    /// Group product: (a*b) acts as a after b.
    SingleQubitClifford then(const SingleQubitClifford &second) const;
    SingleQubitClifford inverse() const;
    bool is_identity_action() const;   // acts trivially on Pauli frames (I,X,Y,Z)
    bool operator==(const SingleQubitClifford &o) const;

    Pauli image_x() const { return img_x_; }
    Pauli image_z() const { return img_z_; }
    bool neg_x() const { return neg_x_; }
    bool neg_z() const { return neg_z_; }
    /// Canonical gate-list decomposition over {H, S}; used when writing circuits out.
    std::string canonical_name() const;

  private:
    Pauli img_x_ = Pauli::X;
    Pauli img_z_ = Pauli::Z;
    bool neg_x_ = false;
    bool neg_z_ = false;
};

}  // namespace flagcirc

#endif
