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

#ifndef FLAGCIRC_GF2_HPP
#define FLAGCIRC_GF2_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace flagcirc {

/// Dense GF(2) matrix, row-major bit packing.
class BinaryMatrix {
  public:
    BinaryMatrix() = default;
    BinaryMatrix(size_t rows, size_t cols);
    static BinaryMatrix identity(size_t n);
    /// Rows given as 0/1 vectors.
    static BinaryMatrix from_rows(const std::vector<std::vector<int>> &rows);
    /// Text format: first line "rows cols", then one 0/1 string per row.
    static BinaryMatrix parse(const std::string &text);
    static BinaryMatrix parse_file(const std::string &path);
    std::string to_text() const;
    void write_file(const std::string &path) const;

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool get(size_t r, size_t c) const;
    void set(size_t r, size_t c, bool v);
    void xor_row_into(size_t src, size_t dst);  // row dst ^= row src
    void swap_rows(size_t a, size_t b);
    size_t row_weight(size_t r) const;
    size_t col_weight(size_t c) const;
    std::vector<uint8_t> row_bits(size_t r) const;

    BinaryMatrix transposed() const;
    BinaryMatrix multiplied_by(const BinaryMatrix &rhs) const;  // this * rhs
    /// Keep the listed columns, in the given order.
    BinaryMatrix columns_selected(const std::vector<size_t> &keep) const;
    BinaryMatrix rows_selected(const std::vector<size_t> &keep) const;
    bool operator==(const BinaryMatrix &o) const;

    /// Multiply by a bit vector (length = cols): returns length-rows bits.
    std::vector<uint8_t> apply(const std::vector<uint8_t> &v) const;

  private:
    size_t rows_ = 0, cols_ = 0, wpr_ = 0;  // words per row
    std::vector<uint64_t> bits_;
    friend size_t gf2_rank(const BinaryMatrix &);
    friend BinaryMatrix gf2_rref(const BinaryMatrix &, std::vector<size_t> *);
};

size_t gf2_rank(const BinaryMatrix &m);
/// Reduced row echelon form; pivot column indices out-param optional.
BinaryMatrix gf2_rref(const BinaryMatrix &m, std::vector<size_t> *pivots = nullptr);
/// Basis of the right nullspace, each vector length = cols.
std::vector<std::vector<uint8_t>> gf2_nullspace(const BinaryMatrix &m);
bool gf2_is_invertible(const BinaryMatrix &m);
/// Inverse of a square invertible matrix; throws if singular.
BinaryMatrix gf2_inverse(const BinaryMatrix &m);
/// Does v lie in the row space of m?
bool gf2_in_rowspace(const BinaryMatrix &m, const std::vector<uint8_t> &v);
/// Row space equality test.
bool gf2_same_rowspace(const BinaryMatrix &a, const BinaryMatrix &b);

}  // namespace flagcirc

#endif
