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

#include "flagcirc/gf2.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace flagcirc {

BinaryMatrix::BinaryMatrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), bits_(rows * wpr_, 0) {}

BinaryMatrix BinaryMatrix::identity(size_t n) {
    BinaryMatrix m(n, n);
    for (size_t i = 0; i < n; i++) {
        m.set(i, i, true);
    }
    return m;
}

BinaryMatrix BinaryMatrix::from_rows(const std::vector<std::vector<int>> &rows) {
    if (rows.empty()) {
        return {};
    }
    BinaryMatrix m(rows.size(), rows[0].size());
    for (size_t r = 0; r < rows.size(); r++) {
        if (rows[r].size() != m.cols_) {
            throw std::invalid_argument("ragged rows");
        }
        for (size_t c = 0; c < rows[r].size(); c++) {
            m.set(r, c, rows[r][c] != 0);
        }
    }
    return m;
}

BinaryMatrix BinaryMatrix::parse(const std::string &text) {
    std::istringstream in(text);
    size_t rows, cols;
    if (!(in >> rows >> cols)) {
        throw std::invalid_argument("matrix header must be 'rows cols'");
    }
    BinaryMatrix m(rows, cols);
    std::string line;
    size_t r = 0;
    while (std::getline(in, line) && r < rows) {
        std::string bits;
        for (char ch : line) {
            if (ch == '0' || ch == '1') {
                bits.push_back(ch);
            } else if (!isspace(static_cast<unsigned char>(ch))) {
                throw std::invalid_argument("matrix rows must be 0/1 strings");
            }
        }
        if (bits.empty()) {
            continue;
        }
        if (bits.size() != cols) {
            throw std::invalid_argument("matrix row has wrong length");
        }
        for (size_t c = 0; c < cols; c++) {
            m.set(r, c, bits[c] == '1');
        }
        r++;
    }
    if (r != rows) {
        throw std::invalid_argument("matrix has too few rows");
    }
    return m;
}

BinaryMatrix BinaryMatrix::parse_file(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw std::invalid_argument("cannot open matrix file: " + path);
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

std::string BinaryMatrix::to_text() const {
    std::ostringstream out;
    out << rows_ << ' ' << cols_ << '\n';
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            out << (get(r, c) ? '1' : '0');
        }
        out << '\n';
    }
    return out.str();
}

void BinaryMatrix::write_file(const std::string &path) const {
    std::ofstream f(path);
    if (!f) {
        throw std::invalid_argument("cannot open file for writing: " + path);
    }
    f << to_text();
}

bool BinaryMatrix::get(size_t r, size_t c) const {
    return (bits_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1;
}

void BinaryMatrix::set(size_t r, size_t c, bool v) {
    uint64_t mask = uint64_t{1} << (c & 63);
    if (v) {
        bits_[r * wpr_ + (c >> 6)] |= mask;
    } else {
        bits_[r * wpr_ + (c >> 6)] &= ~mask;
    }
}

void BinaryMatrix::xor_row_into(size_t src, size_t dst) {
    for (size_t w = 0; w < wpr_; w++) {
        bits_[dst * wpr_ + w] ^= bits_[src * wpr_ + w];
    }
}

void BinaryMatrix::swap_rows(size_t a, size_t b) {
    if (a == b) {
        return;
    }
    for (size_t w = 0; w < wpr_; w++) {
        std::swap(bits_[a * wpr_ + w], bits_[b * wpr_ + w]);
    }
}

size_t BinaryMatrix::row_weight(size_t r) const {
    size_t w = 0;
    for (size_t i = 0; i < wpr_; i++) {
        w += std::popcount(bits_[r * wpr_ + i]);
    }
    return w;
}

size_t BinaryMatrix::col_weight(size_t c) const {
    size_t w = 0;
    for (size_t r = 0; r < rows_; r++) {
        w += get(r, c);
    }
    return w;
}

std::vector<uint8_t> BinaryMatrix::row_bits(size_t r) const {
    std::vector<uint8_t> out(cols_);
    for (size_t c = 0; c < cols_; c++) {
        out[c] = get(r, c);
    }
    return out;
}

BinaryMatrix BinaryMatrix::transposed() const {
    BinaryMatrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            if (get(r, c)) {
                t.set(c, r, true);
            }
        }
    }
    return t;
}

BinaryMatrix BinaryMatrix::multiplied_by(const BinaryMatrix &rhs) const {
    if (cols_ != rhs.rows_) {
        throw std::invalid_argument("matrix dimension mismatch");
    }
    BinaryMatrix out(rows_, rhs.cols_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t k = 0; k < cols_; k++) {
            if (get(r, k)) {
                for (size_t w = 0; w < rhs.wpr_; w++) {
                    out.bits_[r * out.wpr_ + w] ^= rhs.bits_[k * rhs.wpr_ + w];
                }
            }
        }
    }
    return out;
}

BinaryMatrix BinaryMatrix::columns_selected(const std::vector<size_t> &keep) const {
    BinaryMatrix out(rows_, keep.size());
    for (size_t r = 0; r < rows_; r++) {
        for (size_t i = 0; i < keep.size(); i++) {
            if (get(r, keep[i])) {
                out.set(r, i, true);
            }
        }
    }
    return out;
}

BinaryMatrix BinaryMatrix::rows_selected(const std::vector<size_t> &keep) const {
    BinaryMatrix out(keep.size(), cols_);
    for (size_t i = 0; i < keep.size(); i++) {
        for (size_t w = 0; w < wpr_; w++) {
            out.bits_[i * wpr_ + w] = bits_[keep[i] * wpr_ + w];
        }
    }
    return out;
}

bool BinaryMatrix::operator==(const BinaryMatrix &o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_;
}

std::vector<uint8_t> BinaryMatrix::apply(const std::vector<uint8_t> &v) const {
    if (v.size() != cols_) {
        throw std::invalid_argument("vector length mismatch");
    }
    std::vector<uint8_t> out(rows_, 0);
    for (size_t r = 0; r < rows_; r++) {
        uint8_t acc = 0;
        for (size_t c = 0; c < cols_; c++) {
            acc ^= static_cast<uint8_t>(get(r, c) & (v[c] != 0));
        }
        out[r] = acc;
    }
    return out;
}

BinaryMatrix gf2_rref(const BinaryMatrix &m, std::vector<size_t> *pivots) {
    BinaryMatrix a = m;
    if (pivots) {
        pivots->clear();
    }
    size_t rank = 0;
    for (size_t c = 0; c < a.cols_ && rank < a.rows_; c++) {
        size_t sel = SIZE_MAX;
        for (size_t r = rank; r < a.rows_; r++) {
            if (a.get(r, c)) {
                sel = r;
                break;
            }
        }
        if (sel == SIZE_MAX) {
            continue;
        }
        a.swap_rows(sel, rank);
        for (size_t r = 0; r < a.rows_; r++) {
            if (r != rank && a.get(r, c)) {
                a.xor_row_into(rank, r);
            }
        }
        if (pivots) {
            pivots->push_back(c);
        }
        rank++;
    }
    return a;
}

size_t gf2_rank(const BinaryMatrix &m) {
    std::vector<size_t> piv;
    gf2_rref(m, &piv);
    return piv.size();
}

std::vector<std::vector<uint8_t>> gf2_nullspace(const BinaryMatrix &m) {
    std::vector<size_t> piv;
    BinaryMatrix r = gf2_rref(m, &piv);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t c : piv) {
        is_pivot[c] = true;
    }
    std::vector<std::vector<uint8_t>> basis;
    for (size_t free_c = 0; free_c < m.cols(); free_c++) {
        if (is_pivot[free_c]) {
            continue;
        }
        std::vector<uint8_t> v(m.cols(), 0);
        v[free_c] = 1;
        for (size_t i = 0; i < piv.size(); i++) {
            if (r.get(i, free_c)) {
                v[piv[i]] = 1;
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

bool gf2_is_invertible(const BinaryMatrix &m) {
    return m.rows() == m.cols() && gf2_rank(m) == m.rows();
}

BinaryMatrix gf2_inverse(const BinaryMatrix &m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("inverse of non-square matrix");
    }
    size_t n = m.rows();
    // Augment with identity and reduce.
    BinaryMatrix aug(n, 2 * n);
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < n; c++) {
            if (m.get(r, c)) {
                aug.set(r, c, true);
            }
        }
        aug.set(r, n + r, true);
    }
    std::vector<size_t> piv;
    BinaryMatrix red = gf2_rref(aug, &piv);
    for (size_t i = 0; i < piv.size(); i++) {
        if (i >= n || piv[i] != i) {
            throw std::invalid_argument("matrix is singular");
        }
    }
    if (piv.size() < n) {
        throw std::invalid_argument("matrix is singular");
    }
    BinaryMatrix inv(n, n);
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < n; c++) {
            if (red.get(r, n + c)) {
                inv.set(r, c, true);
            }
        }
    }
    return inv;
}

bool gf2_in_rowspace(const BinaryMatrix &m, const std::vector<uint8_t> &v) {
    if (v.size() != m.cols()) {
        throw std::invalid_argument("vector length mismatch");
    }
    BinaryMatrix aug(m.rows() + 1, m.cols());
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            if (m.get(r, c)) {
                aug.set(r, c, true);
            }
        }
    }
    for (size_t c = 0; c < m.cols(); c++) {
        if (v[c]) {
            aug.set(m.rows(), c, true);
        }
    }
    return gf2_rank(aug) == gf2_rank(m);
}

bool gf2_same_rowspace(const BinaryMatrix &a, const BinaryMatrix &b) {
    if (a.cols() != b.cols()) {
        return false;
    }
    size_t ra = gf2_rank(a);
    size_t rb = gf2_rank(b);
    if (ra != rb) {
        return false;
    }
    BinaryMatrix stacked(a.rows() + b.rows(), a.cols());
    for (size_t r = 0; r < a.rows(); r++) {
        for (size_t c = 0; c < a.cols(); c++) {
            if (a.get(r, c)) {
                stacked.set(r, c, true);
            }
        }
    }
    for (size_t r = 0; r < b.rows(); r++) {
        for (size_t c = 0; c < b.cols(); c++) {
            if (b.get(r, c)) {
                stacked.set(a.rows() + r, c, true);
            }
        }
    }
    return gf2_rank(stacked) == ra;
}

}  // namespace flagcirc
