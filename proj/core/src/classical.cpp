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

#include "flagcirc/classical.hpp"

#include <bit>
#include <stdexcept>

namespace flagcirc {

namespace {

// Primitive polynomials for GF(2^m), m = 2..16, low bit = x^0. Entry m holds
// the polynomial with the x^m term stripped (the feedback mask).
constexpr uint32_t kPrimitivePoly[17] = {
    0, 0,
    0b11,          // m=2: x^2+x+1
    0b011,         // m=3: x^3+x+1
    0b0011,        // m=4: x^4+x+1
    0b00101,       // m=5: x^5+x^2+1
    0b000011,      // m=6: x^6+x+1
    0b0000011,     // m=7: x^7+x+1
    0b00011101,    // m=8: x^8+x^4+x^3+x^2+1
    0b000010001,   // m=9: x^9+x^4+1
    0b0000001001,  // m=10: x^10+x^3+1
    0b00000000101, // m=11: x^11+x^2+1
    0b000001010011,// m=12: x^12+x^6+x^4+x+1
    0b0000000011011,// m=13: x^13+x^4+x^3+x+1
    0b00010001000011,// m=14: x^14+x^10+x^6+x+1
    0b000000000000011,// m=15: x^15+x+1
    0b0001000000001011,// m=16: x^16+x^12+x^3+x+1
};

struct GF2m {
    int m;
    uint32_t poly;  // feedback mask
    explicit GF2m(int m_) : m(m_), poly(kPrimitivePoly[m_]) {
        if (m < 2 || m > 16) {
            throw std::invalid_argument("GF(2^m) supported for 2 <= m <= 16");
        }
    }
    uint32_t mul_alpha(uint32_t v) const {
        uint32_t hi = v >> (m - 1);
        v = (v << 1) & ((uint32_t{1} << m) - 1);
        if (hi) {
            v ^= poly;
        }
        return v;
    }
    // alpha^e for e >= 0
    uint32_t alpha_pow(uint64_t e) const {
        uint64_t order = (uint64_t{1} << m) - 1;
        e %= order;
        uint32_t v = 1;
        for (uint64_t i = 0; i < e; i++) {
            v = mul_alpha(v);
        }
        return v;
    }
};

BinaryMatrix drop_redundant_rows(const BinaryMatrix &h) {
    // Keep a maximal independent subset of rows, in order.
    std::vector<size_t> keep;
    BinaryMatrix acc(0, h.cols());
    std::vector<std::vector<uint8_t>> kept_rows;
    for (size_t r = 0; r < h.rows(); r++) {
        BinaryMatrix trial(keep.size() + 1, h.cols());
        for (size_t i = 0; i < keep.size(); i++) {
            for (size_t c = 0; c < h.cols(); c++) {
                if (h.get(keep[i], c)) {
                    trial.set(i, c, true);
                }
            }
        }
        for (size_t c = 0; c < h.cols(); c++) {
            if (h.get(r, c)) {
                trial.set(keep.size(), c, true);
            }
        }
        if (gf2_rank(trial) == keep.size() + 1) {
            keep.push_back(r);
        }
    }
    return h.rows_selected(keep);
}

}  // namespace

ClassicalCode bch_parity_check(size_t n, int design_d) {
    if (design_d < 1 || design_d % 2 == 0) {
        throw std::invalid_argument("BCH design distance must be odd and positive");
    }
    if (n < static_cast<size_t>(design_d)) {
        throw std::invalid_argument("BCH block length below design distance");
    }
    if (design_d == 1) {
        return {BinaryMatrix(0, n), n, 1};
    }
    int m = 2;
    while ((size_t{1} << m) - 1 < n) {
        m++;
        if (m > 16) {
            throw std::invalid_argument("BCH block length too large");
        }
    }
    GF2m field(m);
    // Rows: bits of alpha^(i*j) for odd i in {1, 3, ..., d-2}, j = 0..n-1.
    int num_groups = (design_d - 1) / 2;
    BinaryMatrix h(static_cast<size_t>(num_groups) * m, n);
    for (int g = 0; g < num_groups; g++) {
        uint64_t i = 2 * static_cast<uint64_t>(g) + 1;
        uint32_t cur = 1;  // alpha^(i*0)
        uint32_t step_base = field.alpha_pow(i);
        for (size_t j = 0; j < n; j++) {
            for (int b = 0; b < m; b++) {
                if ((cur >> b) & 1) {
                    h.set(static_cast<size_t>(g) * m + b, j, true);
                }
            }
            // cur *= alpha^i
            uint32_t next = 0;
            uint32_t acc = cur;
            uint32_t mult = step_base;
            for (int b = 0; b < m; b++) {
                if ((mult >> b) & 1) {
                    next ^= acc;
                }
                acc = field.mul_alpha(acc);
            }
            cur = next;
        }
    }
    BinaryMatrix reduced = drop_redundant_rows(h);
    return {reduced, n, design_d};
}

ClassicalCode repetition_parity(size_t n) {
    if (n < 2) {
        throw std::invalid_argument("repetition code needs n >= 2");
    }
    BinaryMatrix h(n - 1, n);
    for (size_t r = 0; r + 1 < n; r++) {
        h.set(r, r, true);
        h.set(r, r + 1, true);
    }
    return {h, n, static_cast<int>(n)};
}

ClassicalCode hamming_parity(size_t n) {
    if (n < 3) {
        throw std::invalid_argument("Hamming code needs n >= 3");
    }
    int m = 2;
    while ((size_t{1} << m) - 1 < n) {
        m++;
    }
    // Columns are binary 1..n when unshortened; shortening keeps 1..n.
    BinaryMatrix h(m, n);
    for (size_t c = 0; c < n; c++) {
        uint32_t v = static_cast<uint32_t>(c + 1);
        for (int b = 0; b < m; b++) {
            if ((v >> b) & 1) {
                h.set(static_cast<size_t>(b), c, true);
            }
        }
    }
    return {drop_redundant_rows(h), n, 3};
}

ClassicalCode hamming_parity_no_weight1(size_t n) {
    int m = 2;
    // Need n columns of weight >= 2: there are 2^m - 1 - m of those.
    while ((size_t{1} << m) - 1 - m < n) {
        m++;
        if (m > 24) {
            throw std::invalid_argument("block length too large");
        }
    }
    BinaryMatrix h(m, n);
    size_t c = 0;
    for (uint32_t v = 3; c < n; v++) {
        if (std::popcount(v) < 2) {
            continue;
        }
        for (int b = 0; b < m; b++) {
            if ((v >> b) & 1) {
                h.set(static_cast<size_t>(b), c, true);
            }
        }
        c++;
    }
    return {h, n, 3};
}

BinaryMatrix random_sparse(size_t rows, size_t cols, double density, uint64_t seed) {
    if (!(density > 0.0 && density < 1.0)) {
        throw std::invalid_argument("density must be in (0, 1)");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    BinaryMatrix m(rows, cols);
    for (size_t r = 0; r < rows; r++) {
        for (size_t c = 0; c < cols; c++) {
            if (unif(rng) < density) {
                m.set(r, c, true);
            }
        }
    }
    return m;
}

BinaryMatrix sample_equivalent(const BinaryMatrix &h, uint64_t seed) {
    bool nonzero = false;
    for (size_t r = 0; r < h.rows() && !nonzero; r++) {
        nonzero = h.row_weight(r) > 0;
    }
    if (!nonzero) {
        throw std::invalid_argument("sample_equivalent requires a nonzero matrix");
    }
    std::mt19937_64 rng(seed);
    size_t r = h.rows();
    // Rejection-sample a uniform invertible L (succeeds with prob ~0.29).
    BinaryMatrix l(r, r);
    while (true) {
        for (size_t i = 0; i < r; i++) {
            for (size_t j = 0; j < r; j++) {
                l.set(i, j, (rng() >> 37) & 1);
            }
        }
        if (gf2_is_invertible(l)) {
            break;
        }
    }
    // Random permutation R applied to the columns.
    std::vector<size_t> perm(h.cols());
    for (size_t i = 0; i < perm.size(); i++) {
        perm[i] = i;
    }
    for (size_t i = perm.size(); i > 1; i--) {
        size_t j = rng() % i;
        std::swap(perm[i - 1], perm[j]);
    }
    return l.multiplied_by(h).columns_selected(perm);
}

int min_distance(const ClassicalCode &code) {
    if (code.n > 24) {
        throw std::invalid_argument("min_distance capped at block length 24");
    }
    auto basis = gf2_nullspace(code.parity);
    if (basis.empty()) {
        return static_cast<int>(code.n) + 1;  // no nonzero codewords
    }
    if (basis.size() > 24) {
        throw std::invalid_argument("codeword space too large to enumerate");
    }
    // Pack basis vectors into words and enumerate combinations Gray-code style.
    std::vector<uint32_t> packed(basis.size(), 0);
    for (size_t i = 0; i < basis.size(); i++) {
        for (size_t c = 0; c < code.n; c++) {
            if (basis[i][c]) {
                packed[i] |= uint32_t{1} << c;
            }
        }
    }
    uint32_t cur = 0;
    int best = static_cast<int>(code.n) + 1;
    uint64_t total = uint64_t{1} << basis.size();
    for (uint64_t g = 1; g < total; g++) {
        cur ^= packed[std::countr_zero(g)];
        int w = std::popcount(cur);
        if (w > 0 && w < best) {
            best = w;
        }
    }
    return best;
}

std::optional<std::vector<uint8_t>> min_weight_error_for_syndrome(
    const BinaryMatrix &parity, const std::vector<uint8_t> &syndrome, int max_weight) {
    size_t n = parity.cols();
    if (syndrome.size() != parity.rows()) {
        throw std::invalid_argument("syndrome length mismatch");
    }
    auto matches = [&](const std::vector<uint8_t> &e) {
        auto s = parity.apply(e);
        return s == syndrome;
    };
    std::vector<uint8_t> e(n, 0);
    if (matches(e)) {
        return e;
    }
    // Weight 1, 2, ... up to max_weight.
    std::vector<size_t> idx;
    for (int w = 1; w <= max_weight; w++) {
        idx.assign(w, 0);
        for (size_t i = 0; i < static_cast<size_t>(w); i++) {
            idx[i] = i;
        }
        if (static_cast<size_t>(w) > n) {
            break;
        }
        while (true) {
            std::fill(e.begin(), e.end(), 0);
            for (size_t i : idx) {
                e[i] = 1;
            }
            if (matches(e)) {
                return e;
            }
            // next combination
            int i = w - 1;
            while (i >= 0 && idx[i] == n - w + i) {
                i--;
            }
            if (i < 0) {
                break;
            }
            idx[i]++;
            for (size_t j = i + 1; j < static_cast<size_t>(w); j++) {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    return std::nullopt;
}

}  // namespace flagcirc
