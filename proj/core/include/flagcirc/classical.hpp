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

#ifndef FLAGCIRC_CLASSICAL_HPP
#define FLAGCIRC_CLASSICAL_HPP

#include <cstdint>
#include <optional>
#include <random>

#include "flagcirc/gf2.hpp"

namespace flagcirc {

/// A classical binary linear code described by its parity-check matrix; the
/// codewords are the right nullspace.
struct ClassicalCode {
    BinaryMatrix parity;
    size_t n = 0;                    // block length (= parity.cols())
    std::optional<int> design_d;     // recorded design distance, if any
};

/// Parity-check matrix of the binary primitive BCH code of design distance
/// `design_d` (odd) and block length 2^m - 1 >= n, shortened to n columns by
/// deleting the last 2^m-1-n coordinates (natural alpha-power column order).
/// Redundant rows are removed: the row count is the GF(2) rank.
ClassicalCode bch_parity_check(size_t n, int design_d);

/// [n, 1, n] repetition code: n-1 adjacent-pair checks.
ClassicalCode repetition_parity(size_t n);

/// Hamming code parity check, shortened to n columns. For n = 2^m - 1 the
/// columns are the binary representations of 1..n; shortening keeps the
/// first n in that order.
ClassicalCode hamming_parity(size_t n);

/// Shortened Hamming-type d=3 check whose kept columns all have weight >= 2
/// (the weight-1 columns are dropped first). Used for meta-flag levels where
/// column weight >= 2 is what justifies omitting spatial repetition.
ClassicalCode hamming_parity_no_weight1(size_t n);

/// Each entry is 1 independently with probability `density`; deterministic
/// per seed.
BinaryMatrix random_sparse(size_t rows, size_t cols, double density, uint64_t seed);

/// L * H * R for uniformly random invertible L (rejection sampled) and random
/// permutation R: an equivalent parity-check matrix for the same code up to
/// column relabeling.
BinaryMatrix sample_equivalent(const BinaryMatrix &h, uint64_t seed);

/// Minimum Hamming weight over nonzero codewords. Brute force; block length
/// is capped at 24.
int min_distance(const ClassicalCode &code);

/// Syndrome-table decoder for small codes: returns the minimum-weight error
/// with the given syndrome, or nullopt if the syndrome is inconsistent.
std::optional<std::vector<uint8_t>> min_weight_error_for_syndrome(
    const BinaryMatrix &parity, const std::vector<uint8_t> &syndrome, int max_weight);

}  // namespace flagcirc

#endif
