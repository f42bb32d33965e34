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

#include <stdexcept>

#include "doctest.h"
#include "flagcirc/gf2.hpp"

using namespace flagcirc;

TEST_CASE("rank, invertibility, nullspace basics") {
    BinaryMatrix id = BinaryMatrix::identity(4);
    CHECK(gf2_rank(id) == 4);
    CHECK(gf2_is_invertible(id));

    BinaryMatrix zero(2, 3);
    CHECK(gf2_rank(zero) == 0);
    CHECK(gf2_nullspace(zero).size() == 3);  // all of GF(2)^3

    // The Lemma 1 flag map: nullspace spanned by {000, 111}.
    BinaryMatrix h = BinaryMatrix::from_rows({{1, 0, 1}, {1, 1, 0}});
    auto ns = gf2_nullspace(h);
    REQUIRE(ns.size() == 1);
    CHECK(ns[0] == std::vector<uint8_t>{1, 1, 1});
}

TEST_CASE("inverse round trip") {
    BinaryMatrix m = BinaryMatrix::from_rows({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}});
    BinaryMatrix inv = gf2_inverse(m);
    CHECK(m.multiplied_by(inv) == BinaryMatrix::identity(3));
    BinaryMatrix sing = BinaryMatrix::from_rows({{1, 1}, {1, 1}});
    CHECK(!gf2_is_invertible(sing));
    CHECK_THROWS_AS(gf2_inverse(sing), std::invalid_argument);
}

TEST_CASE("rowspace membership and equality") {
    BinaryMatrix m = BinaryMatrix::from_rows({{1, 0, 1}, {0, 1, 1}});
    CHECK(gf2_in_rowspace(m, {1, 1, 0}));
    CHECK(!gf2_in_rowspace(m, {1, 1, 1}));
    BinaryMatrix m2 = BinaryMatrix::from_rows({{1, 1, 0}, {0, 1, 1}});
    CHECK(gf2_same_rowspace(m, m2));
    BinaryMatrix m3 = BinaryMatrix::from_rows({{1, 1, 1}, {0, 1, 1}});
    CHECK(!gf2_same_rowspace(m, m3));
}

TEST_CASE("matrix text round trip") {
    BinaryMatrix m = BinaryMatrix::from_rows({{1, 0, 1, 1}, {0, 1, 0, 1}});
    BinaryMatrix back = BinaryMatrix::parse(m.to_text());
    CHECK(back == m);
    CHECK_THROWS_AS(BinaryMatrix::parse("2 3\n101\n"), std::invalid_argument);
    CHECK_THROWS_AS(BinaryMatrix::parse("1 3\n10\n"), std::invalid_argument);
}

TEST_CASE("apply multiplies a bit vector") {
    BinaryMatrix m = BinaryMatrix::from_rows({{1, 1, 0}, {0, 1, 1}});
    CHECK(m.apply({1, 1, 0}) == std::vector<uint8_t>{0, 1});
    CHECK(m.apply({1, 1, 1}) == std::vector<uint8_t>{0, 0});
}
