// Copyright 2026 The pssnn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include "bigint_oracle.h"
#include "doctest.h"
#include "pssnn/error.h"
#include "pssnn/field.h"
#include "pssnn/prg.h"

using namespace pssnn;

TEST_CASE("reduce examples") {
  Field f(13);
  CHECK(f.reduce(0).value == 0);
  CHECK(f.reduce(8191).value == 0);
  CHECK(f.reduce(static_cast<u128>(8191) * 8191).value == oracle::mod(oracle::cpp_int(8191) * 8191, 8191));
  CHECK(f.reduce(f.reduce(123456789).value) == f.reduce(123456789));
}

TEST_CASE("basic arithmetic examples") {
  Field f(13);
  CHECK(f.add({8190}, {5}).value == 4);
  CHECK(f.pow({3}, 8190).value == oracle::powmod(3, 8190, 8191));
  CHECK(f.pow({3}, 8190).value == 1);
  CHECK(f.sub({3}, {5}).value == 8189);
  CHECK(f.neg({0}).value == 0);
  CHECK_THROWS_AS(f.inv({0}), Error);
  try {
    f.inv({0});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kDivisionByZero);
  }
}

TEST_CASE("unsupported exponents are rejected") {
  CHECK_THROWS_AS(Field(17), Error);
  CHECK_THROWS_AS(Field(32), Error);
  FieldParams bad{31, 29};
  CHECK_THROWS_AS(bad.validate(), Error);
  FieldParams zero{31, 0};
  CHECK_THROWS_AS(zero.validate(), Error);
  FieldParams ok{31, 13};
  CHECK_NOTHROW(ok.validate());
}

TEST_CASE("signed encoding") {
  Field f(31);
  CHECK(f.from_int(-1).value == f.modulus() - 1);
  CHECK(f.to_signed(f.from_int(-12345)) == -12345);
  CHECK(f.to_signed(f.from_int(12345)) == 12345);
}

TEST_CASE("random ring axioms against big-integer reference") {
  for (int ell : {13, 31, 61}) {
    Field f(ell);
    const std::uint64_t p = f.modulus();
    std::mt19937_64 rng(ell);
    const int trials = ell == 13 ? 1000000 : 300000;
    for (int i = 0; i < trials; ++i) {
      FieldElement a{rng() % p}, b{rng() % p}, c{rng() % p};
      REQUIRE(f.mul(a, b).value == oracle::mulmod(a.value, b.value, p));
      REQUIRE(f.add(a, b).value == (a.value + b.value) % p);
      REQUIRE(f.sub(a, b).value == oracle::mod(oracle::cpp_int(a.value) - b.value, p));
      REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      REQUIRE(f.mul_add(c, a, b) == f.add(c, f.mul(a, b)));
      if (i % 1000 == 0 && a.value != 0) REQUIRE(f.mul(a, f.inv(a)) == f.one());
    }
  }
}

TEST_CASE("sqrt_canonical examples") {
  Field f(13);
  CHECK(f.sqrt_canonical({4}).value == 2);
  CHECK(f.sqrt_canonical({1}).value == 1);
  // Exhaustive search for a root of 2.
  std::uint64_t expect = 0;
  for (std::uint64_t r = 1; r <= 4095; ++r) {
    if (r * r % 8191 == 2) expect = r;
  }
  REQUIRE(expect != 0);
  CHECK(f.sqrt_canonical({2}).value == expect);
}

TEST_CASE("sqrt_canonical exhaustive at ell=13") {
  Field f(13);
  const std::uint64_t p = f.modulus();
  int residues = 0;
  for (std::uint64_t x = 1; x < p; ++x) {
    FieldElement sq = f.mul({x}, {x});
    FieldElement r = f.sqrt_canonical(sq);
    REQUIRE((r.value == x || r.value == p - x));
    REQUIRE(r.value <= (p - 1) / 2);
    REQUIRE(r.value >= 1);
  }
  for (std::uint64_t a = 1; a < p; ++a) {
    bool is_square = oracle::powmod(a, (p - 1) / 2, p) == 1;
    if (is_square) {
      ++residues;
      CHECK_NOTHROW(f.sqrt_canonical({a}));
    } else {
      CHECK_THROWS_AS(f.sqrt_canonical({a}), Error);
    }
  }
  CHECK(residues == static_cast<int>((p - 1) / 2));
  CHECK_THROWS_AS(f.sqrt_canonical({0}), Error);
}

TEST_CASE("prg is deterministic and label separated") {
  Field f(61);
  Prg a(7, "x"), b(7, "x"), c(7, "y"), d(7, "x", 1);
  auto va = a.next_field(f), vb = b.next_field(f), vc = c.next_field(f), vd = d.next_field(f);
  CHECK(va == vb);
  CHECK(va != vc);
  CHECK(va != vd);
  for (int i = 0; i < 10000; ++i) CHECK(a.next_field(f).value < f.modulus());
}
