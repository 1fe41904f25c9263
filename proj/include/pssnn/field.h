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

#pragma once

#include <compare>
#include <cstdint>

namespace pssnn {

using u128 = unsigned __int128;

// A canonical residue modulo a Mersenne prime. The value is always < p.
struct FieldElement {
  std::uint64_t value = 0;

  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

// Arithmetic in F_p for p = 2^ell - 1. Only ell in {13, 31, 61} are accepted,
// which are exactly the Mersenne exponents that fit the 64-bit representation
// and are useful here (13 for exhaustive tests, 31/61 for inference).
class Field {
 public:
  explicit Field(int ell);

  int ell() const { return ell_; }
  std::uint64_t modulus() const { return p_; }

  // Folds x into [0, p). Requires x < p^2 for the two-fold fast path; larger
  // inputs are still reduced correctly.
  FieldElement reduce(u128 x) const {
    while (x >> ell_) x = (x & p_) + (x >> ell_);
    auto v = static_cast<std::uint64_t>(x);
    return {v == p_ ? 0 : v};
  }

  FieldElement from_u64(std::uint64_t x) const { return reduce(x); }
  // Two's-complement-in-field: negative x maps to p - |x|.
  FieldElement from_int(std::int64_t x) const;
  // Centered representative in (-(p-1)/2, (p-1)/2].
  std::int64_t to_signed(FieldElement a) const;

  FieldElement add(FieldElement a, FieldElement b) const {
    std::uint64_t s = a.value + b.value;
    return {s >= p_ ? s - p_ : s};
  }
  FieldElement sub(FieldElement a, FieldElement b) const {
    return {a.value >= b.value ? a.value - b.value : a.value + p_ - b.value};
  }
  FieldElement neg(FieldElement a) const { return {a.value == 0 ? 0 : p_ - a.value}; }
  FieldElement mul(FieldElement a, FieldElement b) const {
    return reduce(static_cast<u128>(a.value) * b.value);
  }
  // a + b * c
  FieldElement mul_add(FieldElement a, FieldElement b, FieldElement c) const {
    return reduce(static_cast<u128>(b.value) * c.value + a.value);
  }
  FieldElement pow(FieldElement a, std::uint64_t e) const;
  // Throws Errc::kDivisionByZero for a == 0.
  FieldElement inv(FieldElement a) const;
  // The square root in [1, (p-1)/2]. Throws Errc::kNonResidue when a is not
  // a nonzero quadratic residue.
  FieldElement sqrt_canonical(FieldElement a) const;

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }

  friend bool operator==(const Field& a, const Field& b) { return a.ell_ == b.ell_; }

 private:
  int ell_;
  std::uint64_t p_;
};

// Field plus fixed-point precision.
struct FieldParams {
  int ell = 31;
  int ell_x = 13;

  std::uint64_t modulus() const { return (std::uint64_t{1} << ell) - 1; }
  // Validates 0 < ell_x < ell - 2 and that ell is supported.
  void validate() const;
};

}  // namespace pssnn
