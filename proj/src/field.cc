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

#include "pssnn/field.h"

#include <string>

#include "pssnn/error.h"

namespace pssnn {

Field::Field(int ell) : ell_(ell), p_((std::uint64_t{1} << ell) - 1) {
  if (ell != 13 && ell != 31 && ell != 61) {
    throw Error(Errc::kInvalidConfig,
                "unsupported Mersenne exponent " + std::to_string(ell));
  }
}

FieldElement Field::from_int(std::int64_t x) const {
  if (x >= 0) return reduce(static_cast<std::uint64_t>(x));
  // -x may overflow for INT64_MIN; go through unsigned magnitude.
  std::uint64_t mag = ~static_cast<std::uint64_t>(x) + 1;
  return neg(reduce(mag));
}

std::int64_t Field::to_signed(FieldElement a) const {
  if (a.value <= (p_ - 1) / 2) return static_cast<std::int64_t>(a.value);
  return -static_cast<std::int64_t>(p_ - a.value);
}

FieldElement Field::pow(FieldElement a, std::uint64_t e) const {
  FieldElement result = one();
  FieldElement base = a;
  while (e != 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

FieldElement Field::inv(FieldElement a) const {
  if (a.value == 0) throw Error(Errc::kDivisionByZero, "inverse of zero");
  return pow(a, p_ - 2);
}

FieldElement Field::sqrt_canonical(FieldElement a) const {
  if (a.value == 0) throw Error(Errc::kNonResidue, "zero has no canonical root");
  // p = 3 mod 4, so a^((p+1)/4) is a root whenever one exists.
  FieldElement r = pow(a, (p_ + 1) / 4);
  if (mul(r, r) != a) {
    throw Error(Errc::kNonResidue, std::to_string(a.value) + " is not a square");
  }
  if (r.value > (p_ - 1) / 2) r = neg(r);
  return r;
}

void FieldParams::validate() const {
  Field f(ell);
  if (ell_x <= 0 || ell_x >= ell - 2) {
    throw Error(Errc::kInvalidConfig,
                "fixed-point bits must satisfy 0 < ell_x < ell - 2");
  }
}

}  // namespace pssnn
