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

// Reference arithmetic on arbitrary-width integers, independent of the
// folding code under test.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace oracle {

using boost::multiprecision::cpp_int;

inline std::uint64_t mod(const cpp_int& x, std::uint64_t p) {
  cpp_int r = x % p;
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return mod(cpp_int(a) * b, p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  return static_cast<std::uint64_t>(boost::multiprecision::powm(cpp_int(a), cpp_int(e), cpp_int(p)));
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

// Evaluates the unique polynomial through (xs[i], ys[i]) at x, using exact
// rational-free Lagrange interpolation over Z_p.
inline std::uint64_t interpolate(const std::vector<std::uint64_t>& xs,
                                 const std::vector<std::uint64_t>& ys, std::uint64_t x,
                                 std::uint64_t p) {
  cpp_int acc = 0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    cpp_int num = 1, den = 1;
    for (std::size_t q = 0; q < xs.size(); ++q) {
      if (q == j) continue;
      num = num * (cpp_int(x) - xs[q]) % p;
      den = den * (cpp_int(xs[j]) - xs[q]) % p;
    }
    std::uint64_t l = mulmod(mod(num, p), invmod(mod(den, p), p), p);
    acc += cpp_int(l) * ys[j];
  }
  return mod(acc, p);
}

}  // namespace oracle
