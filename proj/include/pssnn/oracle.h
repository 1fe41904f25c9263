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

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pssnn/bench.h"
#include "pssnn/model.h"

// Plaintext reference implementations for tests and acceptance runs. All
// arithmetic is on arbitrary-width integers, independent of the field code.
namespace pssnn::oracle {

using BigInt = boost::multiprecision::cpp_int;

BigInt mod(const BigInt& x, std::uint64_t p);
// floor(x / 2^s) for any sign.
BigInt floor_shift(const BigInt& x, int s);
// Centered representative of a field value.
BigInt centered(std::uint64_t v, std::uint64_t p);

// Fixed-point inference truncating after every Conv and FC exactly where the
// secure pipeline does (floor of the accumulator). Output in channel-major
// order as scaled integers. Errc::kOutOfRange if any accumulator leaves
// (-2^(ell-2), 2^(ell-2)).
std::vector<BigInt> plaintext_infer(const Model& m, int ell, int ell_x,
                                    const std::vector<double>& input);
// Same network in IEEE double.
std::vector<double> double_infer(const Model& m, const std::vector<double>& input);

enum class Tolerance { kExact, kOneUlp, kProbabilistic };

struct OracleCall {
  std::string name;
  std::vector<std::vector<BigInt>> inputs;
  std::uint64_t p = 0;
  int ell = 0;
  int ell_x = 0;
  int k = 0;
  std::size_t rows = 0;   // matrix products: rows of the left operand
  std::size_t inner = 0;  // shared dimension
  std::size_t cols = 0;   // columns of the right operand
};

struct OracleTranscript {
  std::string name;
  std::vector<std::vector<BigInt>> inputs;
  std::vector<std::vector<BigInt>> outputs;
  Tolerance tolerance = Tolerance::kExact;
};

// Names: PMult-DN, VecMatMult, VecMatMult-Trunc, PMatMult-Trunc, PackTrans,
// DegreeTrans, Xor, PreMult, PreOR, Bitwise-LT, DReLU, ReLU, Maxpool,
// RandomBits, RandomPairs, TruncTriple. Field-exact functionalities take and
// return canonical field values; fixed-point ones take and return centered
// signed integers. Errc::kUnknownFunctionality for anything else (including
// Random, which has no deterministic output).
OracleTranscript functionality_oracle(const OracleCall& call);
std::vector<std::string> functionality_catalog();

// Whether observed outputs match the transcript within its tolerance class.
bool within_tolerance(const OracleTranscript& t, const std::vector<std::vector<BigInt>>& observed);

// Comparison of one protocol run with its functionality.
struct Verdict {
  std::size_t compared = 0;
  std::size_t mismatches = 0;     // outside the tolerance class
  double expected_wraps = 0;      // truncating protocols: sum of |acc| / p
  Tolerance tolerance = Tolerance::kExact;
  std::string functionality;
  bool ok() const { return mismatches == 0; }
};
Verdict verify_trial(const bench::ProtocolCase& c, const PackingConfig& cfg, int ell_x,
                     const bench::ProtocolTrial& t);

}  // namespace pssnn::oracle
