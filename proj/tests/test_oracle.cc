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

#include <cmath>

#include "doctest.h"
#include "pssnn/error.h"
#include "pssnn/oracle.h"
#include "pssnn/zoo.h"

using namespace pssnn;
using oracle::BigInt;

namespace {

Model identity_fc(int width) {
  Model m;
  m.input = {width, 1, 1};
  m.layers = {LayerSpec::fc(width, width)};
  for (int i = 0; i < width; ++i) m.layers[0].weights[i * width + i] = 1.0;
  return m;
}

}  // namespace

TEST_CASE("floor_shift and centered") {
  CHECK(oracle::floor_shift(BigInt(17), 2) == 4);
  CHECK(oracle::floor_shift(BigInt(-17), 2) == -5);
  CHECK(oracle::floor_shift(BigInt(-16), 2) == -4);
  CHECK(oracle::centered(5, 31) == 5);
  CHECK(oracle::centered(30, 31) == -1);
}

TEST_CASE("plaintext inference basics") {
  const std::vector<double> x = {0.5, -1.25, 3.0, 0.0};
  auto out = oracle::plaintext_infer(identity_fc(4), 31, 13, x);
  for (int i = 0; i < 4; ++i) CHECK(out[i] == BigInt(std::llround(x[i] * 8192)));

  Model zero = zoo::tiny_cnn(1);
  for (auto& l : zero.layers) {
    std::fill(l.weights.begin(), l.weights.end(), 0.0);
    std::fill(l.bias.begin(), l.bias.end(), 0.0);
  }
  for (const auto& v : oracle::plaintext_infer(zero, 31, 13, zoo::random_input(zero.input, 1, 0, 1.0))) {
    CHECK(v == 0);
  }

  Model big = identity_fc(1);
  big.layers[0].weights[0] = 60000;
  CHECK_THROWS_AS(oracle::plaintext_infer(big, 31, 13, {60000}), Error);
}

TEST_CASE("fixed-point inference tracks double inference") {
  // Within 10 * T ulps on random tiny CNNs.
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Model m = zoo::tiny_cnn(seed);
    const double bound = 10.0 * m.truncations() * std::ldexp(1.0, -13);
    auto x = zoo::random_input(m.input, seed, 0, 0.5);
    auto fx = oracle::plaintext_infer(m, 31, 13, x);
    auto dx = oracle::double_infer(m, x);
    REQUIRE(fx.size() == dx.size());
    for (std::size_t i = 0; i < fx.size(); ++i) {
      CHECK(std::abs(fx[i].convert_to<double>() / 8192 - dx[i]) <= bound);
    }
  }
}

TEST_CASE("functionality catalog examples") {
  oracle::OracleCall c;
  c.p = (1ULL << 31) - 1;
  c.ell = 31;
  c.name = "PreOR";
  c.inputs = {{0}, {1}, {0}};
  auto t = oracle::functionality_oracle(c);
  CHECK(t.outputs == std::vector<std::vector<BigInt>>{{0}, {1}, {1}});

  c.name = "DReLU";
  c.inputs = {{-1, 0, 7}};
  CHECK(oracle::functionality_oracle(c).outputs[0] == std::vector<BigInt>{0, 1, 1});

  c.name = "Xor";
  c.inputs = {{0, 1, 0, 1}, {0, 0, 1, 1}};
  CHECK(oracle::functionality_oracle(c).outputs[0] == std::vector<BigInt>{0, 1, 1, 0});

  c.name = "PreMult";
  c.inputs = {{2}, {3}, {c.p - 1}};
  CHECK(oracle::functionality_oracle(c).outputs.back()[0] == BigInt(c.p - 6));

  c.name = "Maxpool";
  c.inputs = {{-3, 4}, {5, -1}, {0, 2}};
  CHECK(oracle::functionality_oracle(c).outputs[0] == std::vector<BigInt>{5, 4});

  c.name = "Random";
  try {
    oracle::functionality_oracle(c);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kUnknownFunctionality);
  }
  CHECK(oracle::functionality_catalog().size() == 16);
}

TEST_CASE("truncation relation checker") {
  // r' = blocksum(r) >> ell_x on sampled r.
  oracle::OracleCall c;
  c.name = "TruncTriple";
  c.p = (1ULL << 31) - 1;
  c.k = 3;
  c.ell_x = 13;
  c.inputs = {{100000, 200000, 300000, 1, 2, 8190}};
  auto t = oracle::functionality_oracle(c);
  CHECK(t.outputs[0] == std::vector<BigInt>{BigInt(600000 >> 13), BigInt(1)});
  c.inputs = {{c.p - 1, 5, 0}};
  CHECK(oracle::functionality_oracle(c).outputs[0][0] == BigInt(4 >> 13));
}

TEST_CASE("tolerance classes") {
  oracle::OracleTranscript t{"VecMatMult-Trunc", {}, {{5, -3}}, oracle::Tolerance::kOneUlp};
  CHECK(oracle::within_tolerance(t, {{6, -3}}));
  CHECK_FALSE(oracle::within_tolerance(t, {{7, -3}}));
  t.tolerance = oracle::Tolerance::kExact;
  CHECK_FALSE(oracle::within_tolerance(t, {{6, -3}}));
  CHECK(oracle::within_tolerance(t, {{5, -3}}));
}
