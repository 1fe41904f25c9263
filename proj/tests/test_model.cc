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
#include <filesystem>
#include <numbers>

#include "doctest.h"
#include "pssnn/error.h"
#include "pssnn/model.h"
#include "pssnn/zoo.h"

using namespace pssnn;

TEST_CASE("fixed-point codec examples") {
  const Field f(31);
  const FixedPointCodec c(f, 13);
  CHECK(c.encode(1.5).value == 12288);
  CHECK(c.encode(-1.0).value == f.modulus() - 8192);
  CHECK(std::abs(c.decode(c.encode(std::numbers::pi)) - std::numbers::pi) <= std::ldexp(1.0, -13));
  CHECK(c.decode(c.encode(-2.25)) == -2.25);
  // |x| must stay below 2^(ell-2-ell_x) = 2^16.
  CHECK_THROWS_AS(c.encode(65536.0), Error);
  CHECK_NOTHROW(c.encode(65535.0));
}

TEST_CASE("codec roundtrip on field representatives") {
  const Field f(31);
  const FixedPointCodec c(f, 13);
  for (std::int64_t v : {0L, 1L, -1L, 12345L, -99999L, (1L << 29) - 1, -(1L << 29) + 1}) {
    const FieldElement e = f.from_int(v);
    CHECK(c.encode(c.decode(e)).value == e.value);
  }
}

TEST_CASE("layer shapes") {
  Model m;
  m.input = {1, 8, 8};
  m.layers = {LayerSpec::conv(3, 3, 1, 4, 2, 1), LayerSpec::relu(), LayerSpec::maxpool(2),
              LayerSpec::fc(16, 10)};
  auto s = m.shapes();
  REQUIRE(s.size() == 4);
  CHECK(s[0] == Shape3{4, 4, 4});
  CHECK(s[2] == Shape3{4, 2, 2});
  CHECK(m.output_shape() == Shape3{10, 1, 1});
  CHECK(m.truncations() == 2);

  // w_o = floor((w_i - f_w + 2p)/s) + 1
  Model c;
  c.input = {2, 7, 5};
  c.layers = {LayerSpec::conv(3, 2, 2, 3, 2, 1)};
  CHECK(c.output_shape() == Shape3{3, 4, 3});

  Model bad = m;
  bad.layers[3] = LayerSpec::fc(15, 10);
  CHECK_THROWS_AS(bad.shapes(), Error);
  Model badw = m;
  badw.layers[0].weights.pop_back();
  CHECK_THROWS_AS(badw.shapes(), Error);
}

TEST_CASE("model and tensor files roundtrip") {
  const auto dir = std::filesystem::temp_directory_path() / "pssnn_test_model";
  std::filesystem::create_directories(dir);
  Model m = zoo::lenet_small(3);
  save_model(m, (dir / "m.json").string());
  Model back = load_model((dir / "m.json").string());
  REQUIRE(back.layers.size() == m.layers.size());
  CHECK(back.input == m.input);
  for (std::size_t i = 0; i < m.layers.size(); ++i) {
    CHECK(back.layers[i].kind == m.layers[i].kind);
    CHECK(back.layers[i].weights == m.layers[i].weights);
    CHECK(back.layers[i].bias == m.layers[i].bias);
  }
  Tensor t{{1, 2, 3}, {1, -2, 3.5, 0.25, -0.125, 6}};
  save_tensor(t, (dir / "x.json").string());
  Tensor tb = load_tensor((dir / "x.json").string());
  CHECK(tb.shape == t.shape);
  CHECK(tb.data == t.data);
  try {
    load_model((dir / "missing.json").string());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kIo);
  }
  std::filesystem::remove_all(dir);
}
