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

#include "pssnn/zoo.h"

#include "pssnn/error.h"
#include "pssnn/prg.h"

namespace pssnn::zoo {

namespace {

class Uniform {
 public:
  Uniform(std::uint64_t seed, const char* label, std::uint64_t index) : prg_(seed, label, index) {}
  double operator()(double scale) {
    return (static_cast<double>(prg_.next_u64() >> 11) / 9007199254740992.0 * 2.0 - 1.0) * scale;
  }

 private:
  Prg prg_;
};

void fill(LayerSpec& l, Uniform& u, double w, double b) {
  for (auto& x : l.weights) x = u(w);
  for (auto& x : l.bias) x = u(b);
}

}  // namespace

Model tiny_cnn(std::uint64_t seed) {
  Model m;
  m.input = {1, 8, 8};
  m.ell = 31;
  m.ell_x = 13;
  m.k = 3;
  m.layers = {LayerSpec::conv(3, 3, 1, 4, 2, 1), LayerSpec::relu(), LayerSpec::maxpool(2),
              LayerSpec::fc(16, 10)};
  Uniform u(seed, "zoo.tiny", 0);
  fill(m.layers[0], u, 0.25, 0);
  fill(m.layers[3], u, 1.0 / 16, 1.0 / 256);
  return m;
}

Model lenet_small(std::uint64_t seed) {
  Model m;
  m.input = {1, 28, 28};
  m.ell = 31;
  m.ell_x = 13;
  m.layers = {LayerSpec::conv(5, 5, 1, 5, 1, 0), LayerSpec::relu(), LayerSpec::maxpool(2),
              LayerSpec::conv(5, 5, 5, 12, 1, 0), LayerSpec::relu(), LayerSpec::maxpool(2),
              LayerSpec::fc(192, 125), LayerSpec::relu(), LayerSpec::fc(125, 10)};
  Uniform u(seed, "zoo.lenet", 0);
  fill(m.layers[0], u, 0.2, 0);
  fill(m.layers[3], u, 0.1, 0);
  fill(m.layers[6], u, 0.05, 0.01);
  fill(m.layers[8], u, 0.05, 0.01);
  return m;
}

std::vector<double> random_input(const Shape3& shape, std::uint64_t seed, std::uint64_t index,
                                 double scale) {
  Uniform u(seed, "zoo.input", index);
  std::vector<double> v(shape.size());
  for (auto& x : v) x = u(scale);
  return v;
}

Model by_name(const std::string& name, std::uint64_t seed) {
  if (name == "tiny-cnn") return tiny_cnn(seed);
  if (name == "lenet-small") return lenet_small(seed);
  throw Error(Errc::kInvalidConfig, "unknown model '" + name + "'");
}

}  // namespace pssnn::zoo
