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

#include "pssnn/field.h"

namespace pssnn {

// Signed fixed point with ell_x fractional bits. Encodable magnitudes are
// below 2^(ell - 2 - ell_x).
class FixedPointCodec {
 public:
  FixedPointCodec(Field field, int ell_x);

  int ell_x() const { return ell_x_; }
  const Field& field() const { return field_; }

  // round(x * 2^ell_x); Errc::kOutOfRange outside the encodable range.
  std::int64_t to_fixed(double x) const;
  FieldElement encode(double x) const { return field_.from_int(to_fixed(x)); }
  double decode(FieldElement v) const;
  double scale() const;

 private:
  Field field_;
  int ell_x_;
};

// Channels x height x width, stored channel-major (c * h * w + y * w + x).
struct Shape3 {
  int c = 1;
  int h = 1;
  int w = 1;

  std::size_t size() const { return static_cast<std::size_t>(c) * h * w; }
  friend bool operator==(const Shape3&, const Shape3&) = default;
};

enum class LayerKind { kConv, kFC, kReLU, kMaxPool, kFlatten };
const char* layer_name(LayerKind kind);

struct LayerSpec {
  LayerKind kind = LayerKind::kReLU;
  // Conv: weights[((o * ci + c) * fh + y) * fw + x]; no bias.
  int fh = 0, fw = 0, ci = 0, co = 0, stride = 1, pad = 0;
  // FC: weights[i * out + o], bias[o]. Inputs are indexed in the
  // channel-major flatten order of the previous tensor.
  int in = 0, out = 0;
  // MaxPool: square window with stride equal to the window.
  int window = 0;
  std::vector<double> weights;
  std::vector<double> bias;

  static LayerSpec conv(int fh, int fw, int ci, int co, int stride, int pad);
  static LayerSpec fc(int in, int out);
  static LayerSpec relu();
  static LayerSpec maxpool(int window);
  static LayerSpec flatten();
};

struct Model {
  Shape3 input;
  std::vector<LayerSpec> layers;
  // Suggested parameters; 0 means unset.
  int ell = 0;
  int ell_x = 0;
  int k = 0;

  // Output shape of every layer; throws Errc::kShapeMismatch on an invalid
  // graph (including weight counts).
  std::vector<Shape3> shapes() const;
  Shape3 output_shape() const;
  // Number of truncating layers (Conv and FC).
  int truncations() const;
};

// JSON manifest plus a little-endian float64 blob named by the manifest's
// "weights" field (relative to the manifest). Errc::kIo on any failure.
Model load_model(const std::string& json_path);
void save_model(const Model& m, const std::string& json_path);

// Plaintext tensor: JSON {"shape": [c, h, w], "data": "<blob>"} plus blob.
struct Tensor {
  Shape3 shape;
  std::vector<double> data;
};
Tensor load_tensor(const std::string& json_path);
void save_tensor(const Tensor& t, const std::string& json_path);

// Deterministic random model for tests and benches (weights uniform in
// [-scale, scale)).
void fill_random(Model& m, std::uint64_t seed, double scale);

}  // namespace pssnn
