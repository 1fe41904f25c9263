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

#include "pssnn/model.h"

namespace pssnn::zoo {

// 8x8x1 -> Conv 3x3x1x4 (stride 2, pad 1) -> ReLU -> MaxPool 2 -> FC 16x10.
// Weight scales keep accumulators around 2^-6 so truncation at ell=31,
// ell_x=13 rarely wraps, and each FC column has L1 norm below 1 so a conv
// truncation error reaches the logits as at most one ulp.
Model tiny_cnn(std::uint64_t seed);

// LeNet with every width divided by four: 28x28x1 -> Conv 5x5x1x5 -> ReLU
// -> MaxPool 2 -> Conv 5x5x5x12 -> ReLU -> MaxPool 2 -> FC 192x125 -> ReLU
// -> FC 125x10.
Model lenet_small(std::uint64_t seed);

// Uniform input in [-scale, scale); inputs for different indices are independent.
std::vector<double> random_input(const Shape3& shape, std::uint64_t seed, std::uint64_t index,
                                 double scale);
inline constexpr double kTinyInputScale = 1.0 / 16;

// Name -> model ("tiny-cnn", "lenet-small"); Errc::kInvalidConfig otherwise.
Model by_name(const std::string& name, std::uint64_t seed);

}  // namespace pssnn::zoo
