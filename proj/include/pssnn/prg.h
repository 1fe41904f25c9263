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

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "pssnn/field.h"

namespace pssnn {

// Deterministic ChaCha20 keystream. Each party and the dealer derive their
// own stream from (seed, label, index) so runs are reproducible per seed.
class Prg {
 public:
  Prg(std::uint64_t seed, std::string_view label, std::uint64_t index = 0);

  std::uint64_t next_u64();
  // Uniform in [0, p) by rejection on ell-bit samples.
  FieldElement next_field(const Field& field);
  void fill_field(const Field& field, std::vector<FieldElement>& out);

 private:
  void refill();

  std::array<unsigned char, 32> key_{};
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 64> buffer_{};
  std::size_t pos_ = 64;
};

}  // namespace pssnn
