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

#include "pssnn/prg.h"

#include <sodium.h>

#include <cstring>
#include <stdexcept>

namespace pssnn {

namespace {

void ensure_sodium() {
  static const bool ok = sodium_init() >= 0;
  if (!ok) throw std::runtime_error("libsodium initialisation failed");
}

}  // namespace

Prg::Prg(std::uint64_t seed, std::string_view label, std::uint64_t index) {
  ensure_sodium();
  crypto_generichash_state st;
  crypto_generichash_init(&st, nullptr, 0, key_.size());
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(seed >> (8 * i));
  crypto_generichash_update(&st, buf, sizeof buf);
  crypto_generichash_update(&st, reinterpret_cast<const unsigned char*>(label.data()),
                            label.size());
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(index >> (8 * i));
  crypto_generichash_update(&st, buf, sizeof buf);
  crypto_generichash_final(&st, key_.data(), key_.size());
}

void Prg::refill() {
  unsigned char nonce[crypto_stream_chacha20_NONCEBYTES] = {};
  for (int i = 0; i < 8; ++i) nonce[i] = static_cast<unsigned char>(block_ >> (8 * i));
  ++block_;
  unsigned char bytes[sizeof(buffer_)];
  crypto_stream_chacha20(bytes, sizeof bytes, nonce, key_.data());
  for (std::size_t i = 0; i < buffer_.size(); ++i) {
    std::uint64_t w = 0;
    for (int b = 7; b >= 0; --b) w = (w << 8) | bytes[8 * i + b];
    buffer_[i] = w;
  }
  pos_ = 0;
}

std::uint64_t Prg::next_u64() {
  if (pos_ == buffer_.size()) refill();
  return buffer_[pos_++];
}

FieldElement Prg::next_field(const Field& field) {
  const std::uint64_t p = field.modulus();
  for (;;) {
    std::uint64_t v = next_u64() & p;
    if (v != p) return {v};
  }
}

void Prg::fill_field(const Field& field, std::vector<FieldElement>& out) {
  for (auto& e : out) e = next_field(field);
}

}  // namespace pssnn
