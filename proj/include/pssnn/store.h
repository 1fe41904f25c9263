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
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "pssnn/field.h"

namespace pssnn {

inline constexpr std::uint64_t kPackedPositions = ~std::uint64_t{0};

// Identifies a family of degree-transformation pairs: either packed sharings
// at the default positions or Shamir sharings stored at one position.
struct DtKey {
  std::uint64_t position = kPackedPositions;
  int from = 0;
  int to = 0;

  bool packed() const { return position == kPackedPositions; }
  std::string name() const;

  friend auto operator<=>(const DtKey&, const DtKey&) = default;
};

// Shares of one random secret (vector) at two degrees.
struct DtPair {
  FieldElement from;
  FieldElement to;
};

// k degree-2d shares r (one per output column of a group) and one degree-d
// share r' whose slot u is the block sum of r share u (shifted right by ell_x
// for truncation tuples).
struct VmTuple {
  std::vector<FieldElement> r;
  FieldElement r_prime;
};

// Per-entry masks for the slot-parallel truncating product: R at degree 2d,
// R' = R >> ell_x at degree d.
struct PMatMask {
  FieldElement r;
  FieldElement r_prime;
};

// k constant-vector sharings (r_i, ..., r_i) and the sharing of
// (r_0, ..., r_{k-1}), all at degree d.
struct PackTransMask {
  std::vector<FieldElement> r_const;
  FieldElement r;
};

// Counts of offline material by type.
struct Manifest {
  std::map<DtKey, std::uint64_t> dt_pairs;
  std::uint64_t vm_tuples = 0;
  std::uint64_t trunc_tuples = 0;
  std::uint64_t random_bits = 0;
  std::uint64_t pmat_masks = 0;
  std::uint64_t pack_trans_masks = 0;
  std::map<int, std::uint64_t> zero_shares;  // by degree

  void add_dt(const DtKey& key, std::uint64_t count);
  Manifest& operator+=(const Manifest& other);
  Manifest scaled(std::uint64_t times) const;
  bool empty() const;
  std::string to_json() const;
  static Manifest from_json(const std::string& text);

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

// One party's pool of correlated randomness. Online protocols take from the
// front of each queue; running dry throws Errc::kMissingRandomness.
class OfflineStore {
 public:
  void add_dt(const DtKey& key, std::vector<DtPair> pairs);
  void add_vm(std::vector<VmTuple> t);
  void add_trunc(std::vector<VmTuple> t);
  void add_bits(std::vector<FieldElement> b);
  void add_pmat(std::vector<PMatMask> m);
  void add_pack_trans(std::vector<PackTransMask> m);
  void add_zero(int degree, std::vector<FieldElement> z);

  std::vector<DtPair> take_dt(const DtKey& key, std::size_t count);
  std::vector<VmTuple> take_vm(std::size_t count);
  std::vector<VmTuple> take_trunc(std::size_t count);
  std::vector<FieldElement> take_bits(std::size_t count);
  std::vector<PMatMask> take_pmat(std::size_t count);
  std::vector<PackTransMask> take_pack_trans(std::size_t count);
  std::vector<FieldElement> take_zero(int degree, std::size_t count);

  // What is left, in manifest form.
  Manifest remaining() const;
  bool empty() const { return remaining().empty(); }

  // Flat serialization of the whole store (used for per-party share files).
  std::vector<std::uint64_t> serialize() const;
  static OfflineStore deserialize(const std::vector<std::uint64_t>& words);

 private:
  std::map<DtKey, std::deque<DtPair>> dt_;
  std::deque<VmTuple> vm_;
  std::deque<VmTuple> trunc_;
  std::deque<FieldElement> bits_;
  std::deque<PMatMask> pmat_;
  std::deque<PackTransMask> pack_trans_;
  std::map<int, std::deque<FieldElement>> zero_;
};

}  // namespace pssnn
