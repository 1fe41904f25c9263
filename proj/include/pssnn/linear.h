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

#include <cstddef>
#include <span>
#include <vector>

#include "pssnn/party.h"
#include "pssnn/store.h"

namespace pssnn {

// A length-'length' vector, entry j in share j / k, slot j % k, zero-padded.
struct PackedVector {
  std::size_t length = 0;
  ShareVec shares;
};

// kRowBlocks: column j of a rows x cols matrix is packed in blocks() shares,
// share index j * blocks() + b. kSlotParallel: one share per entry (r, c),
// index r * cols + c, slot i holding the entry of the i-th matrix.
struct PackedMatrix {
  enum class Axis { kRowBlocks, kSlotParallel };
  Axis axis = Axis::kRowBlocks;
  std::size_t rows = 0;
  std::size_t cols = 0;
  int k = 1;
  ShareVec shares;

  std::size_t blocks() const { return (rows + k - 1) / k; }
};

std::size_t padded(std::size_t len, int k);

// Dealer-side sharing for input owners and tests (index 0 is P1).
std::vector<PackedVector> share_vector(const PackingConfig& cfg, std::span<const FieldElement> v,
                                       Prg& prg);
std::vector<PackedMatrix> share_matrix_rows(const PackingConfig& cfg, std::size_t rows,
                                            std::size_t cols,
                                            std::span<const FieldElement> row_major, Prg& prg);
// mats[i] is the row-major entries of the i-th of k matrices.
std::vector<PackedMatrix> share_slot_matrices(const PackingConfig& cfg, std::size_t rows,
                                              std::size_t cols,
                                              const std::vector<std::vector<FieldElement>>& mats,
                                              Prg& prg);

// Plaintext of a packed vector, revealed to every party (one round).
std::vector<FieldElement> open_vector(Party& p, const PackedVector& v);

// Slot-wise product of degree-d sharings. Uses DT pairs {packed, 2d, d}.
ShareVec pmult_dn(Party& p, const ShareVec& x, const ShareVec& y);

// a * A exactly in the field. Uses ceil(cols/k) VM tuples.
PackedVector vec_mat_mult(Party& p, const PackedVector& a, const PackedMatrix& A);
// Same with every output shifted right by ell_x on P1's side. Uses
// ceil(cols/k) truncation tuples.
PackedVector vec_mat_mult_trunc(Party& p, const PackedVector& a, const PackedMatrix& A);

// Slot-parallel product with truncation: slot i of the result is
// (A^i * B^i) >> ell_x. Uses one PMat mask per output entry.
PackedMatrix pmat_mult_trunc(Party& p, const PackedMatrix& A, const PackedMatrix& B);

// For every input share of (x_0..x_{k-1}), output i is a share of (x_i, ..., x_i).
std::vector<ShareVec> pack_trans(Party& p, const ShareVec& x);

// Offline material consumed by one call.
Manifest budget_pmult_dn(const PackingConfig& cfg, std::size_t shares);
Manifest budget_vec_mat(const PackingConfig& cfg, std::size_t cols, bool trunc);
Manifest budget_pmat(const PackingConfig& cfg, std::size_t entries);
Manifest budget_pack_trans(const PackingConfig& cfg, std::size_t shares);

// Online cost of one call, total over all parties.
ProtocolCost cost_pmult_dn(const PackingConfig& cfg, std::size_t shares);
ProtocolCost cost_vec_mat(const PackingConfig& cfg, std::size_t cols);
ProtocolCost cost_pmat(const PackingConfig& cfg, std::size_t entries);
ProtocolCost cost_pack_trans(const PackingConfig& cfg, std::size_t shares);

}  // namespace pssnn
