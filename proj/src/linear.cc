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

#include "pssnn/linear.h"

#include "pssnn/error.h"

namespace pssnn {

namespace {

DtKey dn_key(const PackingConfig& cfg) { return {kPackedPositions, 2 * cfg.d(), cfg.d()}; }

void require(bool ok, const char* what) {
  if (!ok) throw Error(Errc::kShapeMismatch, what);
}

// Deals ceil(len/k) packed sharings of v, shares[party][block].
std::vector<std::vector<FieldElement>> deal_blocks(const PackingConfig& cfg,
                                                   std::span<const FieldElement> v, Prg& prg) {
  const int k = cfg.k();
  const std::size_t blocks = padded(v.size(), k) / k;
  std::vector<std::vector<FieldElement>> out(cfg.n(), std::vector<FieldElement>(blocks));
  std::vector<FieldElement> secrets(k);
  for (std::size_t b = 0; b < blocks; ++b) {
    for (int i = 0; i < k; ++i) {
      const std::size_t j = b * k + i;
      secrets[i] = j < v.size() ? v[j] : FieldElement{0};
    }
    auto sh = cfg.deal(cfg.packed_plan(cfg.d()), secrets, prg);
    for (int j = 0; j < cfg.n(); ++j) out[j][b] = sh[j];
  }
  return out;
}

PackedVector vec_mat_impl(Party& p, const PackedVector& a, const PackedMatrix& A, bool trunc) {
  const auto& cfg = p.cfg;
  const Field& f = p.field();
  const int k = cfg.k(), d = cfg.d();
  require(A.axis == PackedMatrix::Axis::kRowBlocks, "vec_mat_mult needs a row-block matrix");
  require(a.length == A.rows, "vector length must equal matrix rows");
  require(a.shares.size() == A.blocks(), "vector blocks must match matrix blocks");
  require(A.shares.size() == A.blocks() * A.cols, "matrix share count");
  if (a.shares.degree != d || A.shares.degree != d) {
    throw Error(Errc::kDegreeMismatch, "vec_mat_mult inputs must have degree d");
  }
  const std::size_t vp = padded(A.cols, k);
  const std::size_t groups = vp / k;
  auto tuples = trunc ? p.store.take_trunc(groups) : p.store.take_vm(groups);

  const std::size_t blocks = A.blocks();
  std::vector<FieldElement> masked(vp);
  for (std::size_t j = 0; j < vp; ++j) {
    FieldElement z = tuples[j / k].r[j % k];
    if (j < A.cols) {
      for (std::size_t b = 0; b < blocks; ++b) {
        z = f.mul_add(z, a.shares.values[b], A.shares.values[j * blocks + b]);
      }
    }
    masked[j] = z;
  }
  const int shift = p.ell_x;
  auto fresh = p1_relay(p, masked, cfg.packed_plan(2 * d), groups, cfg.packed_plan(d),
                        [&](std::vector<std::vector<FieldElement>> opened) {
                          std::vector<std::vector<FieldElement>> out(
                              groups, std::vector<FieldElement>(k));
                          for (std::size_t j = 0; j < opened.size(); ++j) {
                            FieldElement s = f.zero();
                            for (auto v : opened[j]) s = f.add(s, v);
                            if (trunc) s = {s.value >> shift};
                            out[j / k][j % k] = s;
                          }
                          return out;
                        });
  PackedVector out{A.cols, ShareVec{std::vector<FieldElement>(groups), d}};
  for (std::size_t g = 0; g < groups; ++g) out.shares.values[g] = f.sub(fresh[g], tuples[g].r_prime);
  return out;
}

}  // namespace

std::size_t padded(std::size_t len, int k) {
  const std::size_t kk = static_cast<std::size_t>(k);
  return (len + kk - 1) / kk * kk;
}

std::vector<PackedVector> share_vector(const PackingConfig& cfg, std::span<const FieldElement> v,
                                       Prg& prg) {
  auto blocks = deal_blocks(cfg, v, prg);
  std::vector<PackedVector> out(cfg.n());
  for (int j = 0; j < cfg.n(); ++j) out[j] = {v.size(), ShareVec{std::move(blocks[j]), cfg.d()}};
  return out;
}

std::vector<PackedMatrix> share_matrix_rows(const PackingConfig& cfg, std::size_t rows,
                                            std::size_t cols,
                                            std::span<const FieldElement> row_major, Prg& prg) {
  require(row_major.size() == rows * cols, "matrix entry count");
  std::vector<PackedMatrix> out(cfg.n());
  for (auto& m : out) m = {PackedMatrix::Axis::kRowBlocks, rows, cols, cfg.k(), {{}, cfg.d()}};
  std::vector<FieldElement> col(rows);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) col[r] = row_major[r * cols + c];
    auto blocks = deal_blocks(cfg, col, prg);
    for (int j = 0; j < cfg.n(); ++j) {
      out[j].shares.values.insert(out[j].shares.values.end(), blocks[j].begin(), blocks[j].end());
    }
  }
  return out;
}

std::vector<PackedMatrix> share_slot_matrices(const PackingConfig& cfg, std::size_t rows,
                                              std::size_t cols,
                                              const std::vector<std::vector<FieldElement>>& mats,
                                              Prg& prg) {
  const int k = cfg.k();
  require(mats.size() <= static_cast<std::size_t>(k), "at most k slot matrices");
  for (const auto& m : mats) require(m.size() == rows * cols, "matrix entry count");
  std::vector<PackedMatrix> out(cfg.n());
  for (auto& m : out) m = {PackedMatrix::Axis::kSlotParallel, rows, cols, k, {{}, cfg.d()}};
  std::vector<FieldElement> secrets(k);
  for (std::size_t e = 0; e < rows * cols; ++e) {
    for (int i = 0; i < k; ++i) {
      secrets[i] = static_cast<std::size_t>(i) < mats.size() ? mats[i][e] : FieldElement{0};
    }
    auto sh = cfg.deal(cfg.packed_plan(cfg.d()), secrets, prg);
    for (int j = 0; j < cfg.n(); ++j) out[j].shares.values.push_back(sh[j]);
  }
  return out;
}

std::vector<FieldElement> open_vector(Party& p, const PackedVector& v) {
  auto all = open_to_all(p.comm, p.cfg, v.shares);
  all.resize(v.length);
  return all;
}

ShareVec pmult_dn(Party& p, const ShareVec& x, const ShareVec& y) {
  require(x.size() == y.size(), "pmult_dn operand sizes");
  return degree_trans(p, mul_local(p.cfg, x, y), dn_key(p.cfg));
}

PackedVector vec_mat_mult(Party& p, const PackedVector& a, const PackedMatrix& A) {
  return vec_mat_impl(p, a, A, false);
}

PackedVector vec_mat_mult_trunc(Party& p, const PackedVector& a, const PackedMatrix& A) {
  return vec_mat_impl(p, a, A, true);
}

PackedMatrix pmat_mult_trunc(Party& p, const PackedMatrix& A, const PackedMatrix& B) {
  const auto& cfg = p.cfg;
  const Field& f = p.field();
  const int d = cfg.d();
  require(A.axis == PackedMatrix::Axis::kSlotParallel && B.axis == PackedMatrix::Axis::kSlotParallel,
          "pmat_mult_trunc needs slot-parallel matrices");
  require(A.cols == B.rows, "inner dimensions differ");
  require(A.shares.size() == A.rows * A.cols && B.shares.size() == B.rows * B.cols,
          "matrix share count");
  if (A.shares.degree != d || B.shares.degree != d) {
    throw Error(Errc::kDegreeMismatch, "pmat_mult_trunc inputs must have degree d");
  }
  const std::size_t entries = A.rows * B.cols;
  auto masks = p.store.take_pmat(entries);
  std::vector<FieldElement> masked(entries);
  for (std::size_t r = 0; r < A.rows; ++r) {
    for (std::size_t c = 0; c < B.cols; ++c) {
      FieldElement z = masks[r * B.cols + c].r;
      for (std::size_t g = 0; g < A.cols; ++g) {
        z = f.mul_add(z, A.shares.values[r * A.cols + g], B.shares.values[g * B.cols + c]);
      }
      masked[r * B.cols + c] = z;
    }
  }
  const int shift = p.ell_x;
  auto fresh = p1_relay(p, masked, cfg.packed_plan(2 * d), entries, cfg.packed_plan(d),
                        [shift](std::vector<std::vector<FieldElement>> opened) {
                          for (auto& v : opened) {
                            for (auto& s : v) s = {s.value >> shift};
                          }
                          return opened;
                        });
  PackedMatrix out{PackedMatrix::Axis::kSlotParallel, A.rows, B.cols, cfg.k(),
                   ShareVec{std::vector<FieldElement>(entries), d}};
  for (std::size_t e = 0; e < entries; ++e) out.shares.values[e] = f.sub(fresh[e], masks[e].r_prime);
  return out;
}

std::vector<ShareVec> pack_trans(Party& p, const ShareVec& x) {
  const auto& cfg = p.cfg;
  const Field& f = p.field();
  const int k = cfg.k(), d = cfg.d();
  if (x.degree > d) throw Error(Errc::kDegreeMismatch, "pack_trans input degree above d");
  auto masks = p.store.take_pack_trans(x.size());
  std::vector<FieldElement> masked(x.size());
  for (std::size_t b = 0; b < x.size(); ++b) masked[b] = f.add(x.values[b], masks[b].r);
  auto fresh = p1_relay(p, masked, cfg.packed_plan(d), x.size() * k, cfg.packed_plan(d),
                        [k](std::vector<std::vector<FieldElement>> opened) {
                          std::vector<std::vector<FieldElement>> out;
                          for (const auto& z : opened) {
                            for (int i = 0; i < k; ++i) out.emplace_back(k, z[i]);
                          }
                          return out;
                        });
  std::vector<ShareVec> out(k, ShareVec{std::vector<FieldElement>(x.size()), d});
  for (std::size_t b = 0; b < x.size(); ++b) {
    for (int i = 0; i < k; ++i) out[i].values[b] = f.sub(fresh[b * k + i], masks[b].r_const[i]);
  }
  return out;
}

Manifest budget_pmult_dn(const PackingConfig& cfg, std::size_t shares) {
  Manifest m;
  m.add_dt(dn_key(cfg), shares);
  return m;
}

Manifest budget_vec_mat(const PackingConfig& cfg, std::size_t cols, bool trunc) {
  Manifest m;
  (trunc ? m.trunc_tuples : m.vm_tuples) = padded(cols, cfg.k()) / cfg.k();
  return m;
}

Manifest budget_pmat(const PackingConfig&, std::size_t entries) {
  Manifest m;
  m.pmat_masks = entries;
  return m;
}

Manifest budget_pack_trans(const PackingConfig&, std::size_t shares) {
  Manifest m;
  m.pack_trans_masks = shares;
  return m;
}

ProtocolCost cost_pmult_dn(const PackingConfig& cfg, std::size_t shares) {
  return {1, 2ULL * (cfg.n() - 1) * shares};
}

ProtocolCost cost_vec_mat(const PackingConfig& cfg, std::size_t cols) {
  const std::uint64_t vp = padded(cols, cfg.k());
  return {1, (cfg.n() - 1) * (vp + vp / cfg.k())};
}

ProtocolCost cost_pmat(const PackingConfig& cfg, std::size_t entries) {
  return {1, 2ULL * (cfg.n() - 1) * entries};
}

ProtocolCost cost_pack_trans(const PackingConfig& cfg, std::size_t shares) {
  return {1, static_cast<std::uint64_t>(cfg.n() - 1) * shares * (1 + cfg.k())};
}

}  // namespace pssnn
