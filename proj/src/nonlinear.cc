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

#include "pssnn/nonlinear.h"

#include <algorithm>

#include "pssnn/error.h"
#include "pssnn/linear.h"

namespace pssnn {

namespace {

DtKey xor_key(const PackingConfig& cfg, int degree_a) {
  return {kPackedPositions, degree_a + cfg.d(), cfg.d()};
}

// Pairs (i, j) multiplied at each level: x[i] *= x[j].
std::vector<std::vector<std::pair<std::size_t, std::size_t>>> prefix_levels(std::size_t len) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> levels;
  for (std::size_t s = 1; s < len; s <<= 1) {
    std::vector<std::pair<std::size_t, std::size_t>> lv;
    for (std::size_t i = 0; i < len; ++i) {
      if (i & s) lv.emplace_back(i, (i & ~(2 * s - 1)) + s - 1);
    }
    levels.push_back(std::move(lv));
  }
  return levels;
}

ShareVec concat(const std::vector<ShareVec>& parts, int degree) {
  ShareVec out{{}, degree};
  for (const auto& p : parts) out.values.insert(out.values.end(), p.values.begin(), p.values.end());
  return out;
}

std::vector<ShareVec> split(const ShareVec& all, std::size_t parts) {
  const std::size_t each = parts ? all.size() / parts : 0;
  std::vector<ShareVec> out;
  for (std::size_t i = 0; i < parts; ++i) {
    out.push_back(ShareVec{std::vector<FieldElement>(all.values.begin() + i * each,
                                                     all.values.begin() + (i + 1) * each),
                           all.degree});
  }
  return out;
}

ShareVec one_minus(const Field& f, const ShareVec& x) { return constant_minus(f, f.one(), x); }

}  // namespace

int ceil_log2(std::size_t x) {
  int r = 0;
  while ((std::size_t{1} << r) < x) ++r;
  return r;
}

std::size_t prefix_mults(std::size_t len) {
  std::size_t m = 0;
  for (const auto& lv : prefix_levels(len)) m += lv.size();
  return m;
}

ShareVec public_shares(const PackingConfig& cfg, PartyId id, std::span<const FieldElement> values) {
  const std::size_t k = cfg.k();
  if (values.size() % k) throw Error(Errc::kShapeMismatch, "public values must fill whole shares");
  ShareVec out{std::vector<FieldElement>(values.size() / k), cfg.k() - 1};
  for (std::size_t b = 0; b < out.size(); ++b) {
    out.values[b] = cfg.public_vector_share(id, values.subspan(b * k, k));
  }
  return out;
}

ShareVec xor_shares(Party& p, const ShareVec& a, const ShareVec& b) {
  const Field& f = p.field();
  if (a.size() != b.size()) throw Error(Errc::kShapeMismatch, "xor operand sizes");
  if (a.degree > p.cfg.d() || b.degree != p.cfg.d()) {
    throw Error(Errc::kDegreeMismatch, "xor expects deg(a) <= d and deg(b) = d");
  }
  const FieldElement two = f.from_u64(2);
  ShareVec x{std::vector<FieldElement>(a.size()), a.degree + b.degree};
  for (std::size_t i = 0; i < a.size(); ++i) {
    FieldElement ab = f.mul(a.values[i], b.values[i]);
    x.values[i] = f.sub(f.add(a.values[i], b.values[i]), f.mul(two, ab));
  }
  return degree_trans(p, x, xor_key(p.cfg, a.degree));
}

std::vector<ShareVec> pre_mult(Party& p, const std::vector<ShareVec>& inputs) {
  std::vector<ShareVec> x = inputs;
  for (const auto& lv : prefix_levels(inputs.size())) {
    std::vector<ShareVec> lhs, rhs;
    for (auto [i, j] : lv) {
      lhs.push_back(x[i]);
      rhs.push_back(x[j]);
    }
    auto prod = split(pmult_dn(p, concat(lhs, p.cfg.d()), concat(rhs, p.cfg.d())), lv.size());
    for (std::size_t m = 0; m < lv.size(); ++m) x[lv[m].first] = std::move(prod[m]);
  }
  return x;
}

std::vector<ShareVec> pre_or(Party& p, const std::vector<ShareVec>& inputs) {
  const Field& f = p.field();
  std::vector<ShareVec> neg;
  for (const auto& a : inputs) neg.push_back(one_minus(f, a));
  auto c = pre_mult(p, neg);
  for (auto& v : c) v = one_minus(f, v);
  return c;
}

ShareVec bitwise_lt(Party& p, std::span<const FieldElement> a_pub,
                    const std::vector<ShareVec>& b_bits) {
  const auto& cfg = p.cfg;
  const Field& f = p.field();
  const std::size_t ell = b_bits.size();
  const std::size_t k = cfg.k();
  const std::size_t B = a_pub.size() / k;
  if (a_pub.size() % k || ell == 0) throw Error(Errc::kShapeMismatch, "bitwise_lt shapes");
  for (const auto& b : b_bits) {
    if (b.size() != B) throw Error(Errc::kShapeMismatch, "bit sharing count");
  }

  // Complemented public bits, one degree-(k-1) sharing per bit and share.
  std::vector<ShareVec> abar(ell);
  std::vector<FieldElement> vals(B * k);
  for (std::size_t i = 0; i < ell; ++i) {
    for (std::size_t s = 0; s < B * k; ++s) vals[s] = {1 - ((a_pub[s].value >> i) & 1)};
    abar[i] = public_shares(cfg, p.id(), vals);
  }
  std::vector<ShareVec> bbar;
  for (const auto& b : b_bits) bbar.push_back(one_minus(f, b));

  auto c = split(xor_shares(p, concat(abar, k - 1), concat(bbar, cfg.d())), ell);
  // Most significant bit first.
  std::vector<ShareVec> msb_first(c.rbegin(), c.rend());
  auto fr = pre_or(p, msb_first);
  std::reverse(fr.begin(), fr.end());

  ShareVec acc{std::vector<FieldElement>(B, f.zero()), cfg.d() + static_cast<int>(k) - 1};
  for (std::size_t i = 0; i < ell; ++i) {
    for (std::size_t b = 0; b < B; ++b) {
      FieldElement h = i + 1 < ell ? f.sub(fr[i].values[b], fr[i + 1].values[b]) : fr[i].values[b];
      acc.values[b] = f.mul_add(acc.values[b], abar[i].values[b], h);
    }
  }
  return degree_trans(p, acc, xor_key(cfg, k - 1));
}

ShareVec drelu(Party& p, const ShareVec& a) {
  const auto& cfg = p.cfg;
  const Field& f = p.field();
  const std::size_t B = a.size();
  const int ell = p.ell();
  const std::size_t k = cfg.k();
  if (a.degree != cfg.d()) throw Error(Errc::kDegreeMismatch, "drelu input must have degree d");

  auto raw = p.store.take_bits(B * ell);
  std::vector<ShareVec> r_bits(ell, ShareVec{std::vector<FieldElement>(B), cfg.d()});
  ShareVec y{std::vector<FieldElement>(B, f.zero()), cfg.d()};
  const FieldElement two = f.from_u64(2);
  for (std::size_t b = 0; b < B; ++b) {
    FieldElement r = f.zero();
    for (int i = ell - 1; i >= 0; --i) {
      r_bits[i].values[b] = raw[b * ell + i];
      r = f.mul_add(r_bits[i].values[b], r, two);
    }
    y.values[b] = f.mul_add(r, two, a.values[b]);
  }
  auto y_pub = open_to_all(p.comm, cfg, y);

  std::vector<FieldElement> y0(B * k);
  for (std::size_t s = 0; s < B * k; ++s) y0[s] = {y_pub[s].value & 1};
  ShareVec bsh = xor_shares(p, public_shares(cfg, p.id(), y0), r_bits[0]);
  ShareVec c = bitwise_lt(p, y_pub, r_bits);
  return one_minus(f, xor_shares(p, bsh, c));
}

ShareVec relu(Party& p, const ShareVec& a) { return pmult_dn(p, a, drelu(p, a)); }

ShareVec maxpool(Party& p, const std::vector<ShareVec>& inputs) {
  const auto& cfg = p.cfg;
  const Field& f = p.field();
  if (inputs.empty()) throw Error(Errc::kShapeMismatch, "maxpool needs at least one input");
  const std::size_t B = inputs[0].size();
  std::vector<ShareVec> level = inputs;
  const std::size_t width = std::size_t{1} << ceil_log2(inputs.size());
  if (level.size() < width) {
    const FieldElement lowest = f.from_int(-(std::int64_t{1} << (p.ell() - 2)) + 1);
    std::vector<FieldElement> pad(B * cfg.k(), lowest);
    ShareVec c = public_shares(cfg, p.id(), pad);
    c.degree = cfg.d();
    level.resize(width, c);
  }
  while (level.size() > 1) {
    const std::size_t half = level.size() / 2;
    std::vector<ShareVec> diffs, rhs;
    for (std::size_t i = 0; i < half; ++i) {
      diffs.push_back(sub(f, level[2 * i], level[2 * i + 1]));
      rhs.push_back(level[2 * i + 1]);
    }
    auto r = split(relu(p, concat(diffs, cfg.d())), half);
    std::vector<ShareVec> next;
    for (std::size_t i = 0; i < half; ++i) next.push_back(add(f, r[i], rhs[i]));
    level = std::move(next);
  }
  return level[0];
}

Manifest budget_xor(const PackingConfig& cfg, int degree_a, std::size_t shares) {
  Manifest m;
  m.add_dt(xor_key(cfg, degree_a), shares);
  return m;
}

Manifest budget_pre_mult(const PackingConfig& cfg, std::size_t len, std::size_t shares) {
  return budget_pmult_dn(cfg, prefix_mults(len) * shares);
}

Manifest budget_bitwise_lt(const PackingConfig& cfg, std::size_t shares) {
  const std::size_t ell = cfg.field().ell();
  Manifest m = budget_xor(cfg, cfg.k() - 1, shares * (ell + 1));
  m += budget_pre_mult(cfg, ell, shares);
  return m;
}

Manifest budget_drelu(const PackingConfig& cfg, std::size_t shares) {
  Manifest m = budget_bitwise_lt(cfg, shares);
  m.random_bits += shares * cfg.field().ell();
  m += budget_xor(cfg, cfg.k() - 1, shares);
  m += budget_xor(cfg, cfg.d(), shares);
  return m;
}

Manifest budget_relu(const PackingConfig& cfg, std::size_t shares) {
  Manifest m = budget_drelu(cfg, shares);
  m += budget_pmult_dn(cfg, shares);
  return m;
}

Manifest budget_maxpool(const PackingConfig& cfg, std::size_t m, std::size_t shares) {
  const std::size_t width = std::size_t{1} << ceil_log2(m);
  return budget_relu(cfg, shares).scaled(width - 1);
}

ProtocolCost cost_xor(const PackingConfig& cfg, std::size_t shares) {
  return {1, 2ULL * (cfg.n() - 1) * shares};
}

ProtocolCost cost_pre_mult(const PackingConfig& cfg, std::size_t len, std::size_t shares) {
  return {static_cast<std::uint64_t>(ceil_log2(len)),
          2ULL * (cfg.n() - 1) * shares * prefix_mults(len)};
}

ProtocolCost cost_bitwise_lt(const PackingConfig& cfg, std::size_t shares) {
  const std::size_t ell = cfg.field().ell();
  return {static_cast<std::uint64_t>(ceil_log2(ell)) + 2,
          2ULL * (cfg.n() - 1) * shares * (ell + prefix_mults(ell) + 1)};
}

ProtocolCost cost_drelu(const PackingConfig& cfg, std::size_t shares) {
  const std::uint64_t n1 = cfg.n() - 1;
  ProtocolCost c = cost_bitwise_lt(cfg, shares);
  c.rounds += 3;
  c.elements += n1 * shares * (1 + cfg.k()) + 4 * n1 * shares;
  return c;
}

ProtocolCost cost_relu(const PackingConfig& cfg, std::size_t shares) {
  ProtocolCost c = cost_drelu(cfg, shares);
  c.rounds += 1;
  c.elements += 2ULL * (cfg.n() - 1) * shares;
  return c;
}

ProtocolCost cost_maxpool(const PackingConfig& cfg, std::size_t m, std::size_t shares) {
  const int levels = ceil_log2(m);
  const std::size_t width = std::size_t{1} << levels;
  ProtocolCost per = cost_relu(cfg, shares);
  return {per.rounds * levels, per.elements * (width - 1)};
}

}  // namespace pssnn
