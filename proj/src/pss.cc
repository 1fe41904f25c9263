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

#include "pssnn/pss.h"

#include <algorithm>
#include <string>

#include "pssnn/error.h"

namespace pssnn {

std::vector<FieldElement> lagrange_at(const Field& field, std::span<const FieldElement> nodes,
                                      FieldElement target) {
  const std::size_t m = nodes.size();
  std::vector<FieldElement> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    FieldElement num = field.one();
    FieldElement den = field.one();
    for (std::size_t q = 0; q < m; ++q) {
      if (q == j) continue;
      num = field.mul(num, field.sub(target, nodes[q]));
      den = field.mul(den, field.sub(nodes[j], nodes[q]));
    }
    out[j] = field.mul(num, field.inv(den));
  }
  return out;
}

namespace {

SharingPlan build_plan(const Field& field, int n, std::span<const FieldElement> positions,
                       int degree) {
  const int m = static_cast<int>(positions.size());
  if (degree < m - 1 || degree > n - 1) {
    throw Error(Errc::kDegreeOutOfRange,
                "degree " + std::to_string(degree) + " outside [" + std::to_string(m - 1) +
                    ", " + std::to_string(n - 1) + "]");
  }
  SharingPlan plan;
  plan.degree = degree;
  plan.positions.assign(positions.begin(), positions.end());
  plan.free_parties = degree + 1 - m;

  std::vector<FieldElement> known(positions.begin(), positions.end());
  for (int j = 1; j <= plan.free_parties; ++j) known.push_back({static_cast<std::uint64_t>(j)});
  for (int j = plan.free_parties + 1; j <= n; ++j) {
    plan.deal_rows.push_back(lagrange_at(field, known, {static_cast<std::uint64_t>(j)}));
  }

  std::vector<FieldElement> parties;
  for (int j = 1; j <= degree + 1; ++j) parties.push_back({static_cast<std::uint64_t>(j)});
  for (const auto& s : positions) plan.recon_rows.push_back(lagrange_at(field, parties, s));
  for (int j = degree + 2; j <= n; ++j) {
    plan.check_rows.push_back(lagrange_at(field, parties, {static_cast<std::uint64_t>(j)}));
  }
  return plan;
}

FieldElement dot(const Field& field, std::span<const FieldElement> a,
                 std::span<const FieldElement> b) {
  u128 acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += field.mul(a[i], b[i]).value;
  }
  return field.reduce(acc);
}

}  // namespace

PackingConfig::PackingConfig(Field field, int n, int k)
    : field_(field), n_(n), d_((n - 1) / 2), k_(k), t_((n - 1) / 2 - k + 1) {
  if (n < 3 || n % 2 == 0) {
    throw Error(Errc::kInvalidConfig, "n must be odd and >= 3 (n = 2d + 1)");
  }
  if (k < 2 || k > d_) {
    throw Error(Errc::kInvalidConfig, "k must satisfy 2 <= k <= d");
  }
  if (static_cast<std::uint64_t>(n + k + 1) >= field_.modulus()) {
    throw Error(Errc::kInvalidConfig, "field too small for the party count");
  }
  const std::uint64_t p = field_.modulus();
  for (int i = 0; i < k; ++i) positions_.push_back({(p - static_cast<std::uint64_t>(i)) % p});
  default_target_ = {p - static_cast<std::uint64_t>(k)};

  packed_plans_.resize(n);
  for (int deg = k - 1; deg <= n - 1; ++deg) {
    packed_plans_[deg] = build_plan(field_, n, positions_, deg);
  }
  unit_rows_.assign(n, std::vector<FieldElement>(k));
  const SharingPlan& pub = packed_plans_[k - 1];
  for (int j = 1; j <= n; ++j) {
    unit_rows_[j - 1] = pub.deal_rows[j - 1];
  }
}

const SharingPlan& PackingConfig::packed_plan(int degree) const {
  if (degree < k_ - 1 || degree > n_ - 1) {
    throw Error(Errc::kDegreeOutOfRange, "packed degree " + std::to_string(degree));
  }
  return packed_plans_[degree];
}

const SharingPlan& PackingConfig::single_plan(FieldElement position, int degree) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_pair(position.value, degree);
  auto it = single_plans_.find(key);
  if (it != single_plans_.end()) return *it->second;
  FieldElement pos[1] = {position};
  auto plan = std::make_unique<SharingPlan>(build_plan(field_, n_, pos, degree));
  auto& ref = *plan;
  single_plans_.emplace(key, std::move(plan));
  return ref;
}

std::vector<FieldElement> PackingConfig::deal(const SharingPlan& plan,
                                              std::span<const FieldElement> secrets,
                                              Prg& prg) const {
  if (secrets.size() != plan.positions.size()) {
    throw Error(Errc::kShapeMismatch, "secret count does not match plan");
  }
  std::vector<FieldElement> known(secrets.begin(), secrets.end());
  std::vector<FieldElement> shares(n_);
  for (int j = 0; j < plan.free_parties; ++j) {
    shares[j] = prg.next_field(field_);
    known.push_back(shares[j]);
  }
  for (int j = plan.free_parties; j < n_; ++j) {
    shares[j] = dot(field_, plan.deal_rows[j - plan.free_parties], known);
  }
  return shares;
}

std::vector<FieldElement> PackingConfig::reconstruct(const SharingPlan& plan,
                                                     std::span<const FieldElement> shares,
                                                     bool verify) const {
  const std::size_t need = static_cast<std::size_t>(plan.degree) + 1;
  if (shares.size() < need) {
    throw Error(Errc::kTooFewShares, "need " + std::to_string(need) + " shares, got " +
                                         std::to_string(shares.size()));
  }
  auto base = shares.first(need);
  std::vector<FieldElement> out;
  out.reserve(plan.recon_rows.size());
  for (const auto& row : plan.recon_rows) out.push_back(dot(field_, row, base));
  if (verify) {
    for (std::size_t r = 0; r + need < shares.size() && r < plan.check_rows.size(); ++r) {
      if (dot(field_, plan.check_rows[r], base) != shares[need + r]) {
        throw Error(Errc::kInconsistentDegree,
                    "share of party " + std::to_string(need + r + 1) +
                        " is inconsistent with degree " + std::to_string(plan.degree));
      }
    }
  }
  return out;
}

FieldElement PackingConfig::public_vector_share(PartyId party,
                                                std::span<const FieldElement> c) const {
  return dot(field_, unit_rows_[party.index - 1], c);
}

FieldElement PackingConfig::convert_factor(PartyId party, FieldElement from,
                                           FieldElement to) const {
  FieldElement num = field_.one();
  FieldElement den = field_.one();
  for (int j = 1; j <= n_; ++j) {
    if (j == party.index) continue;
    FieldElement pj{static_cast<std::uint64_t>(j)};
    num = field_.mul(num, field_.sub(from, pj));
    den = field_.mul(den, field_.sub(to, pj));
  }
  return field_.mul(num, field_.inv(den));
}

// ---- share-level API -------------------------------------------------------

std::vector<PackedShare> pss_share(const PackingConfig& cfg,
                                   std::span<const FieldElement> secrets, int degree,
                                   Prg& prg) {
  if (secrets.size() != static_cast<std::size_t>(cfg.k())) {
    throw Error(Errc::kShapeMismatch, "expected k secrets");
  }
  auto values = cfg.deal(cfg.packed_plan(degree), secrets, prg);
  std::vector<PackedShare> out;
  out.reserve(values.size());
  for (int j = 0; j < cfg.n(); ++j) out.push_back({PartyId{j + 1}, values[j], degree});
  return out;
}

namespace {

std::vector<FieldElement> owner_nodes(std::span<const PackedShare> shares) {
  std::vector<FieldElement> nodes;
  for (const auto& s : shares) nodes.push_back({static_cast<std::uint64_t>(s.owner.index)});
  return nodes;
}

void check_distinct(std::vector<int> owners) {
  std::sort(owners.begin(), owners.end());
  if (std::adjacent_find(owners.begin(), owners.end()) != owners.end()) {
    throw Error(Errc::kTooFewShares, "duplicate share owners");
  }
}

}  // namespace

std::vector<FieldElement> pss_reconstruct(const PackingConfig& cfg,
                                          std::span<const PackedShare> shares, int degree) {
  const Field& f = cfg.field();
  const std::size_t need = static_cast<std::size_t>(degree) + 1;
  std::vector<int> owners;
  for (const auto& s : shares) owners.push_back(s.owner.index);
  check_distinct(owners);
  if (shares.size() < need) {
    throw Error(Errc::kTooFewShares, "need " + std::to_string(need) + " shares");
  }
  auto base = shares.first(need);
  auto nodes = owner_nodes(base);
  std::vector<FieldElement> values;
  for (const auto& s : base) values.push_back(s.value);
  for (const auto& extra : shares.subspan(need)) {
    auto l = lagrange_at(f, nodes, {static_cast<std::uint64_t>(extra.owner.index)});
    if (dot(f, l, values) != extra.value) {
      throw Error(Errc::kInconsistentDegree, "extra share disagrees with degree " +
                                                 std::to_string(degree));
    }
  }
  std::vector<FieldElement> out;
  for (const auto& pos : cfg.secret_positions()) {
    out.push_back(dot(f, lagrange_at(f, nodes, pos), values));
  }
  return out;
}

PackedShare local_linear(const PackingConfig& cfg, std::span<const PackedShare> shares,
                         std::span<const FieldElement> coeffs, FieldElement offset) {
  if (shares.empty() || shares.size() != coeffs.size()) {
    throw Error(Errc::kShapeMismatch, "coefficient count mismatch");
  }
  const Field& f = cfg.field();
  PackedShare out{shares[0].owner, offset, shares[0].degree};
  for (std::size_t i = 0; i < shares.size(); ++i) {
    if (shares[i].degree != out.degree || shares[i].owner != out.owner) {
      throw Error(Errc::kDegreeMismatch, "linear combination of unlike shares");
    }
    out.value = f.mul_add(out.value, coeffs[i], shares[i].value);
  }
  return out;
}

PackedShare mul_public_vec(const PackingConfig& cfg, const PackedShare& share,
                           std::span<const FieldElement> public_vec) {
  if (share.degree > cfg.n() - cfg.k()) {
    throw Error(Errc::kDegreeOverflow, "degree too large for public-vector product");
  }
  if (public_vec.size() != static_cast<std::size_t>(cfg.k())) {
    throw Error(Errc::kShapeMismatch, "public vector must have k entries");
  }
  FieldElement c = cfg.public_vector_share(share.owner, public_vec);
  return {share.owner, cfg.field().mul(share.value, c), share.degree + cfg.k() - 1};
}

PackedShare combine_shamir_to_packed(const PackingConfig& cfg,
                                     std::span<const ShamirShareAt> shares) {
  if (shares.size() != static_cast<std::size_t>(cfg.k())) {
    throw Error(Errc::kShapeMismatch, "expected k Shamir shares");
  }
  const int degree = shares[0].degree;
  if (degree + cfg.k() - 1 > cfg.n() - 1) {
    throw Error(Errc::kDegreeOverflow, "combined degree exceeds n - 1");
  }
  const Field& f = cfg.field();
  FieldElement acc = f.zero();
  for (int i = 0; i < cfg.k(); ++i) {
    const auto& s = shares[i];
    if (s.position != cfg.secret_position(i)) {
      throw Error(Errc::kPositionMismatch, "share " + std::to_string(i) +
                                               " is not stored at s_" + std::to_string(i));
    }
    if (s.degree != degree || s.owner != shares[0].owner) {
      throw Error(Errc::kDegreeMismatch, "unlike Shamir shares");
    }
    acc = f.mul_add(acc, cfg.unit_vector_share(s.owner, i), s.value);
  }
  return {shares[0].owner, acc, degree + cfg.k() - 1};
}

PackedShare select_from_packed(const PackingConfig& cfg, std::span<const PackedShare> shares) {
  if (shares.size() != static_cast<std::size_t>(cfg.k())) {
    throw Error(Errc::kShapeMismatch, "expected k packed shares");
  }
  const int degree = shares[0].degree;
  if (degree > cfg.n() - cfg.k()) {
    throw Error(Errc::kDegreeOverflow, "degree too large for selection");
  }
  const Field& f = cfg.field();
  FieldElement acc = f.zero();
  for (int i = 0; i < cfg.k(); ++i) {
    if (shares[i].degree != degree || shares[i].owner != shares[0].owner) {
      throw Error(Errc::kDegreeMismatch, "unlike packed shares");
    }
    acc = f.mul_add(acc, cfg.unit_vector_share(shares[i].owner, i), shares[i].value);
  }
  return {shares[0].owner, acc, degree + cfg.k() - 1};
}

ShamirShareAt sh_convert_slot(const PackingConfig& cfg, const PackedShare& share, int slot,
                              FieldElement target) {
  FieldElement factor = cfg.convert_factor(share.owner, cfg.secret_position(slot), target);
  return {share.owner, cfg.field().mul(share.value, factor), 2 * cfg.d(), target};
}

std::vector<ShamirShareAt> sh_convert(const PackingConfig& cfg, const PackedShare& share,
                                      std::optional<FieldElement> target) {
  FieldElement b = target.value_or(cfg.default_convert_target());
  std::vector<ShamirShareAt> out;
  for (int v = 0; v < cfg.k(); ++v) out.push_back(sh_convert_slot(cfg, share, v, b));
  return out;
}

FieldElement shamir_reconstruct(const PackingConfig& cfg,
                                std::span<const ShamirShareAt> shares) {
  if (shares.empty()) throw Error(Errc::kTooFewShares, "no shares");
  const int degree = shares[0].degree;
  const std::size_t need = static_cast<std::size_t>(degree) + 1;
  if (shares.size() < need) throw Error(Errc::kTooFewShares, "not enough Shamir shares");
  std::vector<int> owners;
  for (const auto& s : shares) owners.push_back(s.owner.index);
  check_distinct(owners);
  const Field& f = cfg.field();
  std::vector<FieldElement> nodes, values;
  for (std::size_t i = 0; i < need; ++i) {
    nodes.push_back({static_cast<std::uint64_t>(shares[i].owner.index)});
    values.push_back(shares[i].value);
  }
  for (std::size_t i = need; i < shares.size(); ++i) {
    auto l = lagrange_at(f, nodes, {static_cast<std::uint64_t>(shares[i].owner.index)});
    if (dot(f, l, values) != shares[i].value) {
      throw Error(Errc::kInconsistentDegree, "Shamir share disagrees");
    }
  }
  return dot(f, lagrange_at(f, nodes, shares[0].position), values);
}

// ---- ShareVec --------------------------------------------------------------

namespace {

void require_same(const ShareVec& a, const ShareVec& b) {
  if (a.size() != b.size()) throw Error(Errc::kShapeMismatch, "share batch sizes differ");
}

}  // namespace

ShareVec add(const Field& f, const ShareVec& a, const ShareVec& b) {
  require_same(a, b);
  ShareVec out{std::vector<FieldElement>(a.size()), std::max(a.degree, b.degree)};
  for (std::size_t i = 0; i < a.size(); ++i) out.values[i] = f.add(a.values[i], b.values[i]);
  return out;
}

ShareVec sub(const Field& f, const ShareVec& a, const ShareVec& b) {
  require_same(a, b);
  ShareVec out{std::vector<FieldElement>(a.size()), std::max(a.degree, b.degree)};
  for (std::size_t i = 0; i < a.size(); ++i) out.values[i] = f.sub(a.values[i], b.values[i]);
  return out;
}

ShareVec scale(const Field& f, const ShareVec& a, FieldElement c) {
  ShareVec out{std::vector<FieldElement>(a.size()), a.degree};
  for (std::size_t i = 0; i < a.size(); ++i) out.values[i] = f.mul(a.values[i], c);
  return out;
}

ShareVec add_constant(const Field& f, const ShareVec& a, FieldElement c) {
  ShareVec out{std::vector<FieldElement>(a.size()), a.degree};
  for (std::size_t i = 0; i < a.size(); ++i) out.values[i] = f.add(a.values[i], c);
  return out;
}

ShareVec constant_minus(const Field& f, FieldElement c, const ShareVec& a) {
  ShareVec out{std::vector<FieldElement>(a.size()), a.degree};
  for (std::size_t i = 0; i < a.size(); ++i) out.values[i] = f.sub(c, a.values[i]);
  return out;
}

ShareVec mul_local(const PackingConfig& cfg, const ShareVec& a, const ShareVec& b) {
  require_same(a, b);
  if (a.degree + b.degree > cfg.n() - 1) {
    throw Error(Errc::kDegreeOverflow, "product degree exceeds n - 1");
  }
  const Field& f = cfg.field();
  ShareVec out{std::vector<FieldElement>(a.size()), a.degree + b.degree};
  for (std::size_t i = 0; i < a.size(); ++i) out.values[i] = f.mul(a.values[i], b.values[i]);
  return out;
}

}  // namespace pssnn
