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

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "pssnn/field.h"
#include "pssnn/prg.h"

namespace pssnn {

// Party index in {1..n}; doubles as the party's evaluation point.
struct PartyId {
  int index = 1;

  friend constexpr auto operator<=>(PartyId, PartyId) = default;
};

inline constexpr PartyId kP1{1};

// One party's evaluation of a degree-d polynomial packing k secrets.
struct PackedShare {
  PartyId owner;
  FieldElement value;
  int degree = 0;
};

// One party's share of a single secret stored at a public point.
struct ShamirShareAt {
  PartyId owner;
  FieldElement value;
  int degree = 0;
  FieldElement position;
};

// Lagrange data for dealing and reconstructing sharings whose secrets sit at
// a fixed list of public points. Dealing samples the shares of parties
// 1..free_parties uniformly and interpolates the rest; reconstruction uses
// parties 1..degree+1 and checks the remaining ones.
struct SharingPlan {
  int degree = 0;
  std::vector<FieldElement> positions;
  int free_parties = 0;
  // Row r gives party (free_parties + 1 + r) as a combination of
  // [secrets..., free shares...].
  std::vector<std::vector<FieldElement>> deal_rows;
  // Row j gives secret j from the shares of parties 1..degree+1.
  std::vector<std::vector<FieldElement>> recon_rows;
  // Row r predicts party (degree + 2 + r) from parties 1..degree+1.
  std::vector<std::vector<FieldElement>> check_rows;
};

// Public parameters of the packed scheme: n = 2d + 1 parties, k secrets per
// share, corruption bound t = d - k + 1. Secret positions are s_i = p - i,
// i.e. 0, p-1, ..., p-k+1; the default ShConvert target is p - k.
class PackingConfig {
 public:
  PackingConfig(Field field, int n, int k);

  const Field& field() const { return field_; }
  int n() const { return n_; }
  int d() const { return d_; }
  int k() const { return k_; }
  int t() const { return t_; }

  FieldElement party_point(PartyId id) const { return {static_cast<std::uint64_t>(id.index)}; }
  const std::vector<FieldElement>& secret_positions() const { return positions_; }
  FieldElement secret_position(int i) const { return positions_.at(i); }
  FieldElement default_convert_target() const { return default_target_; }

  // Plan for the packed positions s_0..s_{k-1} at the given degree.
  const SharingPlan& packed_plan(int degree) const;
  // Plan for a single secret stored at 'position'.
  const SharingPlan& single_plan(FieldElement position, int degree) const;

  // Shares for all n parties (index 0 is P1) of the given secrets.
  std::vector<FieldElement> deal(const SharingPlan& plan,
                                 std::span<const FieldElement> secrets, Prg& prg) const;
  // Secrets from the shares of parties 1..n (index 0 is P1). Only the first
  // degree+1 are used for interpolation; when verify is set, every further
  // share present must agree or Errc::kInconsistentDegree is thrown.
  std::vector<FieldElement> reconstruct(const SharingPlan& plan,
                                        std::span<const FieldElement> shares,
                                        bool verify = true) const;

  // Evaluation at party j of the degree-(k-1) polynomial through (s_i, c_i).
  FieldElement public_vector_share(PartyId party, std::span<const FieldElement> c) const;
  // Value of [[E_i]]_{k-1} held by the party.
  FieldElement unit_vector_share(PartyId party, int i) const {
    return unit_rows_[party.index - 1][i];
  }
  // prod_{j != i} (a - j) / (b - j) for party i.
  FieldElement convert_factor(PartyId party, FieldElement from, FieldElement to) const;

 private:
  Field field_;
  int n_, d_, k_, t_;
  std::vector<FieldElement> positions_;
  FieldElement default_target_;
  std::vector<SharingPlan> packed_plans_;  // indexed by degree
  std::vector<std::vector<FieldElement>> unit_rows_;

  mutable std::mutex mu_;
  mutable std::map<std::pair<std::uint64_t, int>, std::unique_ptr<SharingPlan>> single_plans_;
};

// Lagrange basis values L_j(target) over the given distinct nodes.
std::vector<FieldElement> lagrange_at(const Field& field, std::span<const FieldElement> nodes,
                                      FieldElement target);

// ---- Share-level API over explicit (owner, value) records -----------------

std::vector<PackedShare> pss_share(const PackingConfig& cfg,
                                   std::span<const FieldElement> secrets, int degree,
                                   Prg& prg);

// Interpolates from any subset of at least degree+1 distinct owners. Extra
// shares are checked for consistency.
std::vector<FieldElement> pss_reconstruct(const PackingConfig& cfg,
                                          std::span<const PackedShare> shares, int degree);

// sum_i coeffs_i * shares_i + offset. All shares must share owner and degree.
PackedShare local_linear(const PackingConfig& cfg, std::span<const PackedShare> shares,
                         std::span<const FieldElement> coeffs, FieldElement offset);

// Coordinate-wise product with a public vector; degree grows by k-1.
PackedShare mul_public_vec(const PackingConfig& cfg, const PackedShare& share,
                           std::span<const FieldElement> public_vec);

// sum_i [[E_i]]_{k-1} * [x_i|s_i]_t, giving a degree t+k-1 packed share.
PackedShare combine_shamir_to_packed(const PackingConfig& cfg,
                                     std::span<const ShamirShareAt> shares);

// sum_i [[E_i]]_{k-1} * [[x^i]]_d, the diagonal (x^0_0, x^1_1, ...).
PackedShare select_from_packed(const PackingConfig& cfg, std::span<const PackedShare> shares);

// Local conversion of slot v of a degree-d packed share into a degree-2d
// Shamir share of the same secret at 'target'.
ShamirShareAt sh_convert_slot(const PackingConfig& cfg, const PackedShare& share, int slot,
                              FieldElement target);
// All k slots to the default target p - k.
std::vector<ShamirShareAt> sh_convert(const PackingConfig& cfg, const PackedShare& share,
                                      std::optional<FieldElement> target = std::nullopt);

// Shamir reconstruction at the share position from >= degree+1 owners.
FieldElement shamir_reconstruct(const PackingConfig& cfg,
                                std::span<const ShamirShareAt> shares);

// ---- Batched per-party shares --------------------------------------------

// One party's shares of a batch of packed sharings of a common degree.
struct ShareVec {
  std::vector<FieldElement> values;
  int degree = 0;

  std::size_t size() const { return values.size(); }
};

ShareVec add(const Field& f, const ShareVec& a, const ShareVec& b);
ShareVec sub(const Field& f, const ShareVec& a, const ShareVec& b);
ShareVec scale(const Field& f, const ShareVec& a, FieldElement c);
// Adds the public constant c to every slot of every sharing.
ShareVec add_constant(const Field& f, const ShareVec& a, FieldElement c);
// c - a, slot-wise.
ShareVec constant_minus(const Field& f, FieldElement c, const ShareVec& a);
// Local product; the result degree is the sum and must stay below n.
ShareVec mul_local(const PackingConfig& cfg, const ShareVec& a, const ShareVec& b);

}  // namespace pssnn
