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

#include "pssnn/party.h"

#include "pssnn/error.h"

namespace pssnn {

const SharingPlan& plan_for(const PackingConfig& cfg, std::uint64_t position, int degree) {
  if (position == kPackedPositions) return cfg.packed_plan(degree);
  return cfg.single_plan({position}, degree);
}

std::vector<FieldElement> p1_relay_mixed(Party& p, std::span<const FieldElement> masked,
                                         const std::vector<const SharingPlan*>& from_plans,
                                         const std::vector<const SharingPlan*>& to_plans,
                                         const RelayTransform& transform) {
  const int n = p.cfg.n();
  const std::size_t out_count = to_plans.size();
  if (masked.empty() && out_count == 0) return {};
  if (from_plans.size() != masked.size()) {
    throw Error(Errc::kShapeMismatch, "one plan per relayed sharing");
  }
  auto all = p.comm.gather_at_p1(masked);
  std::vector<std::vector<FieldElement>> out;
  if (p.comm.is_p1()) {
    std::vector<std::vector<FieldElement>> opened;
    opened.reserve(masked.size());
    std::vector<FieldElement> column(n);
    for (std::size_t b = 0; b < masked.size(); ++b) {
      for (int j = 0; j < n; ++j) column[j] = all[j][b];
      opened.push_back(p.cfg.reconstruct(*from_plans[b], column));
    }
    auto secrets = transform(std::move(opened));
    if (secrets.size() != out_count) {
      throw Error(Errc::kShapeMismatch, "relay produced the wrong number of sharings");
    }
    out.assign(n, std::vector<FieldElement>(out_count));
    for (std::size_t b = 0; b < out_count; ++b) {
      auto shares = p.cfg.deal(*to_plans[b], secrets[b], p.prg);
      for (int j = 0; j < n; ++j) out[j][b] = shares[j];
    }
  }
  return p.comm.scatter_from_p1(out, out_count);
}

std::vector<FieldElement> p1_relay(Party& p, std::span<const FieldElement> masked,
                                   const SharingPlan& from_plan, std::size_t out_count,
                                   const SharingPlan& to_plan, const RelayTransform& transform) {
  std::vector<const SharingPlan*> from(masked.size(), &from_plan);
  std::vector<const SharingPlan*> to(out_count, &to_plan);
  return p1_relay_mixed(p, masked, from, to, transform);
}

ShareVec degree_trans_with(Party& p, const ShareVec& x, std::span<const DtPair> pairs,
                           const DtKey& key) {
  if (pairs.size() != x.size()) throw Error(Errc::kShapeMismatch, "one mask pair per sharing");
  if (x.degree > key.from) {
    throw Error(Errc::kDegreeMismatch, "input degree " + std::to_string(x.degree) +
                                           " above mask degree " + std::to_string(key.from));
  }
  const Field& f = p.field();
  std::vector<FieldElement> masked(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) masked[i] = f.add(x.values[i], pairs[i].from);
  const auto& from = plan_for(p.cfg, key.position, key.from);
  const auto& to = plan_for(p.cfg, key.position, key.to);
  auto fresh = p1_relay(p, masked, from, x.size(), to, [](auto opened) { return opened; });
  ShareVec out{std::vector<FieldElement>(x.size()), key.to};
  for (std::size_t i = 0; i < x.size(); ++i) out.values[i] = f.sub(fresh[i], pairs[i].to);
  return out;
}

std::vector<ShareVec> degree_trans_many(Party& p, const std::vector<ShareVec>& xs,
                                        const std::vector<std::vector<DtPair>>& pairs,
                                        const std::vector<DtKey>& keys) {
  const Field& f = p.field();
  std::vector<FieldElement> masked;
  std::vector<const SharingPlan*> from, to;
  for (std::size_t g = 0; g < xs.size(); ++g) {
    const auto& x = xs[g];
    if (pairs[g].size() != x.size()) throw Error(Errc::kShapeMismatch, "one mask pair per sharing");
    if (x.degree > keys[g].from) throw Error(Errc::kDegreeMismatch, "input degree above mask degree");
    const auto* fp = &plan_for(p.cfg, keys[g].position, keys[g].from);
    const auto* tp = &plan_for(p.cfg, keys[g].position, keys[g].to);
    for (std::size_t i = 0; i < x.size(); ++i) {
      masked.push_back(f.add(x.values[i], pairs[g][i].from));
      from.push_back(fp);
      to.push_back(tp);
    }
  }
  auto fresh = p1_relay_mixed(p, masked, from, to, [](auto opened) { return opened; });
  std::vector<ShareVec> out;
  std::size_t at = 0;
  for (std::size_t g = 0; g < xs.size(); ++g) {
    ShareVec o{std::vector<FieldElement>(xs[g].size()), keys[g].to};
    for (std::size_t i = 0; i < xs[g].size(); ++i, ++at) o.values[i] = f.sub(fresh[at], pairs[g][i].to);
    out.push_back(std::move(o));
  }
  return out;
}

ShareVec degree_trans(Party& p, const ShareVec& x, const DtKey& key) {
  auto pairs = p.store.take_dt(key, x.size());
  return degree_trans_with(p, x, pairs, key);
}

}  // namespace pssnn
