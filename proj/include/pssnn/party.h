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

#include <functional>
#include <span>
#include <vector>

#include "pssnn/prg.h"
#include "pssnn/pss.h"
#include "pssnn/store.h"
#include "pssnn/transport.h"

namespace pssnn {

// Everything one party needs to run protocols: public parameters, its
// messaging endpoint, its offline material and its private randomness.
struct Party {
  const PackingConfig& cfg;
  int ell_x;
  Comm& comm;
  OfflineStore& store;
  Prg prg;

  Party(const PackingConfig& c, int fixed_bits, Comm& cm, OfflineStore& st, std::uint64_t seed)
      : cfg(c), ell_x(fixed_bits), comm(cm), store(st), prg(seed, "party", static_cast<std::uint64_t>(cm.self())) {}

  PartyId id() const { return PartyId{comm.self()}; }
  const Field& field() const { return cfg.field(); }
  int ell() const { return cfg.field().ell(); }
};

// Rounds and total elements sent by all parties for one protocol call.
struct ProtocolCost {
  std::uint64_t rounds = 0;
  std::uint64_t elements = 0;
};

// Masked resharing through P1. Every party sends its shares of 'masked'
// (sharings under from_plan) to P1. P1 reconstructs the secrets of each
// sharing, maps the list of secret vectors through 'transform' into
// out_count secret vectors, deals them under to_plan with fresh randomness
// and scatters. Returns this party's out_count output shares. One round.
using RelayTransform =
    std::function<std::vector<std::vector<FieldElement>>(std::vector<std::vector<FieldElement>>)>;
std::vector<FieldElement> p1_relay(Party& p, std::span<const FieldElement> masked,
                                   const SharingPlan& from_plan, std::size_t out_count,
                                   const SharingPlan& to_plan, const RelayTransform& transform);
// Variant with a plan per input sharing and per output sharing.
std::vector<FieldElement> p1_relay_mixed(Party& p, std::span<const FieldElement> masked,
                                         const std::vector<const SharingPlan*>& from_plans,
                                         const std::vector<const SharingPlan*>& to_plans,
                                         const RelayTransform& transform);

// Degree transformation with explicit mask pairs: x' = x + r_from is opened to
// P1 and reshared at 'key.to'; the output is x'_to - r_to.
ShareVec degree_trans_with(Party& p, const ShareVec& x, std::span<const DtPair> pairs,
                           const DtKey& key);

// Several degree transformations with different keys in one round.
std::vector<ShareVec> degree_trans_many(Party& p, const std::vector<ShareVec>& xs,
                                        const std::vector<std::vector<DtPair>>& pairs,
                                        const std::vector<DtKey>& keys);

// Same, taking the pairs from the store.
ShareVec degree_trans(Party& p, const ShareVec& x, const DtKey& key);

// Plan for the sharing family named by a DtKey at the given degree.
const SharingPlan& plan_for(const PackingConfig& cfg, std::uint64_t position, int degree);

}  // namespace pssnn
