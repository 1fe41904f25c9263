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
#include <functional>
#include <vector>

#include "pssnn/party.h"
#include "pssnn/store.h"

namespace pssnn {

enum class OfflineMode { kDealer, kInteractive };

// One family of sharings produced by the randomness extraction: a packed
// family (position == kPackedPositions) or a Shamir family at one point.
struct ExtractComponent {
  std::uint64_t position = kPackedPositions;
  int degree = 0;
};

// Each party contributes 'passes' tuples of sharings, one per component,
// with secrets drawn by 'secrets' (one vector per component: k entries for
// packed components, one for Shamir ones). Secrets of one tuple may be
// correlated across components (e.g. the same vector at two degrees).
struct ExtractJob {
  std::vector<ExtractComponent> components;
  std::size_t passes = 0;
  std::function<std::vector<std::vector<FieldElement>>(Prg&)> secrets;
};

// Van(n, n-t): entry [i][m] = (i+1)^m.
std::vector<std::vector<FieldElement>> vandermonde(const Field& f, int n, int cols);

// Runs all jobs in one exchange round. For every job and component returns
// passes * (n - t) output shares, pass-major: output m of pass q is
// sum_i (i+1)^m * contribution_i.
std::vector<std::vector<std::vector<FieldElement>>> extract_random(
    Party& p, const std::vector<ExtractJob>& jobs);

// Number of extraction passes needed for 'count' outputs.
std::size_t passes_for(const PackingConfig& cfg, std::size_t count);

ShareVec gen_random(Party& p, std::size_t count, int degree);
// Dealer mode takes pre-dealt zero sharings from the store (no communication;
// Errc::kSetupMissing if absent). Interactive mode runs an extraction pass
// with zero secrets (one round).
ShareVec gen_zero_share(Party& p, std::size_t count, int degree, OfflineMode mode);
std::vector<DtPair> gen_dt_pairs(Party& p, const DtKey& key, std::size_t count);
std::vector<VmTuple> gen_vm_tuples(Party& p, std::size_t count);
// Packed sharings of k random bits each. Four rounds.
ShareVec gen_random_bits(Party& p, std::size_t count);
std::vector<VmTuple> gen_trunc_triples(Party& p, std::size_t count);
std::vector<PMatMask> gen_pmat_masks(Party& p, std::size_t count);
std::vector<PackTransMask> gen_pack_trans_masks(Party& p, std::size_t count);

// Fills p.store with everything in the manifest, in the offline phase.
void generate_interactive(Party& p, const Manifest& m);

// Central generation of the manifest for all n parties (index 0 is P1).
std::vector<OfflineStore> dealer_generate(const PackingConfig& cfg, int ell_x, const Manifest& m,
                                          std::uint64_t seed);

// Total offline elements sent by all parties for one generator call,
// derived from the implementation above (no zero-square retries).
ProtocolCost cost_random_bits(const PackingConfig& cfg, std::size_t count);
ProtocolCost cost_trunc_triples(const PackingConfig& cfg, std::size_t count);
ProtocolCost cost_vm_tuples(const PackingConfig& cfg, std::size_t count);
ProtocolCost cost_pmat_masks(const PackingConfig& cfg, std::size_t count);
ProtocolCost cost_pack_trans_masks(const PackingConfig& cfg, std::size_t count);

}  // namespace pssnn
