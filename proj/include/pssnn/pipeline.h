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
#include <string>
#include <vector>

#include "pssnn/model.h"
#include "pssnn/nn.h"
#include "pssnn/offline.h"
#include "pssnn/transport.h"

namespace pssnn {

struct RunOptions {
  OfflineMode offline = OfflineMode::kDealer;
  std::uint64_t seed = 1;
  NetworkConfig net;
};

struct InferenceRun {
  std::vector<FieldElement> output_fixed;  // channel-major
  std::vector<double> output;
  std::vector<SharedTensor> party_outputs;
  std::vector<ChannelStats> stats;
  std::vector<std::string> digests;
  Manifest budget;
  bool stores_drained = false;  // every party consumed exactly the budget
};

// Shares input and model, prepares offline material and runs all n parties
// over the configured network (threads in this process).
InferenceRun run_inference(const Model& m, const PackingConfig& cfg, int ell_x,
                           const std::vector<double>& input, const RunOptions& opt);

// Deterministic in seed: the client, owner and dealer draw from separate
// streams so each can be produced independently.
std::vector<SharedTensor> client_shares(const Model& m, const PackingConfig& cfg, int ell_x,
                                        const std::vector<double>& input, std::uint64_t seed);
std::vector<ModelShares> owner_shares(const Model& m, const PackingConfig& cfg, int ell_x,
                                      std::uint64_t seed);
std::vector<OfflineStore> dealer_shares(const Model& m, const PackingConfig& cfg, int ell_x,
                                        std::uint64_t seed);

}  // namespace pssnn
