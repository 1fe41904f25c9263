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

#include "pssnn/pipeline.h"

#include <algorithm>

#include "pssnn/error.h"

namespace pssnn {

std::vector<SharedTensor> client_shares(const Model& m, const PackingConfig& cfg, int ell_x,
                                        const std::vector<double>& input, std::uint64_t seed) {
  Prg prg(seed, "client");
  return share_input(cfg, make_plan(m, cfg.k()), FixedPointCodec(cfg.field(), ell_x), input, prg);
}

std::vector<ModelShares> owner_shares(const Model& m, const PackingConfig& cfg, int ell_x,
                                      std::uint64_t seed) {
  Prg prg(seed, "owner");
  return share_model(cfg, make_plan(m, cfg.k()), m, FixedPointCodec(cfg.field(), ell_x), prg);
}

std::vector<OfflineStore> dealer_shares(const Model& m, const PackingConfig& cfg, int ell_x,
                                        std::uint64_t seed) {
  return dealer_generate(cfg, ell_x, randomness_budget(cfg, make_plan(m, cfg.k())), seed);
}

InferenceRun run_inference(const Model& m, const PackingConfig& cfg, int ell_x,
                           const std::vector<double>& input, const RunOptions& opt) {
  const PackingPlan plan = make_plan(m, cfg.k());
  InferenceRun run;
  run.budget = randomness_budget(cfg, plan);
  auto inputs = client_shares(m, cfg, ell_x, input, opt.seed);
  auto models = owner_shares(m, cfg, ell_x, opt.seed);
  std::vector<OfflineStore> stores =
      opt.offline == OfflineMode::kDealer ? dealer_generate(cfg, ell_x, run.budget, opt.seed)
                                          : std::vector<OfflineStore>(cfg.n());
  run.party_outputs.resize(cfg.n());
  std::vector<char> drained(cfg.n(), 0);
  run_parties(cfg.n(), opt.net, [&](Comm& comm) {
    const int j = comm.self() - 1;
    Party p(cfg, ell_x, comm, stores[j], opt.seed);
    if (opt.offline == OfflineMode::kInteractive) generate_interactive(p, run.budget);
    run.party_outputs[j] = infer_secure(p, plan, m, models[j], std::move(inputs[j]));
    drained[j] = stores[j].empty();
  }, &run.stats, &run.digests);
  run.stores_drained = std::all_of(drained.begin(), drained.end(), [](char c) { return c != 0; });
  run.output_fixed = reveal_fixed(cfg, run.party_outputs);
  const FixedPointCodec codec(cfg.field(), ell_x);
  for (auto v : run.output_fixed) run.output.push_back(codec.decode(v));
  return run;
}

}  // namespace pssnn
