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
#include <mutex>
#include <vector>

#include "pssnn/party.h"
#include "pssnn/pss.h"
#include "pssnn/transport.h"

namespace harness {

using namespace pssnn;

struct RunCost {
  CostSummary offline;
  CostSummary online;
};

// Runs body on every party over the in-process network. stores may be empty
// (fresh stores) or hold one store per party; they are updated in place.
template <typename T>
std::vector<T> run(const PackingConfig& cfg, int ell_x, std::vector<OfflineStore>& stores,
                   const std::function<T(Party&)>& body, RunCost* cost = nullptr,
                   std::uint64_t seed = 7) {
  const int n = cfg.n();
  if (stores.empty()) stores.resize(n);
  std::vector<T> out(n);
  std::vector<ChannelStats> stats;
  run_parties(n, {}, [&](Comm& c) {
    Party p(cfg, ell_x, c, stores[c.self() - 1], seed);
    out[c.self() - 1] = body(p);
  }, &stats);
  if (cost) {
    std::vector<StatsPoint> before(n), after;
    for (const auto& s : stats) after.push_back(snapshot(s));
    cost->offline = summarize(before, after, Phase::kOffline);
    cost->online = summarize(before, after, Phase::kOnline);
  }
  return out;
}

template <typename T>
std::vector<T> run(const PackingConfig& cfg, int ell_x, const std::function<T(Party&)>& body,
                   RunCost* cost = nullptr) {
  std::vector<OfflineStore> stores;
  return run<T>(cfg, ell_x, stores, body, cost);
}

// Column b of a per-party share matrix.
inline std::vector<FieldElement> column(const std::vector<std::vector<FieldElement>>& shares,
                                        std::size_t b) {
  std::vector<FieldElement> col;
  for (const auto& s : shares) col.push_back(s.at(b));
  return col;
}

// Packed secrets of sharing b at the given degree, verified on all shares.
inline std::vector<FieldElement> open_packed(const PackingConfig& cfg,
                                             const std::vector<std::vector<FieldElement>>& shares,
                                             std::size_t b, int degree) {
  return cfg.reconstruct(cfg.packed_plan(degree), column(shares, b));
}

// All packed sharings, slot-major (index b * k + i).
inline std::vector<FieldElement> open_all(const PackingConfig& cfg,
                                          const std::vector<std::vector<FieldElement>>& shares,
                                          int degree) {
  std::vector<FieldElement> out;
  for (std::size_t b = 0; b < shares.at(0).size(); ++b) {
    auto s = open_packed(cfg, shares, b, degree);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

inline FieldElement open_shamir(const PackingConfig& cfg,
                                const std::vector<std::vector<FieldElement>>& shares,
                                std::size_t b, FieldElement position, int degree) {
  return cfg.reconstruct(cfg.single_plan(position, degree), column(shares, b)).at(0);
}

}  // namespace harness
