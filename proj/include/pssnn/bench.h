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
#include <optional>
#include <string>
#include <vector>

#include "pssnn/pipeline.h"

// Drives single protocols over random inputs for benchmarks and acceptance
// checks, and holds their implementation-derived closed forms.
namespace pssnn::bench {

struct ProtocolCase {
  std::string protocol;
  std::size_t batch = 1;   // packed sharings per operand (elementwise protocols, generators)
  std::size_t rows = 0;    // vec_mat: vector length; pmat: rows of A
  std::size_t inner = 0;   // pmat: shared dimension
  std::size_t cols = 0;    // vec_mat / pmat: output columns
  std::size_t width = 0;   // pre_mult / pre_or inputs, maxpool window size
  int value_bits = 0;      // magnitude of signed inputs for truncating and comparison protocols
};

// Online protocols: pmult_dn, vec_mat_mult, vec_mat_mult_trunc,
// pmat_mult_trunc, pack_trans, xor, pre_mult, pre_or, bitwise_lt, drelu,
// relu, maxpool. Offline generators: random_bits, trunc_triples, vm_tuples,
// pmat_masks, pack_trans_masks.
const std::vector<std::string>& protocols();
bool is_generator(const std::string& protocol);

struct ProtocolTrial {
  // Plaintext operands and opened outputs, slot-major (element b*k + i is
  // slot i of sharing b). bitwise_lt: inputs are a (public) then the bits
  // of b, least significant first.
  std::vector<std::vector<FieldElement>> inputs;
  std::vector<std::vector<FieldElement>> outputs;
  CostSummary online;
  CostSummary offline;
  double wall_ms = 0;
  bool stores_drained = false;
};

ProtocolTrial run_protocol(const ProtocolCase& c, const PackingConfig& cfg, int ell_x,
                           const RunOptions& opt);

// Closed forms: online rounds/elements of an online protocol (zero for
// generators); offline cost of a generator run interactively, nullopt when
// the offline material of an online protocol is produced in one batch.
ProtocolCost predicted_online(const ProtocolCase& c, const PackingConfig& cfg);
std::optional<ProtocolCost> predicted_offline(const ProtocolCase& c, const PackingConfig& cfg,
                                              OfflineMode mode);

// Default case for a protocol at the given scale.
ProtocolCase default_case(const std::string& protocol, const PackingConfig& cfg, std::size_t scale);

}  // namespace pssnn::bench
