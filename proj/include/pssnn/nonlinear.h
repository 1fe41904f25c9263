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

#include <span>
#include <vector>

#include "pssnn/party.h"
#include "pssnn/store.h"

namespace pssnn {

// Sharings of public per-slot values at degree k-1 (values slot-major,
// index b * k + i).
ShareVec public_shares(const PackingConfig& cfg, PartyId id, std::span<const FieldElement> values);

// Slot-wise XOR of bit sharings: a + b - 2ab, then a degree transformation
// from deg(a) + deg(b) down to d. One round.
ShareVec xor_shares(Party& p, const ShareVec& a, const ShareVec& b);

// Number of multiplications in the prefix tree over len inputs.
std::size_t prefix_mults(std::size_t len);
int ceil_log2(std::size_t x);

// inputs[i] holds B sharings; output j is the slot-wise product of inputs 0..j.
// ceil(log2 len) rounds.
std::vector<ShareVec> pre_mult(Party& p, const std::vector<ShareVec>& inputs);
// Running OR of bit sharings, via 1 - prefix product of complements.
std::vector<ShareVec> pre_or(Party& p, const std::vector<ShareVec>& inputs);

// Slot-wise (a < b) for public a (B * k values below 2^ell, slot-major) and
// b given by ell bit sharings b_bits[i] (B sharings each), bit i of weight 2^i.
ShareVec bitwise_lt(Party& p, std::span<const FieldElement> a_pub,
                    const std::vector<ShareVec>& b_bits);

// 1 where the slot is >= 0 (centered representative), else 0.
ShareVec drelu(Party& p, const ShareVec& a);
ShareVec relu(Party& p, const ShareVec& a);
// Slot-wise maximum over the m inputs (B sharings each). Pads m to a power
// of two with the most negative in-range value.
ShareVec maxpool(Party& p, const std::vector<ShareVec>& inputs);

// Offline material for one call over B sharings.
Manifest budget_xor(const PackingConfig& cfg, int degree_a, std::size_t shares);
Manifest budget_pre_mult(const PackingConfig& cfg, std::size_t len, std::size_t shares);
Manifest budget_bitwise_lt(const PackingConfig& cfg, std::size_t shares);
Manifest budget_drelu(const PackingConfig& cfg, std::size_t shares);
Manifest budget_relu(const PackingConfig& cfg, std::size_t shares);
Manifest budget_maxpool(const PackingConfig& cfg, std::size_t m, std::size_t shares);

// Online cost, total over all parties.
ProtocolCost cost_xor(const PackingConfig& cfg, std::size_t shares);
ProtocolCost cost_pre_mult(const PackingConfig& cfg, std::size_t len, std::size_t shares);
ProtocolCost cost_bitwise_lt(const PackingConfig& cfg, std::size_t shares);
ProtocolCost cost_drelu(const PackingConfig& cfg, std::size_t shares);
ProtocolCost cost_relu(const PackingConfig& cfg, std::size_t shares);
ProtocolCost cost_maxpool(const PackingConfig& cfg, std::size_t m, std::size_t shares);

}  // namespace pssnn
