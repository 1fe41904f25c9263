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
#include <vector>

#include "pssnn/linear.h"
#include "pssnn/model.h"
#include "pssnn/party.h"
#include "pssnn/store.h"

namespace pssnn {

// How a tensor's entries are laid out over packed sharings.
//   kBlock: flat channel-major index j at share j/k, slot j%k.
//   kChannelPacked: entry (c, pos) at share pos*G + c/k, slot c%k, where
//     G = ceil(C/k) and pos = h*W + w. Slots beyond C hold junk.
//   kReplicated: entry (c, pos) at share pos*C + c in every slot.
enum class Layout { kBlock, kChannelPacked, kReplicated };
const char* layout_name(Layout l);

enum class Conversion { kNone, kPackTrans, kFlattenRepack };

struct LayerPlan {
  LayerKind kind = LayerKind::kReLU;
  Layout in = Layout::kBlock;
  Layout out = Layout::kBlock;
  Shape3 in_shape;   // spatial shape of the stored tensor
  Shape3 out_shape;
  Conversion conversion = Conversion::kNone;
  int window = 0;  // MaxPool
};

struct PackingPlan {
  int k = 1;
  Layout input = Layout::kBlock;
  Shape3 input_shape;
  std::vector<LayerPlan> layers;
  Layout output = Layout::kBlock;
  Shape3 output_shape;
};

// Errc::kShapeMismatch for graphs the planner does not support (spatial
// layers after an FC or Flatten).
PackingPlan make_plan(const Model& m, int k);

std::size_t share_count(Layout l, const Shape3& s, int k);
// (share index, slot) holding entry (c, pos).
std::pair<std::size_t, int> locate(Layout l, const Shape3& s, int k, int c, std::size_t pos);

// One party's view of a tensor.
struct SharedTensor {
  Layout layout = Layout::kBlock;
  Shape3 shape;
  ShareVec shares;
};

struct LayerShares {
  PackedMatrix weights;  // row blocks for FC, slot-parallel for Conv
  PackedVector bias;     // FC only
};

struct ModelShares {
  std::vector<LayerShares> layers;  // one per model layer, empty for non-linear
};

// Dealer-side sharing by the client and the model owner. Index j is party j+1.
std::vector<SharedTensor> share_input(const PackingConfig& cfg, const PackingPlan& plan,
                                      const FixedPointCodec& codec,
                                      const std::vector<double>& input, Prg& prg);
std::vector<ModelShares> share_model(const PackingConfig& cfg, const PackingPlan& plan,
                                     const Model& m, const FixedPointCodec& codec, Prg& prg);

// Windowed input matrix (output positions x ci*fh*fw, identical in all
// slots) from a replicated tensor; borders are zero shares.
PackedMatrix lower_conv(const PackingConfig& cfg, const SharedTensor& x, const LayerSpec& conv);

// Replicated copy of any tensor via one pack_trans (free if already replicated).
SharedTensor to_replicated(Party& p, const SharedTensor& x);

SharedTensor infer_secure(Party& p, const PackingPlan& plan, const Model& m,
                          const ModelShares& shares, SharedTensor input);

// Channel-major logical values from the slot-major opening of a tensor.
std::vector<FieldElement> logical_values(const SharedTensor& shape_of, int k,
                                         const std::vector<FieldElement>& slot_major);
// Client side: reconstructs and decodes the output from every party's shares.
std::vector<double> reveal_output(const PackingConfig& cfg, const FixedPointCodec& codec,
                                  const std::vector<SharedTensor>& party_outputs);
std::vector<FieldElement> reveal_fixed(const PackingConfig& cfg,
                                       const std::vector<SharedTensor>& party_outputs);

// Offline material the online phase of infer_secure consumes.
Manifest randomness_budget(const PackingConfig& cfg, const PackingPlan& plan);

// Online rounds and elements of infer_secure as the sum of the per-protocol
// closed forms; padding, flatten-repack and bias add nothing.
ProtocolCost inference_cost(const PackingConfig& cfg, const PackingPlan& plan);

}  // namespace pssnn
