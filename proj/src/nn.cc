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

#include "pssnn/nn.h"

#include <string>

#include "pssnn/error.h"
#include "pssnn/nonlinear.h"

namespace pssnn {

namespace {

std::size_t groups(int c, int k) { return (static_cast<std::size_t>(c) + k - 1) / k; }

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::kShapeMismatch, what);
}

Shape3 conv_out(const Shape3& s, const LayerSpec& l) {
  return {l.co, (s.h - l.fh + 2 * l.pad) / l.stride + 1, (s.w - l.fw + 2 * l.pad) / l.stride + 1};
}

// Physical FC input length and the physical index of logical row j.
std::size_t fc_rows(Layout l, const Shape3& s, int k) { return share_count(l, s, k) * k; }

std::size_t fc_row(Layout l, const Shape3& s, int k, std::size_t j) {
  const std::size_t hw = static_cast<std::size_t>(s.h) * s.w;
  auto [share, slot] = locate(l, s, k, static_cast<int>(j / hw), j % hw);
  return share * k + slot;
}

}  // namespace

const char* layout_name(Layout l) {
  switch (l) {
    case Layout::kBlock: return "block";
    case Layout::kChannelPacked: return "channel-packed";
    case Layout::kReplicated: return "replicated";
  }
  return "?";
}

std::size_t share_count(Layout l, const Shape3& s, int k) {
  const std::size_t hw = static_cast<std::size_t>(s.h) * s.w;
  switch (l) {
    case Layout::kBlock: return padded(s.size(), k) / k;
    case Layout::kChannelPacked: return hw * groups(s.c, k);
    case Layout::kReplicated: return hw * s.c;
  }
  return 0;
}

std::pair<std::size_t, int> locate(Layout l, const Shape3& s, int k, int c, std::size_t pos) {
  const std::size_t hw = static_cast<std::size_t>(s.h) * s.w;
  switch (l) {
    case Layout::kBlock: {
      const std::size_t j = static_cast<std::size_t>(c) * hw + pos;
      return {j / k, static_cast<int>(j % k)};
    }
    case Layout::kChannelPacked:
      return {pos * groups(s.c, k) + c / k, c % k};
    case Layout::kReplicated:
      return {pos * s.c + c, 0};
  }
  return {0, 0};
}

PackingPlan make_plan(const Model& m, int k) {
  m.shapes();
  PackingPlan plan;
  plan.k = k;
  plan.input_shape = m.input;
  plan.input = Layout::kBlock;
  for (const auto& l : m.layers) {
    if (l.kind == LayerKind::kConv) { plan.input = Layout::kReplicated; break; }
    if (l.kind == LayerKind::kMaxPool) { plan.input = Layout::kChannelPacked; break; }
    if (l.kind == LayerKind::kFC || l.kind == LayerKind::kFlatten) break;
  }
  Layout cur = plan.input;
  Shape3 shape = m.input;
  bool flat = false;
  for (std::size_t i = 0; i < m.layers.size(); ++i) {
    const auto& l = m.layers[i];
    LayerPlan lp{l.kind, cur, cur, shape, shape, Conversion::kNone, l.window};
    const std::string where = "layer " + std::to_string(i) + " (" + layer_name(l.kind) + "): ";
    switch (l.kind) {
      case LayerKind::kConv:
        require(!flat, where + "spatial layer after flatten");
        if (cur != Layout::kReplicated) lp.conversion = Conversion::kPackTrans;
        lp.out = Layout::kChannelPacked;
        lp.out_shape = conv_out(shape, l);
        break;
      case LayerKind::kFC:
        if (cur != Layout::kBlock) lp.conversion = Conversion::kFlattenRepack;
        lp.out = Layout::kBlock;
        lp.out_shape = {l.out, 1, 1};
        flat = true;
        break;
      case LayerKind::kMaxPool:
        require(!flat && cur != Layout::kBlock, where + "max pooling needs a spatial layout");
        lp.out_shape = {shape.c, shape.h / l.window, shape.w / l.window};
        break;
      case LayerKind::kFlatten:
        flat = true;
        break;
      case LayerKind::kReLU:
        break;
    }
    cur = lp.out;
    shape = lp.out_shape;
    plan.layers.push_back(lp);
  }
  plan.output = cur;
  plan.output_shape = shape;
  return plan;
}

std::vector<SharedTensor> share_input(const PackingConfig& cfg, const PackingPlan& plan,
                                      const FixedPointCodec& codec,
                                      const std::vector<double>& input, Prg& prg) {
  const Shape3& s = plan.input_shape;
  require(input.size() == s.size(), "input tensor size does not match the model");
  const int k = cfg.k();
  require(plan.k == k, "packing plan built for a different k");
  const std::size_t hw = static_cast<std::size_t>(s.h) * s.w;
  const std::size_t count = share_count(plan.input, s, k);
  std::vector<std::vector<FieldElement>> secrets(count, std::vector<FieldElement>(k));
  for (int c = 0; c < s.c; ++c) {
    for (std::size_t pos = 0; pos < hw; ++pos) {
      const FieldElement v = codec.encode(input[c * hw + pos]);
      auto [share, slot] = locate(plan.input, s, k, c, pos);
      if (plan.input == Layout::kReplicated) {
        for (int i = 0; i < k; ++i) secrets[share][i] = v;
      } else {
        secrets[share][slot] = v;
      }
    }
  }
  std::vector<SharedTensor> out(cfg.n(), SharedTensor{plan.input, s, {{}, cfg.d()}});
  for (const auto& sec : secrets) {
    auto sh = cfg.deal(cfg.packed_plan(cfg.d()), sec, prg);
    for (int j = 0; j < cfg.n(); ++j) out[j].shares.values.push_back(sh[j]);
  }
  return out;
}

std::vector<ModelShares> share_model(const PackingConfig& cfg, const PackingPlan& plan,
                                     const Model& m, const FixedPointCodec& codec, Prg& prg) {
  require(plan.layers.size() == m.layers.size(), "packing plan does not match the model");
  const int k = cfg.k();
  const Field& f = cfg.field();
  std::vector<ModelShares> out(cfg.n());
  for (auto& ms : out) ms.layers.resize(m.layers.size());
  for (std::size_t li = 0; li < m.layers.size(); ++li) {
    const auto& l = m.layers[li];
    const auto& lp = plan.layers[li];
    if (l.kind == LayerKind::kConv) {
      const std::size_t rows = static_cast<std::size_t>(l.ci) * l.fh * l.fw;
      const std::size_t g = groups(l.co, k);
      std::vector<std::vector<FieldElement>> mats(k, std::vector<FieldElement>(rows * g, f.zero()));
      for (int o = 0; o < l.co; ++o) {
        for (std::size_t r = 0; r < rows; ++r) {
          mats[o % k][r * g + o / k] = codec.encode(l.weights[o * rows + r]);
        }
      }
      auto shared = share_slot_matrices(cfg, rows, g, mats, prg);
      for (int j = 0; j < cfg.n(); ++j) out[j].layers[li].weights = std::move(shared[j]);
    } else if (l.kind == LayerKind::kFC) {
      const std::size_t rows = fc_rows(lp.in, lp.in_shape, k);
      std::vector<FieldElement> w(rows * l.out, f.zero());
      for (int i = 0; i < l.in; ++i) {
        const std::size_t r = fc_row(lp.in, lp.in_shape, k, i);
        for (int o = 0; o < l.out; ++o) w[r * l.out + o] = codec.encode(l.weights[static_cast<std::size_t>(i) * l.out + o]);
      }
      auto shared = share_matrix_rows(cfg, rows, l.out, w, prg);
      std::vector<FieldElement> b(l.out);
      for (int o = 0; o < l.out; ++o) b[o] = codec.encode(l.bias[o]);
      auto bias = share_vector(cfg, b, prg);
      for (int j = 0; j < cfg.n(); ++j) {
        out[j].layers[li].weights = std::move(shared[j]);
        out[j].layers[li].bias = std::move(bias[j]);
      }
    }
  }
  return out;
}

PackedMatrix lower_conv(const PackingConfig& cfg, const SharedTensor& x, const LayerSpec& l) {
  require(x.layout == Layout::kReplicated, "conv lowering needs a replicated input");
  require(x.shape.c == l.ci, "conv input channels");
  require(x.shares.size() == share_count(Layout::kReplicated, x.shape, cfg.k()), "conv input share count");
  const Shape3 o = conv_out(x.shape, l);
  require(o.h > 0 && o.w > 0, "conv output is empty");
  const std::size_t cols = static_cast<std::size_t>(l.ci) * l.fh * l.fw;
  PackedMatrix A{PackedMatrix::Axis::kSlotParallel, static_cast<std::size_t>(o.h) * o.w, cols, cfg.k(),
                 ShareVec{std::vector<FieldElement>(static_cast<std::size_t>(o.h) * o.w * cols), x.shares.degree}};
  for (int oy = 0; oy < o.h; ++oy) {
    for (int ox = 0; ox < o.w; ++ox) {
      const std::size_t row = static_cast<std::size_t>(oy) * o.w + ox;
      for (int c = 0; c < l.ci; ++c) {
        for (int dy = 0; dy < l.fh; ++dy) {
          for (int dx = 0; dx < l.fw; ++dx) {
            const int iy = oy * l.stride + dy - l.pad, ix = ox * l.stride + dx - l.pad;
            const std::size_t col = (static_cast<std::size_t>(c) * l.fh + dy) * l.fw + dx;
            FieldElement v{0};
            if (iy >= 0 && ix >= 0 && iy < x.shape.h && ix < x.shape.w) {
              v = x.shares.values[(static_cast<std::size_t>(iy) * x.shape.w + ix) * l.ci + c];
            }
            A.shares.values[row * cols + col] = v;
          }
        }
      }
    }
  }
  return A;
}

SharedTensor to_replicated(Party& p, const SharedTensor& x) {
  if (x.layout == Layout::kReplicated) return x;
  const int k = p.cfg.k();
  auto copies = pack_trans(p, x.shares);
  const std::size_t hw = static_cast<std::size_t>(x.shape.h) * x.shape.w;
  SharedTensor out{Layout::kReplicated, x.shape,
                   {std::vector<FieldElement>(hw * x.shape.c), p.cfg.d()}};
  for (std::size_t pos = 0; pos < hw; ++pos) {
    for (int c = 0; c < x.shape.c; ++c) {
      auto [share, slot] = locate(x.layout, x.shape, k, c, pos);
      out.shares.values[pos * x.shape.c + c] = copies[slot].values[share];
    }
  }
  return out;
}

namespace {

SharedTensor run_layer(Party& p, const LayerPlan& lp, const LayerSpec& l, const LayerShares& ls,
                       SharedTensor x) {
  const int k = p.cfg.k();
  switch (l.kind) {
    case LayerKind::kConv: {
      SharedTensor r = to_replicated(p, x);
      PackedMatrix A = lower_conv(p.cfg, r, l);
      PackedMatrix C = pmat_mult_trunc(p, A, ls.weights);
      return {Layout::kChannelPacked, lp.out_shape, std::move(C.shares)};
    }
    case LayerKind::kFC: {
      // Flatten-repack: the shares are reused as a block vector; the owner
      // already placed the weight rows at the matching physical indices.
      PackedVector v{x.shares.size() * k, std::move(x.shares)};
      PackedVector y = vec_mat_mult_trunc(p, v, ls.weights);
      ShareVec s = add(p.field(), y.shares, ls.bias.shares);
      return {Layout::kBlock, lp.out_shape, std::move(s)};
    }
    case LayerKind::kReLU:
      x.shares = relu(p, x.shares);
      return x;
    case LayerKind::kMaxPool: {
      const Shape3& in = lp.in_shape;
      const Shape3& o = lp.out_shape;
      const std::size_t units = x.layout == Layout::kReplicated ? in.c : groups(in.c, k);
      std::vector<ShareVec> windows(static_cast<std::size_t>(l.window) * l.window,
                                    ShareVec{std::vector<FieldElement>(static_cast<std::size_t>(o.h) * o.w * units), x.shares.degree});
      for (int oy = 0; oy < o.h; ++oy) {
        for (int ox = 0; ox < o.w; ++ox) {
          for (int dy = 0; dy < l.window; ++dy) {
            for (int dx = 0; dx < l.window; ++dx) {
              const std::size_t ipos = static_cast<std::size_t>(oy * l.window + dy) * in.w + ox * l.window + dx;
              const std::size_t opos = static_cast<std::size_t>(oy) * o.w + ox;
              auto& dst = windows[dy * l.window + dx].values;
              for (std::size_t u = 0; u < units; ++u) dst[opos * units + u] = x.shares.values[ipos * units + u];
            }
          }
        }
      }
      return {x.layout, o, maxpool(p, windows)};
    }
    case LayerKind::kFlatten:
      return x;
  }
  return x;
}

}  // namespace

SharedTensor infer_secure(Party& p, const PackingPlan& plan, const Model& m,
                          const ModelShares& shares, SharedTensor x) {
  require(plan.layers.size() == m.layers.size() && shares.layers.size() == m.layers.size(),
          "model, plan and shares disagree");
  require(x.layout == plan.input && x.shape == plan.input_shape, "input shares do not match the plan");
  for (std::size_t i = 0; i < m.layers.size(); ++i) {
    try {
      x = run_layer(p, plan.layers[i], m.layers[i], shares.layers[i], std::move(x));
    } catch (const Error& e) {
      throw Error(e.code(), "layer " + std::to_string(i) + " (" + layer_name(m.layers[i].kind) +
                                "): " + e.what());
    }
  }
  return x;
}

std::vector<FieldElement> logical_values(const SharedTensor& t, int k,
                                         const std::vector<FieldElement>& slot_major) {
  const std::size_t hw = static_cast<std::size_t>(t.shape.h) * t.shape.w;
  std::vector<FieldElement> out(t.shape.size());
  for (int c = 0; c < t.shape.c; ++c) {
    for (std::size_t pos = 0; pos < hw; ++pos) {
      auto [share, slot] = locate(t.layout, t.shape, k, c, pos);
      out[c * hw + pos] = slot_major.at(share * k + slot);
    }
  }
  return out;
}

std::vector<FieldElement> reveal_fixed(const PackingConfig& cfg,
                                       const std::vector<SharedTensor>& outs) {
  if (outs.size() != static_cast<std::size_t>(cfg.n())) {
    throw Error(Errc::kTooFewShares, "need output shares from every party");
  }
  const SharedTensor& t0 = outs[0];
  const int k = cfg.k();
  std::vector<FieldElement> slot_major;
  std::vector<FieldElement> column(cfg.n());
  for (std::size_t b = 0; b < t0.shares.size(); ++b) {
    for (int j = 0; j < cfg.n(); ++j) {
      const auto& t = outs[j];
      if (t.layout != t0.layout || !(t.shape == t0.shape) || t.shares.size() != t0.shares.size()) {
        throw Error(Errc::kShapeMismatch, "party output shares disagree");
      }
      column[j] = t.shares.values[b];
    }
    auto s = cfg.reconstruct(cfg.packed_plan(t0.shares.degree), column);
    slot_major.insert(slot_major.end(), s.begin(), s.begin() + k);
  }
  return logical_values(t0, k, slot_major);
}

std::vector<double> reveal_output(const PackingConfig& cfg, const FixedPointCodec& codec,
                                  const std::vector<SharedTensor>& outs) {
  std::vector<double> out;
  for (auto v : reveal_fixed(cfg, outs)) out.push_back(codec.decode(v));
  return out;
}

Manifest randomness_budget(const PackingConfig& cfg, const PackingPlan& plan) {
  const int k = cfg.k();
  Manifest m;
  for (const auto& lp : plan.layers) {
    switch (lp.kind) {
      case LayerKind::kConv: {
        if (lp.in != Layout::kReplicated) m += budget_pack_trans(cfg, share_count(lp.in, lp.in_shape, k));
        m += budget_pmat(cfg, share_count(Layout::kChannelPacked, lp.out_shape, k));
        break;
      }
      case LayerKind::kFC:
        m += budget_vec_mat(cfg, lp.out_shape.c, true);
        break;
      case LayerKind::kReLU:
        m += budget_relu(cfg, share_count(lp.in, lp.in_shape, k));
        break;
      case LayerKind::kMaxPool: {
        const std::size_t w = static_cast<std::size_t>(lp.window);
        m += budget_maxpool(cfg, w * w, share_count(lp.out, lp.out_shape, k));
        break;
      }
      case LayerKind::kFlatten:
        break;
    }
  }
  return m;
}

ProtocolCost inference_cost(const PackingConfig& cfg, const PackingPlan& plan) {
  const int k = cfg.k();
  ProtocolCost total;
  auto plus = [&](ProtocolCost c) {
    total.rounds += c.rounds;
    total.elements += c.elements;
  };
  for (const auto& lp : plan.layers) {
    switch (lp.kind) {
      case LayerKind::kConv:
        if (lp.in != Layout::kReplicated) plus(cost_pack_trans(cfg, share_count(lp.in, lp.in_shape, k)));
        plus(cost_pmat(cfg, share_count(Layout::kChannelPacked, lp.out_shape, k)));
        break;
      case LayerKind::kFC:
        plus(cost_vec_mat(cfg, lp.out_shape.c));
        break;
      case LayerKind::kReLU:
        plus(cost_relu(cfg, share_count(lp.in, lp.in_shape, k)));
        break;
      case LayerKind::kMaxPool:
        plus(cost_maxpool(cfg, static_cast<std::size_t>(lp.window) * lp.window, share_count(lp.out, lp.out_shape, k)));
        break;
      case LayerKind::kFlatten:
        break;
    }
  }
  return total;
}

}  // namespace pssnn
