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

#include "pssnn/oracle.h"

#include <algorithm>
#include <cmath>

#include "pssnn/error.h"

namespace pssnn::oracle {

BigInt mod(const BigInt& x, std::uint64_t p) {
  BigInt r = x % p;
  if (r < 0) r += p;
  return r;
}

BigInt floor_shift(const BigInt& x, int s) {
  if (x >= 0) return x >> s;
  BigInt one = 1;
  return -((-x + (one << s) - 1) >> s);
}

BigInt centered(std::uint64_t v, std::uint64_t p) {
  BigInt b = v;
  return v > (p - 1) / 2 ? b - BigInt(p) : b;
}

namespace {

template <typename T>
struct Net {
  // Called with accumulators right before they become layer outputs.
  virtual T truncate(const T& acc) const = 0;
  virtual T encode_weight(double w) const = 0;
  virtual T encode_bias(double b) const = 0;
  virtual void check(const T&) const {}
  virtual ~Net() = default;

  std::vector<T> run(const Model& m, std::vector<T> x) const {
    Shape3 s = m.input;
    for (const auto& l : m.layers) {
      switch (l.kind) {
        case LayerKind::kConv: {
          const int ho = (s.h - l.fh + 2 * l.pad) / l.stride + 1;
          const int wo = (s.w - l.fw + 2 * l.pad) / l.stride + 1;
          std::vector<T> y(static_cast<std::size_t>(l.co) * ho * wo);
          for (int o = 0; o < l.co; ++o) {
            for (int oy = 0; oy < ho; ++oy) {
              for (int ox = 0; ox < wo; ++ox) {
                T acc = 0;
                for (int c = 0; c < l.ci; ++c) {
                  for (int dy = 0; dy < l.fh; ++dy) {
                    for (int dx = 0; dx < l.fw; ++dx) {
                      const int iy = oy * l.stride + dy - l.pad, ix = ox * l.stride + dx - l.pad;
                      if (iy < 0 || ix < 0 || iy >= s.h || ix >= s.w) continue;
                      acc += encode_weight(l.weights[((static_cast<std::size_t>(o) * l.ci + c) * l.fh + dy) * l.fw + dx]) *
                             x[(static_cast<std::size_t>(c) * s.h + iy) * s.w + ix];
                    }
                  }
                }
                check(acc);
                y[(static_cast<std::size_t>(o) * ho + oy) * wo + ox] = truncate(acc);
              }
            }
          }
          x = std::move(y);
          s = {l.co, ho, wo};
          break;
        }
        case LayerKind::kFC: {
          std::vector<T> y(l.out);
          for (int o = 0; o < l.out; ++o) {
            T acc = 0;
            for (int i = 0; i < l.in; ++i) acc += x[i] * encode_weight(l.weights[static_cast<std::size_t>(i) * l.out + o]);
            check(acc);
            y[o] = truncate(acc) + encode_bias(l.bias[o]);
            check(y[o]);
          }
          x = std::move(y);
          s = {l.out, 1, 1};
          break;
        }
        case LayerKind::kReLU:
          for (auto& v : x) v = v > 0 ? v : T(0);
          break;
        case LayerKind::kMaxPool: {
          const int ho = s.h / l.window, wo = s.w / l.window;
          std::vector<T> y(static_cast<std::size_t>(s.c) * ho * wo);
          for (int c = 0; c < s.c; ++c) {
            for (int oy = 0; oy < ho; ++oy) {
              for (int ox = 0; ox < wo; ++ox) {
                T best = x[(static_cast<std::size_t>(c) * s.h + oy * l.window) * s.w + ox * l.window];
                for (int dy = 0; dy < l.window; ++dy) {
                  for (int dx = 0; dx < l.window; ++dx) {
                    const T& v = x[(static_cast<std::size_t>(c) * s.h + oy * l.window + dy) * s.w + ox * l.window + dx];
                    if (v > best) best = v;
                  }
                }
                y[(static_cast<std::size_t>(c) * ho + oy) * wo + ox] = best;
              }
            }
          }
          x = std::move(y);
          s = {s.c, ho, wo};
          break;
        }
        case LayerKind::kFlatten:
          s = {static_cast<int>(s.size()), 1, 1};
          break;
      }
    }
    return x;
  }
};

struct FixedNet : Net<BigInt> {
  FixedPointCodec codec;
  BigInt bound;
  FixedNet(int ell, int ell_x) : codec(Field(ell), ell_x), bound(BigInt(1) << (ell - 2)) {}
  BigInt truncate(const BigInt& acc) const override { return floor_shift(acc, codec.ell_x()); }
  BigInt encode_weight(double w) const override { return codec.to_fixed(w); }
  BigInt encode_bias(double b) const override { return codec.to_fixed(b); }
  void check(const BigInt& v) const override {
    if (v >= bound || v <= -bound) throw Error(Errc::kOutOfRange, "accumulator leaves the safe range");
  }
};

struct DoubleNet : Net<double> {
  double truncate(const double& acc) const override { return acc; }
  double encode_weight(double w) const override { return w; }
  double encode_bias(double b) const override { return b; }
};

const std::vector<std::string> kCatalog = {
    "PMult-DN", "VecMatMult", "VecMatMult-Trunc", "PMatMult-Trunc", "PackTrans", "DegreeTrans",
    "Xor",      "PreMult",    "PreOR",            "Bitwise-LT",     "DReLU",     "ReLU",
    "Maxpool",  "RandomBits", "RandomPairs",      "TruncTriple"};

void need(bool ok, const std::string& name) {
  if (!ok) throw Error(Errc::kShapeMismatch, "bad inputs for " + name);
}

}  // namespace

std::vector<BigInt> plaintext_infer(const Model& m, int ell, int ell_x,
                                    const std::vector<double>& input) {
  m.shapes();
  FixedNet net(ell, ell_x);
  if (input.size() != m.input.size()) throw Error(Errc::kShapeMismatch, "input size");
  std::vector<BigInt> x;
  for (double v : input) x.push_back(net.codec.to_fixed(v));
  return net.run(m, std::move(x));
}

std::vector<double> double_infer(const Model& m, const std::vector<double>& input) {
  m.shapes();
  if (input.size() != m.input.size()) throw Error(Errc::kShapeMismatch, "input size");
  return DoubleNet{}.run(m, input);
}

std::vector<std::string> functionality_catalog() { return kCatalog; }

OracleTranscript functionality_oracle(const OracleCall& c) {
  OracleTranscript t{c.name, c.inputs, {}, Tolerance::kExact};
  const auto& in = c.inputs;
  const std::string& n = c.name;
  auto& out = t.outputs;
  if (n == "PMult-DN") {
    need(in.size() == 2 && in[0].size() == in[1].size(), n);
    std::vector<BigInt> z;
    for (std::size_t i = 0; i < in[0].size(); ++i) z.push_back(mod(in[0][i] * in[1][i], c.p));
    out.push_back(z);
  } else if (n == "VecMatMult" || n == "VecMatMult-Trunc") {
    need(in.size() == 2 && in[0].size() == c.inner && in[1].size() == c.inner * c.cols, n);
    std::vector<BigInt> z(c.cols);
    for (std::size_t j = 0; j < c.cols; ++j) {
      BigInt s = 0;
      for (std::size_t i = 0; i < c.inner; ++i) s += in[0][i] * in[1][i * c.cols + j];
      z[j] = n == "VecMatMult" ? mod(s, c.p) : floor_shift(s, c.ell_x);
    }
    if (n != "VecMatMult") t.tolerance = Tolerance::kOneUlp;
    out.push_back(z);
  } else if (n == "PMatMult-Trunc") {
    // inputs: k left matrices then k right matrices, row-major.
    need(in.size() == 2 * static_cast<std::size_t>(c.k), n);
    for (int s = 0; s < c.k; ++s) {
      const auto& A = in[s];
      const auto& B = in[c.k + s];
      need(A.size() == c.rows * c.inner && B.size() == c.inner * c.cols, n);
      std::vector<BigInt> z(c.rows * c.cols);
      for (std::size_t r = 0; r < c.rows; ++r) {
        for (std::size_t q = 0; q < c.cols; ++q) {
          BigInt acc = 0;
          for (std::size_t g = 0; g < c.inner; ++g) acc += A[r * c.inner + g] * B[g * c.cols + q];
          z[r * c.cols + q] = floor_shift(acc, c.ell_x);
        }
      }
      out.push_back(z);
    }
    t.tolerance = Tolerance::kOneUlp;
  } else if (n == "PackTrans") {
    need(in.size() == 1 && in[0].size() == static_cast<std::size_t>(c.k), n);
    for (int i = 0; i < c.k; ++i) out.emplace_back(c.k, in[0][i]);
  } else if (n == "DegreeTrans") {
    need(in.size() == 1, n);
    out.push_back(in[0]);
  } else if (n == "Xor") {
    need(in.size() == 2 && in[0].size() == in[1].size(), n);
    std::vector<BigInt> z;
    for (std::size_t i = 0; i < in[0].size(); ++i) {
      need(in[0][i] <= 1 && in[1][i] <= 1 && in[0][i] >= 0 && in[1][i] >= 0, n);
      z.push_back(in[0][i] != in[1][i] ? 1 : 0);
    }
    out.push_back(z);
  } else if (n == "PreMult" || n == "PreOR") {
    need(!in.empty(), n);
    std::vector<BigInt> acc(in[0].size(), n == "PreMult" ? 1 : 0);
    for (const auto& v : in) {
      need(v.size() == acc.size(), n);
      for (std::size_t s = 0; s < v.size(); ++s) {
        acc[s] = n == "PreMult" ? mod(acc[s] * v[s], c.p) : BigInt((acc[s] != 0 || v[s] != 0) ? 1 : 0);
      }
      out.push_back(acc);
    }
  } else if (n == "Bitwise-LT") {
    need(in.size() == 2 && in[0].size() == in[1].size(), n);
    std::vector<BigInt> z;
    for (std::size_t i = 0; i < in[0].size(); ++i) z.push_back(in[0][i] < in[1][i] ? 1 : 0);
    out.push_back(z);
  } else if (n == "DReLU" || n == "ReLU") {
    need(in.size() == 1, n);
    std::vector<BigInt> z;
    for (const auto& v : in[0]) z.push_back(n == "DReLU" ? BigInt(v >= 0 ? 1 : 0) : (v > 0 ? v : BigInt(0)));
    out.push_back(z);
  } else if (n == "Maxpool") {
    need(!in.empty(), n);
    std::vector<BigInt> z = in[0];
    for (const auto& v : in) {
      need(v.size() == z.size(), n);
      for (std::size_t s = 0; s < z.size(); ++s) z[s] = std::max(z[s], v[s]);
    }
    out.push_back(z);
  } else if (n == "RandomBits") {
    need(in.size() == 1, n);
    std::vector<BigInt> z;
    for (const auto& v : in[0]) z.push_back(v == 0 || v == 1 ? 1 : 0);
    out.push_back(z);
  } else if (n == "RandomPairs" || n == "TruncTriple") {
    // input: r of length k * v; output: the v block sums (shifted for truncation).
    need(in.size() == 1 && c.k > 0 && in[0].size() % c.k == 0, n);
    std::vector<BigInt> z;
    for (std::size_t b = 0; b < in[0].size() / c.k; ++b) {
      BigInt s = 0;
      for (int i = 0; i < c.k; ++i) s += in[0][b * c.k + i];
      z.push_back(n == "RandomPairs" ? mod(s, c.p) : BigInt(mod(s, c.p) >> c.ell_x));
    }
    out.push_back(z);
  } else {
    throw Error(Errc::kUnknownFunctionality, "no oracle for '" + n + "'");
  }
  return t;
}

bool within_tolerance(const OracleTranscript& t, const std::vector<std::vector<BigInt>>& observed) {
  if (observed.size() != t.outputs.size()) return false;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (observed[i].size() != t.outputs[i].size()) return false;
    for (std::size_t j = 0; j < observed[i].size(); ++j) {
      BigInt diff = observed[i][j] - t.outputs[i][j];
      switch (t.tolerance) {
        case Tolerance::kExact:
          if (diff != 0) return false;
          break;
        case Tolerance::kOneUlp:
        case Tolerance::kProbabilistic:
          if (diff < -1 || diff > 1) return false;
          break;
      }
    }
  }
  return true;
}

namespace {

std::vector<BigInt> big(const std::vector<FieldElement>& v, std::uint64_t p, bool signed_values) {
  std::vector<BigInt> out;
  for (auto x : v) out.push_back(signed_values ? centered(x.value, p) : BigInt(x.value));
  return out;
}

std::vector<BigInt> slice(const std::vector<BigInt>& v, std::size_t from, std::size_t len) {
  return {v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(from + len)};
}

void tally(Verdict& v, const OracleTranscript& t, const std::vector<std::vector<BigInt>>& observed) {
  v.functionality = t.name;
  v.tolerance = t.tolerance;
  for (std::size_t i = 0; i < t.outputs.size(); ++i) {
    for (std::size_t j = 0; j < t.outputs[i].size(); ++j) {
      ++v.compared;
      const BigInt d = observed.at(i).at(j) - t.outputs[i][j];
      const bool ok = t.tolerance == Tolerance::kExact ? d == 0 : (d >= -1 && d <= 1);
      if (!ok) ++v.mismatches;
    }
  }
}

double wraps(const std::vector<BigInt>& truncated, int ell_x, std::uint64_t p) {
  double s = 0;
  for (const auto& x : truncated) s += std::abs(x.convert_to<double>()) * std::ldexp(1.0, ell_x) / static_cast<double>(p);
  return s;
}

}  // namespace

Verdict verify_trial(const bench::ProtocolCase& c, const PackingConfig& cfg, int ell_x,
                     const bench::ProtocolTrial& t) {
  const std::uint64_t p = cfg.field().modulus();
  const int k = cfg.k();
  const std::string& name = c.protocol;
  Verdict v;
  OracleCall call;
  call.p = p;
  call.ell = cfg.field().ell();
  call.ell_x = ell_x;
  call.k = k;
  auto U = [&](const std::vector<FieldElement>& x) { return big(x, p, false); };
  auto S = [&](const std::vector<FieldElement>& x) { return big(x, p, true); };
  auto all = [&](bool signed_values) {
    std::vector<std::vector<BigInt>> r;
    for (const auto& x : t.outputs) r.push_back(signed_values ? S(x) : U(x));
    return r;
  };

  if (name == "pmult_dn" || name == "xor" || name == "pre_mult" || name == "pre_or") {
    call.name = name == "pmult_dn" ? "PMult-DN" : name == "xor" ? "Xor" : name == "pre_mult" ? "PreMult" : "PreOR";
    for (const auto& x : t.inputs) call.inputs.push_back(U(x));
    tally(v, functionality_oracle(call), all(false));
  } else if (name == "pack_trans" || name == "pack_trans_masks") {
    call.name = "PackTrans";
    const auto x = name == "pack_trans" ? U(t.inputs[0]) : U(t.outputs[k]);
    for (std::size_t b = 0; b < x.size() / k; ++b) {
      call.inputs = {slice(x, b * k, k)};
      std::vector<std::vector<BigInt>> obs;
      for (int i = 0; i < k; ++i) obs.push_back(slice(U(t.outputs[i]), b * k, k));
      tally(v, functionality_oracle(call), obs);
    }
  } else if (name == "bitwise_lt") {
    call.name = "Bitwise-LT";
    std::vector<BigInt> b(t.inputs[0].size(), 0);
    for (std::size_t i = 1; i < t.inputs.size(); ++i) {
      for (std::size_t s = 0; s < b.size(); ++s) b[s] += BigInt(t.inputs[i][s].value) << (i - 1);
    }
    call.inputs = {U(t.inputs[0]), b};
    tally(v, functionality_oracle(call), all(false));
  } else if (name == "drelu" || name == "relu" || name == "maxpool") {
    call.name = name == "drelu" ? "DReLU" : name == "relu" ? "ReLU" : "Maxpool";
    for (const auto& x : t.inputs) call.inputs.push_back(S(x));
    tally(v, functionality_oracle(call), name == "drelu" ? all(false) : all(true));
  } else if (name == "vec_mat_mult" || name == "vec_mat_mult_trunc") {
    const bool trunc = name == "vec_mat_mult_trunc";
    call.name = trunc ? "VecMatMult-Trunc" : "VecMatMult";
    call.rows = 1;
    call.inner = c.rows;
    call.cols = c.cols;
    call.inputs = {trunc ? S(t.inputs[0]) : U(t.inputs[0]), trunc ? S(t.inputs[1]) : U(t.inputs[1])};
    auto tr = functionality_oracle(call);
    auto obs = all(trunc);
    obs[0].resize(c.cols);
    tally(v, tr, obs);
    if (trunc) v.expected_wraps = wraps(tr.outputs[0], ell_x, p);
  } else if (name == "pmat_mult_trunc") {
    call.name = "PMatMult-Trunc";
    call.rows = c.rows;
    call.inner = c.inner;
    call.cols = c.cols;
    for (const auto& x : t.inputs) call.inputs.push_back(S(x));
    auto tr = functionality_oracle(call);
    // Observed entry e, slot i is element e*k + i.
    const auto out = S(t.outputs[0]);
    std::vector<std::vector<BigInt>> obs(k);
    for (int i = 0; i < k; ++i) {
      for (std::size_t e = 0; e < c.rows * c.cols; ++e) obs[i].push_back(out[e * k + i]);
      v.expected_wraps += wraps(tr.outputs[i], ell_x, p);
    }
    tally(v, tr, obs);
  } else if (name == "random_bits") {
    call.name = "RandomBits";
    call.inputs = {U(t.outputs[0])};
    auto tr = functionality_oracle(call);
    tally(v, tr, {std::vector<BigInt>(tr.outputs[0].size(), 1)});
  } else if (name == "trunc_triples" || name == "vm_tuples" || name == "pmat_masks") {
    call.name = name == "vm_tuples" ? "RandomPairs" : "TruncTriple";
    if (name == "pmat_masks") call.k = 1;
    call.inputs = {U(t.outputs[0])};
    tally(v, functionality_oracle(call), {U(t.outputs[1])});
  } else {
    throw Error(Errc::kUnknownFunctionality, "no oracle mapping for '" + name + "'");
  }
  return v;
}

}  // namespace pssnn::oracle
