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

#include "pssnn/bench.h"

#include <algorithm>
#include <chrono>
#include <functional>

#include "pssnn/error.h"
#include "pssnn/linear.h"
#include "pssnn/nonlinear.h"
#include "pssnn/offline.h"

namespace pssnn::bench {

namespace {

using Vec = std::vector<FieldElement>;
using Outputs = std::vector<ShareVec>;

const std::vector<std::string> kProtocols = {
    "pmult_dn", "vec_mat_mult", "vec_mat_mult_trunc", "pmat_mult_trunc", "pack_trans",
    "xor",      "pre_mult",     "pre_or",             "bitwise_lt",      "drelu",
    "relu",     "maxpool",      "random_bits",        "trunc_triples",   "vm_tuples",
    "pmat_masks", "pack_trans_masks"};

Vec random_field(const Field& f, Prg& prg, std::size_t len, bool nonzero = false) {
  Vec v(len);
  for (auto& x : v) {
    do {
      x = prg.next_field(f);
    } while (nonzero && x.value == 0);
  }
  return v;
}

Vec random_bits(Prg& prg, std::size_t len) {
  Vec v(len);
  for (auto& x : v) x = {prg.next_u64() & 1};
  return v;
}

// Uniform signed values in (-2^bits, 2^bits).
Vec random_signed(const Field& f, Prg& prg, std::size_t len, int bits) {
  Vec v(len);
  const std::uint64_t span = (std::uint64_t{1} << (bits + 1)) - 1;
  for (auto& x : v) {
    const std::int64_t s = static_cast<std::int64_t>(prg.next_u64() % span) - ((std::int64_t{1} << bits) - 1);
    x = f.from_int(s);
  }
  return v;
}

// Packed degree-d sharings of slot-major values, per party.
std::vector<ShareVec> deal(const PackingConfig& cfg, const Vec& plain, Prg& prg) {
  const int k = cfg.k();
  std::vector<ShareVec> out(cfg.n(), ShareVec{{}, cfg.d()});
  for (std::size_t b = 0; b < plain.size() / k; ++b) {
    auto sh = cfg.deal(cfg.packed_plan(cfg.d()), std::span<const FieldElement>(plain).subspan(b * k, k), prg);
    for (int j = 0; j < cfg.n(); ++j) out[j].values.push_back(sh[j]);
  }
  return out;
}

ShareVec flatten_r(const std::vector<VmTuple>& t, int degree) {
  ShareVec s{{}, degree};
  for (const auto& x : t) s.values.insert(s.values.end(), x.r.begin(), x.r.end());
  return s;
}

ShareVec r_primes(const std::vector<VmTuple>& t, int degree) {
  ShareVec s{{}, degree};
  for (const auto& x : t) s.values.push_back(x.r_prime);
  return s;
}

// Operand size for truncating products: accumulators stay near 2^(ell-8),
// so a truncation wraps with probability around 2^-8.
int trunc_bits(int ell, std::size_t inner) { return (ell - 8 - ceil_log2(inner)) / 2; }

struct Prepared {
  std::vector<Vec> inputs;
  Manifest manifest;
  std::function<Outputs(Party&, int)> body;
};

Prepared prepare(const ProtocolCase& c, const PackingConfig& cfg, Prg& prg) {
  const Field& f = cfg.field();
  const int k = cfg.k(), d = cfg.d(), ell = f.ell();
  const std::size_t B = c.batch, len = B * k;
  Prepared pr;
  const std::string& name = c.protocol;
  auto need = [&](bool ok) {
    if (!ok) throw Error(Errc::kInvalidConfig, "bad case for " + name);
  };

  if (name == "pmult_dn" || name == "xor") {
    const bool bits = name == "xor";
    Vec x = bits ? random_bits(prg, len) : random_field(f, prg, len);
    Vec y = bits ? random_bits(prg, len) : random_field(f, prg, len);
    auto X = deal(cfg, x, prg), Y = deal(cfg, y, prg);
    pr.inputs = {x, y};
    pr.manifest = bits ? budget_xor(cfg, d, B) : budget_pmult_dn(cfg, B);
    pr.body = [X, Y, bits](Party& p, int j) -> Outputs {
      return {bits ? xor_shares(p, X[j], Y[j]) : pmult_dn(p, X[j], Y[j])};
    };
  } else if (name == "pack_trans") {
    Vec x = random_field(f, prg, len);
    auto X = deal(cfg, x, prg);
    pr.inputs = {x};
    pr.manifest = budget_pack_trans(cfg, B);
    pr.body = [X](Party& p, int j) { return pack_trans(p, X[j]); };
  } else if (name == "pre_mult" || name == "pre_or" || name == "maxpool") {
    need(c.width > 0);
    std::vector<std::vector<ShareVec>> X(cfg.n());
    for (std::size_t w = 0; w < c.width; ++w) {
      Vec x = name == "pre_mult" ? random_field(f, prg, len, true)
              : name == "pre_or" ? random_bits(prg, len)
                                 : random_signed(f, prg, len, c.value_bits ? c.value_bits : ell - 3);
      auto sh = deal(cfg, x, prg);
      for (int j = 0; j < cfg.n(); ++j) X[j].push_back(sh[j]);
      pr.inputs.push_back(x);
    }
    if (name == "maxpool") {
      pr.manifest = budget_maxpool(cfg, c.width, B);
      pr.body = [X](Party& p, int j) -> Outputs { return {maxpool(p, X[j])}; };
    } else {
      pr.manifest = budget_pre_mult(cfg, c.width, B);
      const bool is_or = name == "pre_or";
      pr.body = [X, is_or](Party& p, int j) { return is_or ? pre_or(p, X[j]) : pre_mult(p, X[j]); };
    }
  } else if (name == "bitwise_lt") {
    Vec a(len);
    for (auto& v : a) v = {prg.next_u64() & ((std::uint64_t{1} << ell) - 1)};
    pr.inputs.push_back(a);
    std::vector<std::vector<ShareVec>> bits(cfg.n());
    for (int i = 0; i < ell; ++i) {
      Vec b = random_bits(prg, len);
      // Every fourth slot copies a's bits so equal operands occur.
      for (std::size_t s = 0; s < len; s += 4) b[s] = {(a[s].value >> i) & 1};
      auto sh = deal(cfg, b, prg);
      for (int j = 0; j < cfg.n(); ++j) bits[j].push_back(sh[j]);
      pr.inputs.push_back(b);
    }
    pr.manifest = budget_bitwise_lt(cfg, B);
    pr.body = [a, bits](Party& p, int j) -> Outputs { return {bitwise_lt(p, a, bits[j])}; };
  } else if (name == "drelu" || name == "relu") {
    Vec x = random_signed(f, prg, len, c.value_bits ? c.value_bits : ell - 2);
    auto X = deal(cfg, x, prg);
    pr.inputs = {x};
    const bool full = name == "relu";
    pr.manifest = full ? budget_relu(cfg, B) : budget_drelu(cfg, B);
    pr.body = [X, full](Party& p, int j) -> Outputs { return {full ? relu(p, X[j]) : drelu(p, X[j])}; };
  } else if (name == "vec_mat_mult" || name == "vec_mat_mult_trunc") {
    need(c.rows > 0 && c.cols > 0);
    const bool trunc = name == "vec_mat_mult_trunc";
    const int bits = c.value_bits ? c.value_bits : trunc_bits(ell, c.rows);
    Vec a = trunc ? random_signed(f, prg, c.rows, bits) : random_field(f, prg, c.rows);
    Vec A = trunc ? random_signed(f, prg, c.rows * c.cols, bits) : random_field(f, prg, c.rows * c.cols);
    auto av = share_vector(cfg, a, prg);
    auto Am = share_matrix_rows(cfg, c.rows, c.cols, A, prg);
    pr.inputs = {a, A};
    pr.manifest = budget_vec_mat(cfg, c.cols, trunc);
    pr.body = [av, Am, trunc](Party& p, int j) -> Outputs {
      return {(trunc ? vec_mat_mult_trunc(p, av[j], Am[j]) : vec_mat_mult(p, av[j], Am[j])).shares};
    };
  } else if (name == "pmat_mult_trunc") {
    need(c.rows > 0 && c.inner > 0 && c.cols > 0);
    const int bits = c.value_bits ? c.value_bits : trunc_bits(ell, c.inner);
    std::vector<Vec> As, Bs;
    for (int i = 0; i < k; ++i) As.push_back(random_signed(f, prg, c.rows * c.inner, bits));
    for (int i = 0; i < k; ++i) Bs.push_back(random_signed(f, prg, c.inner * c.cols, bits));
    auto Ash = share_slot_matrices(cfg, c.rows, c.inner, As, prg);
    auto Bsh = share_slot_matrices(cfg, c.inner, c.cols, Bs, prg);
    pr.inputs = As;
    pr.inputs.insert(pr.inputs.end(), Bs.begin(), Bs.end());
    pr.manifest = budget_pmat(cfg, c.rows * c.cols);
    pr.body = [Ash, Bsh](Party& p, int j) -> Outputs { return {pmat_mult_trunc(p, Ash[j], Bsh[j]).shares}; };
  } else if (name == "random_bits") {
    pr.body = [B](Party& p, int) -> Outputs {
      PhaseScope scope(p.comm, Phase::kOffline);
      return {gen_random_bits(p, B)};
    };
  } else if (name == "trunc_triples" || name == "vm_tuples") {
    const bool trunc = name == "trunc_triples";
    pr.body = [B, trunc, d](Party& p, int) -> Outputs {
      PhaseScope scope(p.comm, Phase::kOffline);
      auto t = trunc ? gen_trunc_triples(p, B) : gen_vm_tuples(p, B);
      return {flatten_r(t, 2 * d), r_primes(t, d)};
    };
  } else if (name == "pmat_masks") {
    pr.body = [B, d](Party& p, int) -> Outputs {
      PhaseScope scope(p.comm, Phase::kOffline);
      auto m = gen_pmat_masks(p, B);
      ShareVec r{{}, 2 * d}, rp{{}, d};
      for (const auto& x : m) {
        r.values.push_back(x.r);
        rp.values.push_back(x.r_prime);
      }
      return {r, rp};
    };
  } else if (name == "pack_trans_masks") {
    pr.body = [B, d, k](Party& p, int) -> Outputs {
      PhaseScope scope(p.comm, Phase::kOffline);
      auto m = gen_pack_trans_masks(p, B);
      Outputs out(k + 1, ShareVec{{}, d});
      for (const auto& x : m) {
        for (int i = 0; i < k; ++i) out[i].values.push_back(x.r_const[i]);
        out[k].values.push_back(x.r);
      }
      return out;
    };
  } else {
    throw Error(Errc::kInvalidConfig, "unknown protocol '" + name + "'");
  }
  return pr;
}

}  // namespace

const std::vector<std::string>& protocols() { return kProtocols; }

bool is_generator(const std::string& p) {
  return p == "random_bits" || p == "trunc_triples" || p == "vm_tuples" || p == "pmat_masks" ||
         p == "pack_trans_masks";
}

ProtocolTrial run_protocol(const ProtocolCase& c, const PackingConfig& cfg, int ell_x,
                           const RunOptions& opt) {
  Prg prg(opt.seed, "bench.inputs");
  Prepared pr = prepare(c, cfg, prg);
  const int n = cfg.n();
  std::vector<OfflineStore> stores = opt.offline == OfflineMode::kDealer
                                         ? dealer_generate(cfg, ell_x, pr.manifest, opt.seed)
                                         : std::vector<OfflineStore>(n);
  std::vector<Outputs> outs(n);
  std::vector<char> drained(n, 0);
  std::vector<ChannelStats> stats;
  const auto start = std::chrono::steady_clock::now();
  run_parties(n, opt.net, [&](Comm& comm) {
    const int j = comm.self() - 1;
    Party p(cfg, ell_x, comm, stores[j], opt.seed);
    if (opt.offline == OfflineMode::kInteractive && !pr.manifest.empty()) {
      generate_interactive(p, pr.manifest);
    }
    outs[j] = pr.body(p, j);
    drained[j] = stores[j].empty();
  }, &stats);
  ProtocolTrial t;
  t.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  t.inputs = std::move(pr.inputs);
  t.stores_drained = std::all_of(drained.begin(), drained.end(), [](char x) { return x != 0; });
  std::vector<StatsPoint> before(n), after;
  for (const auto& s : stats) after.push_back(snapshot(s));
  t.online = summarize(before, after, Phase::kOnline);
  t.offline = summarize(before, after, Phase::kOffline);
  Vec column(n);
  for (std::size_t o = 0; o < outs[0].size(); ++o) {
    Vec opened;
    const int degree = outs[0][o].degree;
    for (std::size_t b = 0; b < outs[0][o].size(); ++b) {
      for (int j = 0; j < n; ++j) column[j] = outs[j][o].values[b];
      auto s = cfg.reconstruct(cfg.packed_plan(degree), column);
      opened.insert(opened.end(), s.begin(), s.begin() + cfg.k());
    }
    t.outputs.push_back(std::move(opened));
  }
  return t;
}

ProtocolCost predicted_online(const ProtocolCase& c, const PackingConfig& cfg) {
  const std::string& p = c.protocol;
  if (p == "pmult_dn") return cost_pmult_dn(cfg, c.batch);
  if (p == "vec_mat_mult" || p == "vec_mat_mult_trunc") return cost_vec_mat(cfg, c.cols);
  if (p == "pmat_mult_trunc") return cost_pmat(cfg, c.rows * c.cols);
  if (p == "pack_trans") return cost_pack_trans(cfg, c.batch);
  if (p == "xor") return cost_xor(cfg, c.batch);
  if (p == "pre_mult" || p == "pre_or") return cost_pre_mult(cfg, c.width, c.batch);
  if (p == "bitwise_lt") return cost_bitwise_lt(cfg, c.batch);
  if (p == "drelu") return cost_drelu(cfg, c.batch);
  if (p == "relu") return cost_relu(cfg, c.batch);
  if (p == "maxpool") return cost_maxpool(cfg, c.width, c.batch);
  if (is_generator(p)) return {};
  throw Error(Errc::kInvalidConfig, "unknown protocol '" + p + "'");
}

std::optional<ProtocolCost> predicted_offline(const ProtocolCase& c, const PackingConfig& cfg,
                                              OfflineMode mode) {
  const std::string& p = c.protocol;
  if (mode == OfflineMode::kDealer) return ProtocolCost{};
  if (p == "random_bits") return cost_random_bits(cfg, c.batch);
  if (p == "trunc_triples") return cost_trunc_triples(cfg, c.batch);
  if (p == "vm_tuples") return cost_vm_tuples(cfg, c.batch);
  if (p == "pmat_masks") return cost_pmat_masks(cfg, c.batch);
  if (p == "pack_trans_masks") return cost_pack_trans_masks(cfg, c.batch);
  return std::nullopt;
}

ProtocolCase default_case(const std::string& protocol, const PackingConfig& cfg, std::size_t scale) {
  ProtocolCase c;
  c.protocol = protocol;
  c.batch = scale;
  if (protocol == "vec_mat_mult" || protocol == "vec_mat_mult_trunc") {
    c.rows = 8 * scale;
    c.cols = 8 * scale;
  } else if (protocol == "pmat_mult_trunc") {
    c.rows = 2 * scale;
    c.inner = 4;
    c.cols = 2 * scale;
  } else if (protocol == "pre_mult" || protocol == "pre_or") {
    c.width = static_cast<std::size_t>(cfg.field().ell());
  } else if (protocol == "maxpool") {
    c.width = 4;
  }
  predicted_online(c, cfg);  // validates the name
  return c;
}

}  // namespace pssnn::bench
