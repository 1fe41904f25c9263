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

#include "pssnn/offline.h"

#include <string>

#include "pssnn/error.h"

namespace pssnn {

namespace {

constexpr int kZeroSquareAttempts = 8;

std::size_t width(const PackingConfig& cfg, const ExtractComponent& c) {
  return c.position == kPackedPositions ? static_cast<std::size_t>(cfg.k()) : 1;
}

std::vector<FieldElement> random_vec(const Field& f, Prg& prg, int len) {
  std::vector<FieldElement> v(len);
  for (auto& x : v) x = prg.next_field(f);
  return v;
}

ShareVec slice(const std::vector<FieldElement>& v, std::size_t count, int degree) {
  return ShareVec{std::vector<FieldElement>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(count)), degree};
}

std::vector<DtPair> zip_pairs(const std::vector<FieldElement>& from,
                              const std::vector<FieldElement>& to, std::size_t count) {
  std::vector<DtPair> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = {from[i], to[i]};
  return out;
}

ExtractJob dt_job(const PackingConfig& cfg, const DtKey& key, std::size_t count) {
  ExtractJob job;
  job.components = {{key.position, key.from}, {key.position, key.to}};
  job.passes = passes_for(cfg, count);
  const int w = key.packed() ? cfg.k() : 1;
  const Field f = cfg.field();
  job.secrets = [f, w](Prg& prg) {
    auto s = random_vec(f, prg, w);
    return std::vector<std::vector<FieldElement>>{s, s};
  };
  return job;
}

FieldElement pow2(const Field& f, int i) { return f.from_u64(std::uint64_t{1} << i); }

// Weighted bit composition sum_{i=lo}^{hi-1} 2^(i-lo) * bits[base + i].
std::vector<FieldElement> compose(const Field& f, const ShareVec& bits, std::size_t count, int ell,
                                  int lo) {
  std::vector<FieldElement> out(count, f.zero());
  for (std::size_t t = 0; t < count; ++t) {
    for (int i = lo; i < ell; ++i) {
      out[t] = f.mul_add(out[t], pow2(f, i - lo), bits.values[t * ell + i]);
    }
  }
  return out;
}

struct BitsResult {
  ShareVec bits;
  std::vector<std::vector<std::vector<FieldElement>>> extra;
};

// RandomBits with optional extra extraction jobs folded into its first round.
BitsResult random_bits_with(Party& p, std::size_t count, std::vector<ExtractJob> extra) {
  const auto& cfg = p.cfg;
  const Field& f = p.field();
  const int d = cfg.d(), k = cfg.k();
  const DtKey square_key{kPackedPositions, 2 * d, d};
  const DtKey c_key{kPackedPositions, d + k - 1, d};
  const FieldElement inv2 = f.inv(f.from_u64(2));

  BitsResult result;
  result.bits.degree = d;
  std::size_t need = count;
  for (int attempt = 0; attempt < kZeroSquareAttempts && need > 0; ++attempt) {
    std::vector<ExtractJob> jobs;
    ExtractJob a_job;
    a_job.components = {{kPackedPositions, d}};
    a_job.passes = passes_for(cfg, need);
    a_job.secrets = [f, k](Prg& prg) {
      return std::vector<std::vector<FieldElement>>{random_vec(f, prg, k)};
    };
    jobs.push_back(a_job);
    jobs.push_back(dt_job(cfg, square_key, need));
    jobs.push_back(dt_job(cfg, c_key, need));
    if (attempt == 0) {
      for (auto& e : extra) jobs.push_back(std::move(e));
    }
    auto out = extract_random(p, jobs);
    if (attempt == 0) result.extra.assign(out.begin() + 3, out.end());

    ShareVec a = slice(out[0][0], need, d);
    auto sq_pairs = zip_pairs(out[1][0], out[1][1], need);
    auto c_pairs = zip_pairs(out[2][0], out[2][1], need);

    ShareVec a2 = degree_trans_with(p, mul_local(cfg, a, a), sq_pairs, square_key);
    auto opened = open_to_all(p.comm, cfg, a2);

    ShareVec c{{}, d + k - 1};
    std::vector<DtPair> kept_pairs;
    std::vector<FieldElement> pub(k);
    for (std::size_t b = 0; b < need; ++b) {
      bool zero = false;
      for (int i = 0; i < k; ++i) {
        FieldElement v = opened[b * k + i];
        if (v.value == 0) {
          zero = true;
          break;
        }
        pub[i] = f.inv(f.sqrt_canonical(v));
      }
      if (zero) continue;
      c.values.push_back(f.mul(a.values[b], p.cfg.public_vector_share(p.id(), pub)));
      kept_pairs.push_back(c_pairs[b]);
    }
    ShareVec cd = degree_trans_with(p, c, kept_pairs, c_key);
    for (auto v : cd.values) result.bits.values.push_back(f.mul(f.add(v, f.one()), inv2));
    need -= cd.size();
  }
  if (need > 0) throw Error(Errc::kZeroSquare, "random bit generation kept hitting zero squares");
  return result;
}

}  // namespace

std::vector<std::vector<FieldElement>> vandermonde(const Field& f, int n, int cols) {
  std::vector<std::vector<FieldElement>> v(n, std::vector<FieldElement>(cols));
  for (int i = 0; i < n; ++i) {
    FieldElement x = f.from_u64(static_cast<std::uint64_t>(i + 1));
    FieldElement acc = f.one();
    for (int m = 0; m < cols; ++m) {
      v[i][m] = acc;
      acc = f.mul(acc, x);
    }
  }
  return v;
}

std::size_t passes_for(const PackingConfig& cfg, std::size_t count) {
  const std::size_t e = static_cast<std::size_t>(cfg.n() - cfg.t());
  return (count + e - 1) / e;
}

std::vector<std::vector<std::vector<FieldElement>>> extract_random(
    Party& p, const std::vector<ExtractJob>& jobs) {
  const auto& cfg = p.cfg;
  const Field& f = p.field();
  const int n = cfg.n();
  const int e = n - cfg.t();

  // Deal this party's contributions; out[j] collects what goes to party j+1.
  std::vector<std::vector<FieldElement>> out(n);
  for (const auto& job : jobs) {
    std::vector<const SharingPlan*> plans;
    for (const auto& c : job.components) plans.push_back(&plan_for(cfg, c.position, c.degree));
    for (std::size_t q = 0; q < job.passes; ++q) {
      auto secrets = job.secrets(p.prg);
      if (secrets.size() != job.components.size()) {
        throw Error(Errc::kShapeMismatch, "secret generator returned the wrong arity");
      }
      for (std::size_t c = 0; c < job.components.size(); ++c) {
        if (secrets[c].size() != width(cfg, job.components[c])) {
          throw Error(Errc::kShapeMismatch, "secret vector has the wrong width");
        }
        auto shares = cfg.deal(*plans[c], secrets[c], p.prg);
        for (int j = 0; j < n; ++j) out[j].push_back(shares[j]);
      }
    }
  }
  const std::size_t count = out[0].size();
  auto in = p.comm.exchange_all(out, count);

  const auto van = vandermonde(f, n, e);
  std::vector<std::vector<std::vector<FieldElement>>> result;
  std::size_t at = 0;
  for (const auto& job : jobs) {
    const std::size_t comps = job.components.size();
    std::vector<std::vector<FieldElement>> per(comps);
    for (auto& v : per) v.reserve(job.passes * e);
    for (std::size_t q = 0; q < job.passes; ++q) {
      for (std::size_t c = 0; c < comps; ++c) {
        const std::size_t idx = at + q * comps + c;
        for (int m = 0; m < e; ++m) {
          FieldElement acc = f.zero();
          for (int i = 0; i < n; ++i) acc = f.mul_add(acc, van[i][m], in[i][idx]);
          per[c].push_back(acc);
        }
      }
    }
    // Reorder from (pass, component, m) to component-major, pass-major lists.
    result.push_back(std::move(per));
    at += job.passes * comps;
  }
  return result;
}

ShareVec gen_random(Party& p, std::size_t count, int degree) {
  if (count == 0) return {{}, degree};
  const Field f = p.field();
  const int k = p.cfg.k();
  ExtractJob job;
  job.components = {{kPackedPositions, degree}};
  job.passes = passes_for(p.cfg, count);
  job.secrets = [f, k](Prg& prg) {
    return std::vector<std::vector<FieldElement>>{random_vec(f, prg, k)};
  };
  auto out = extract_random(p, {job});
  return slice(out[0][0], count, degree);
}

ShareVec gen_zero_share(Party& p, std::size_t count, int degree, OfflineMode mode) {
  if (mode == OfflineMode::kDealer) return ShareVec{p.store.take_zero(degree, count), degree};
  if (count == 0) return {{}, degree};
  const int k = p.cfg.k();
  ExtractJob job;
  job.components = {{kPackedPositions, degree}};
  job.passes = passes_for(p.cfg, count);
  job.secrets = [k](Prg&) {
    return std::vector<std::vector<FieldElement>>{std::vector<FieldElement>(k)};
  };
  auto out = extract_random(p, {job});
  return slice(out[0][0], count, degree);
}

std::vector<DtPair> gen_dt_pairs(Party& p, const DtKey& key, std::size_t count) {
  if (count == 0) return {};
  auto out = extract_random(p, {dt_job(p.cfg, key, count)});
  return zip_pairs(out[0][0], out[0][1], count);
}

std::vector<VmTuple> gen_vm_tuples(Party& p, std::size_t count) {
  if (count == 0) return {};
  const auto& cfg = p.cfg;
  const Field f = cfg.field();
  const int k = cfg.k(), d = cfg.d(), t = cfg.t();
  ExtractJob job;
  for (int u = 0; u < k; ++u) job.components.push_back({kPackedPositions, 2 * d});
  for (int u = 0; u < k; ++u) job.components.push_back({cfg.secret_position(u).value, t});
  job.passes = passes_for(cfg, count);
  job.secrets = [f, k](Prg& prg) {
    std::vector<std::vector<FieldElement>> s;
    std::vector<std::vector<FieldElement>> sums;
    for (int u = 0; u < k; ++u) {
      auto block = random_vec(f, prg, k);
      FieldElement sum = f.zero();
      for (auto v : block) sum = f.add(sum, v);
      s.push_back(std::move(block));
      sums.push_back({sum});
    }
    s.insert(s.end(), sums.begin(), sums.end());
    return s;
  };
  auto out = extract_random(p, {job});
  std::vector<VmTuple> tuples(count);
  for (std::size_t i = 0; i < count; ++i) {
    tuples[i].r.resize(k);
    FieldElement rp = f.zero();
    for (int u = 0; u < k; ++u) {
      tuples[i].r[u] = out[0][u][i];
      rp = f.mul_add(rp, cfg.unit_vector_share(p.id(), u), out[0][k + u][i]);
    }
    tuples[i].r_prime = rp;
  }
  return tuples;
}

ShareVec gen_random_bits(Party& p, std::size_t count) {
  if (count == 0) return {{}, p.cfg.d()};
  return random_bits_with(p, count, {}).bits;
}

std::vector<VmTuple> gen_trunc_triples(Party& p, std::size_t count) {
  if (count == 0) return {};
  const auto& cfg = p.cfg;
  const Field f = cfg.field();
  const int k = cfg.k(), d = cfg.d(), ell = p.ell();

  std::vector<ExtractJob> extra;
  ExtractJob w_job;
  for (int u = 1; u < k; ++u) w_job.components.push_back({kPackedPositions, d});
  w_job.passes = passes_for(cfg, count);
  w_job.secrets = [f, k](Prg& prg) {
    std::vector<std::vector<FieldElement>> s;
    for (int u = 1; u < k; ++u) s.push_back(random_vec(f, prg, k));
    return s;
  };
  extra.push_back(w_job);
  std::vector<DtKey> keys;
  for (int u = 0; u < k; ++u) {
    keys.push_back({cfg.secret_position(u).value, 2 * d, 2 * d - k + 1});
    extra.push_back(dt_job(cfg, keys.back(), count * k));
  }
  auto res = random_bits_with(p, count * ell, std::move(extra));

  auto q = compose(f, res.bits, count, ell, 0);
  auto r_prime = compose(f, res.bits, count, ell, p.ell_x);
  // w[u][tuple]
  std::vector<std::vector<FieldElement>> w(k, std::vector<FieldElement>(count));
  for (std::size_t i = 0; i < count; ++i) {
    FieldElement rest = q[i];
    for (int u = 1; u < k; ++u) {
      w[u][i] = res.extra[0][u - 1][i];
      rest = f.sub(rest, w[u][i]);
    }
    w[0][i] = rest;
  }
  // Slot j of w^u, moved to position s_u: Shamir degree 2d, index i * k + j.
  std::vector<ShareVec> shamir(k, ShareVec{{}, 2 * d});
  std::vector<std::vector<DtPair>> pairs(k);
  for (int u = 0; u < k; ++u) {
    for (std::size_t i = 0; i < count; ++i) {
      for (int j = 0; j < k; ++j) {
        PackedShare ws{p.id(), w[u][i], d};
        shamir[u].values.push_back(sh_convert_slot(cfg, ws, j, cfg.secret_position(u)).value);
      }
    }
    pairs[u] = zip_pairs(res.extra[1 + u][0], res.extra[1 + u][1], count * k);
  }
  auto lowered = degree_trans_many(p, shamir, pairs, keys);

  std::vector<VmTuple> tuples(count);
  for (std::size_t i = 0; i < count; ++i) {
    tuples[i].r.assign(k, f.zero());
    for (int j = 0; j < k; ++j) {
      for (int u = 0; u < k; ++u) {
        tuples[i].r[j] = f.mul_add(tuples[i].r[j], cfg.unit_vector_share(p.id(), u),
                                   lowered[u].values[i * k + j]);
      }
    }
    tuples[i].r_prime = r_prime[i];
  }
  return tuples;
}

std::vector<PMatMask> gen_pmat_masks(Party& p, std::size_t count) {
  if (count == 0) return {};
  const auto& cfg = p.cfg;
  const Field f = cfg.field();
  const int k = cfg.k(), d = cfg.d(), ell = p.ell();
  ExtractJob zero_job;
  zero_job.components = {{kPackedPositions, 2 * d}};
  zero_job.passes = passes_for(cfg, count);
  zero_job.secrets = [k](Prg&) {
    return std::vector<std::vector<FieldElement>>{std::vector<FieldElement>(k)};
  };
  auto res = random_bits_with(p, count * ell, {zero_job});
  auto r_prime = compose(f, res.bits, count, ell, p.ell_x);
  std::vector<PMatMask> masks(count);
  for (std::size_t i = 0; i < count; ++i) {
    FieldElement r = res.extra[0][0][i];
    for (int b = 0; b < ell; ++b) {
      FieldElement bit = res.bits.values[i * ell + b];
      r = f.add(r, f.mul(pow2(f, b), f.mul(bit, bit)));
    }
    masks[i] = {r, r_prime[i]};
  }
  return masks;
}

std::vector<PackTransMask> gen_pack_trans_masks(Party& p, std::size_t count) {
  if (count == 0) return {};
  const auto& cfg = p.cfg;
  const Field f = cfg.field();
  const int k = cfg.k(), d = cfg.d();
  const DtKey key{kPackedPositions, d + k - 1, d};
  ExtractJob job;
  for (int i = 0; i < k; ++i) job.components.push_back({kPackedPositions, d});
  job.passes = passes_for(cfg, count);
  job.secrets = [f, k](Prg& prg) {
    std::vector<std::vector<FieldElement>> s;
    for (int i = 0; i < k; ++i) s.push_back(std::vector<FieldElement>(k, prg.next_field(f)));
    return s;
  };
  auto out = extract_random(p, {job, dt_job(cfg, key, count)});
  ShareVec diag{{}, d + k - 1};
  for (std::size_t m = 0; m < count; ++m) {
    FieldElement acc = f.zero();
    for (int i = 0; i < k; ++i) acc = f.mul_add(acc, cfg.unit_vector_share(p.id(), i), out[0][i][m]);
    diag.values.push_back(acc);
  }
  auto r = degree_trans_with(p, diag, zip_pairs(out[1][0], out[1][1], count), key);
  std::vector<PackTransMask> masks(count);
  for (std::size_t m = 0; m < count; ++m) {
    for (int i = 0; i < k; ++i) masks[m].r_const.push_back(out[0][i][m]);
    masks[m].r = r.values[m];
  }
  return masks;
}

void generate_interactive(Party& p, const Manifest& m) {
  PhaseScope scope(p.comm, Phase::kOffline);
  if (!m.dt_pairs.empty()) {
    std::vector<ExtractJob> jobs;
    std::vector<std::pair<DtKey, std::uint64_t>> order(m.dt_pairs.begin(), m.dt_pairs.end());
    for (const auto& [key, c] : order) jobs.push_back(dt_job(p.cfg, key, c));
    auto out = extract_random(p, jobs);
    for (std::size_t i = 0; i < order.size(); ++i) {
      p.store.add_dt(order[i].first, zip_pairs(out[i][0], out[i][1], order[i].second));
    }
  }
  p.store.add_vm(gen_vm_tuples(p, m.vm_tuples));
  p.store.add_trunc(gen_trunc_triples(p, m.trunc_tuples));
  p.store.add_bits(gen_random_bits(p, m.random_bits).values);
  p.store.add_pmat(gen_pmat_masks(p, m.pmat_masks));
  p.store.add_pack_trans(gen_pack_trans_masks(p, m.pack_trans_masks));
  for (const auto& [deg, c] : m.zero_shares) {
    p.store.add_zero(deg, gen_zero_share(p, c, deg, OfflineMode::kInteractive).values);
  }
}

std::vector<OfflineStore> dealer_generate(const PackingConfig& cfg, int ell_x, const Manifest& m,
                                          std::uint64_t seed) {
  const Field& f = cfg.field();
  const int n = cfg.n(), k = cfg.k(), d = cfg.d(), ell = f.ell();
  Prg prg(seed, "dealer");
  std::vector<OfflineStore> stores(n);
  auto deal = [&](const SharingPlan& plan, const std::vector<FieldElement>& secrets) {
    return cfg.deal(plan, secrets, prg);
  };
  auto random_ell_bits = [&]() {
    std::uint64_t mask = (std::uint64_t{1} << ell) - 1;
    return prg.next_u64() & mask;
  };

  for (const auto& [key, count] : m.dt_pairs) {
    const auto& from = plan_for(cfg, key.position, key.from);
    const auto& to = plan_for(cfg, key.position, key.to);
    std::vector<std::vector<DtPair>> per(n);
    for (std::uint64_t c = 0; c < count; ++c) {
      auto s = random_vec(f, prg, key.packed() ? k : 1);
      auto a = deal(from, s), b = deal(to, s);
      for (int j = 0; j < n; ++j) per[j].push_back({a[j], b[j]});
    }
    for (int j = 0; j < n; ++j) stores[j].add_dt(key, std::move(per[j]));
  }

  auto tuples = [&](std::uint64_t count, bool trunc) {
    std::vector<std::vector<VmTuple>> per(n);
    for (std::uint64_t c = 0; c < count; ++c) {
      std::vector<std::vector<FieldElement>> blocks(k);
      std::vector<FieldElement> sums(k);
      for (int j = 0; j < k; ++j) {
        if (trunc) {
          // Block j packs (w^0_j, ..., w^{k-1}_j) summing to an ell-bit q_j.
          std::uint64_t q = random_ell_bits();
          blocks[j] = random_vec(f, prg, k);
          FieldElement rest = f.from_u64(q);
          for (int u = 1; u < k; ++u) rest = f.sub(rest, blocks[j][u]);
          blocks[j][0] = rest;
          sums[j] = f.from_u64(q >> ell_x);
        } else {
          blocks[j] = random_vec(f, prg, k);
          FieldElement s = f.zero();
          for (auto v : blocks[j]) s = f.add(s, v);
          sums[j] = s;
        }
      }
      std::vector<VmTuple> t(n);
      for (int j = 0; j < k; ++j) {
        auto sh = deal(cfg.packed_plan(2 * d), blocks[j]);
        for (int i = 0; i < n; ++i) t[i].r.push_back(sh[i]);
      }
      auto rp = deal(cfg.packed_plan(d), sums);
      for (int i = 0; i < n; ++i) {
        t[i].r_prime = rp[i];
        per[i].push_back(std::move(t[i]));
      }
    }
    return per;
  };
  auto vm = tuples(m.vm_tuples, false);
  auto tr = tuples(m.trunc_tuples, true);
  for (int j = 0; j < n; ++j) {
    stores[j].add_vm(std::move(vm[j]));
    stores[j].add_trunc(std::move(tr[j]));
  }

  {
    std::vector<std::vector<FieldElement>> per(n);
    for (std::uint64_t c = 0; c < m.random_bits; ++c) {
      std::vector<FieldElement> bits(k);
      for (auto& b : bits) b = {prg.next_u64() & 1};
      auto sh = deal(cfg.packed_plan(d), bits);
      for (int j = 0; j < n; ++j) per[j].push_back(sh[j]);
    }
    for (int j = 0; j < n; ++j) stores[j].add_bits(std::move(per[j]));
  }
  {
    std::vector<std::vector<PMatMask>> per(n);
    for (std::uint64_t c = 0; c < m.pmat_masks; ++c) {
      std::vector<FieldElement> r(k), rp(k);
      for (int i = 0; i < k; ++i) {
        std::uint64_t q = random_ell_bits();
        r[i] = f.from_u64(q);
        rp[i] = f.from_u64(q >> ell_x);
      }
      auto a = deal(cfg.packed_plan(2 * d), r), b = deal(cfg.packed_plan(d), rp);
      for (int j = 0; j < n; ++j) per[j].push_back({a[j], b[j]});
    }
    for (int j = 0; j < n; ++j) stores[j].add_pmat(std::move(per[j]));
  }
  {
    std::vector<std::vector<PackTransMask>> per(n);
    for (std::uint64_t c = 0; c < m.pack_trans_masks; ++c) {
      auto r = random_vec(f, prg, k);
      std::vector<PackTransMask> masks(n);
      for (int i = 0; i < k; ++i) {
        auto sh = deal(cfg.packed_plan(d), std::vector<FieldElement>(k, r[i]));
        for (int j = 0; j < n; ++j) masks[j].r_const.push_back(sh[j]);
      }
      auto sh = deal(cfg.packed_plan(d), r);
      for (int j = 0; j < n; ++j) {
        masks[j].r = sh[j];
        per[j].push_back(std::move(masks[j]));
      }
    }
    for (int j = 0; j < n; ++j) stores[j].add_pack_trans(std::move(per[j]));
  }
  for (const auto& [deg, count] : m.zero_shares) {
    std::vector<std::vector<FieldElement>> per(n);
    for (std::uint64_t c = 0; c < count; ++c) {
      auto sh = deal(cfg.packed_plan(deg), std::vector<FieldElement>(k));
      for (int j = 0; j < n; ++j) per[j].push_back(sh[j]);
    }
    for (int j = 0; j < n; ++j) stores[j].add_zero(deg, std::move(per[j]));
  }
  return stores;
}

// ---- closed forms ----------------------------------------------------------

namespace {

std::uint64_t extraction(const PackingConfig& cfg, std::uint64_t passes_times_components) {
  const std::uint64_t n = cfg.n();
  return n * (n - 1) * passes_times_components;
}

std::uint64_t relay(const PackingConfig& cfg, std::uint64_t in, std::uint64_t out) {
  return static_cast<std::uint64_t>(cfg.n() - 1) * (in + out);
}

std::uint64_t open_cost(const PackingConfig& cfg, std::uint64_t b) {
  return relay(cfg, b, b * cfg.k());
}

// Random bits plus 'extra' already-computed extraction units in round one.
ProtocolCost bits_cost(const PackingConfig& cfg, std::size_t count, std::uint64_t extra_units) {
  std::uint64_t units = passes_for(cfg, count) * 5 + extra_units;
  ProtocolCost c;
  c.rounds = 4;
  c.elements = extraction(cfg, units) + relay(cfg, count, count) + open_cost(cfg, count) +
               relay(cfg, count, count);
  return c;
}

}  // namespace

ProtocolCost cost_random_bits(const PackingConfig& cfg, std::size_t count) {
  return bits_cost(cfg, count, 0);
}

ProtocolCost cost_trunc_triples(const PackingConfig& cfg, std::size_t count) {
  const std::uint64_t k = cfg.k();
  const std::size_t ell = cfg.field().ell();
  std::uint64_t extra = passes_for(cfg, count) * (k - 1) + k * passes_for(cfg, count * k) * 2;
  ProtocolCost c = bits_cost(cfg, count * ell, extra);
  c.rounds += 1;
  c.elements += relay(cfg, k * k * count, k * k * count);
  return c;
}

ProtocolCost cost_vm_tuples(const PackingConfig& cfg, std::size_t count) {
  return {1, extraction(cfg, passes_for(cfg, count) * 2 * cfg.k())};
}

ProtocolCost cost_pmat_masks(const PackingConfig& cfg, std::size_t count) {
  const std::size_t ell = cfg.field().ell();
  return bits_cost(cfg, count * ell, passes_for(cfg, count));
}

ProtocolCost cost_pack_trans_masks(const PackingConfig& cfg, std::size_t count) {
  const std::uint64_t k = cfg.k();
  ProtocolCost c;
  c.rounds = 2;
  c.elements = extraction(cfg, passes_for(cfg, count) * (k + 2)) + relay(cfg, count, count);
  return c;
}

}  // namespace pssnn
