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

#include "pssnn/linear.h"

#include <cmath>

#include "bigint_oracle.h"
#include "doctest.h"
#include "harness.h"
#include "pssnn/error.h"
#include "pssnn/offline.h"

using namespace pssnn;
using harness::RunCost;

namespace {

const std::vector<std::pair<int, int>> kGrid = {{5, 2}, {7, 2}, {7, 3}, {11, 2}, {11, 3}};
using Vec = std::vector<FieldElement>;

Vec random_vec(const Field& f, Prg& prg, std::size_t len) {
  Vec v(len);
  for (auto& x : v) x = prg.next_field(f);
  return v;
}

Vec fixed(const Field& f, Prg& prg, std::size_t len, double lo, double hi, int ell_x) {
  Vec v(len);
  for (auto& x : v) {
    double u = static_cast<double>(prg.next_u64() >> 11) / 9007199254740992.0;
    x = f.from_int(std::llround((lo + (hi - lo) * u) * std::ldexp(1.0, ell_x)));
  }
  return v;
}

// Plaintext a * A with big-integer arithmetic mod p.
Vec plain_vec_mat(const Field& f, const Vec& a, const Vec& A, std::size_t rows, std::size_t cols) {
  Vec out(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    boost::multiprecision::cpp_int s = 0;
    for (std::size_t r = 0; r < rows; ++r) s += boost::multiprecision::cpp_int(a[r].value) * A[r * cols + c].value;
    out[c] = {oracle::mod(s, f.modulus())};
  }
  return out;
}

// Signed plaintext a * A (entries interpreted as centered integers).
std::vector<std::int64_t> signed_vec_mat(const Field& f, const Vec& a, const Vec& A,
                                         std::size_t rows, std::size_t cols) {
  std::vector<std::int64_t> out(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    __int128 s = 0;
    for (std::size_t r = 0; r < rows; ++r) {
      s += static_cast<__int128>(f.to_signed(a[r])) * f.to_signed(A[r * cols + c]);
    }
    out[c] = static_cast<std::int64_t>(s);
  }
  return out;
}

std::int64_t floor_shift(std::int64_t v, int s) { return v >> s; }

struct VmCase {
  std::size_t rows, cols;
  Vec a, A;
};

// Runs vec_mat_mult (optionally truncating) over a batch of instances in one
// session; returns the revealed outputs per instance.
std::vector<Vec> run_vec_mat(const PackingConfig& cfg, int ell_x, const std::vector<VmCase>& cases,
                             bool trunc, RunCost* cost = nullptr) {
  Manifest m;
  Prg prg(17, "linear-test");
  std::vector<std::vector<PackedVector>> as;
  std::vector<std::vector<PackedMatrix>> Ms;
  for (const auto& c : cases) {
    m += budget_vec_mat(cfg, c.cols, trunc);
    as.push_back(share_vector(cfg, c.a, prg));
    Ms.push_back(share_matrix_rows(cfg, c.rows, c.cols, c.A, prg));
  }
  auto stores = dealer_generate(cfg, ell_x, m, 23);
  auto outs = harness::run<std::vector<PackedVector>>(cfg, ell_x, stores, [&](Party& p) {
    std::vector<PackedVector> r;
    const int i = p.id().index - 1;
    for (std::size_t c = 0; c < cases.size(); ++c) {
      r.push_back(trunc ? vec_mat_mult_trunc(p, as[c][i], Ms[c][i]) : vec_mat_mult(p, as[c][i], Ms[c][i]));
    }
    return r;
  }, cost);
  std::vector<Vec> result;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    std::vector<Vec> shares;
    for (auto& o : outs) shares.push_back(o[c].shares.values);
    auto v = harness::open_all(cfg, shares, cfg.d());
    v.resize(cases[c].cols);
    result.push_back(v);
  }
  return result;
}

}  // namespace

TEST_CASE("pmult_dn multiplies slot-wise") {
  for (auto [n, k] : kGrid) {
    PackingConfig cfg(Field(31), n, k);
    const Field& f = cfg.field();
    Prg prg(3, "pmult");
    const std::size_t B = 20;
    Vec x = random_vec(f, prg, B * k), y = random_vec(f, prg, B * k);
    Vec ones(B * k, f.one()), zeros(B * k, f.zero());
    auto xs = share_vector(cfg, x, prg), ys = share_vector(cfg, y, prg);
    auto os = share_vector(cfg, ones, prg), zs = share_vector(cfg, zeros, prg);
    auto stores = dealer_generate(cfg, 0, budget_pmult_dn(cfg, B).scaled(3), 1);
    RunCost cost;
    auto out = harness::run<std::vector<Vec>>(cfg, 0, stores, [&](Party& p) {
      const int i = p.id().index - 1;
      return std::vector<Vec>{pmult_dn(p, xs[i].shares, ys[i].shares).values,
                              pmult_dn(p, os[i].shares, ys[i].shares).values,
                              pmult_dn(p, xs[i].shares, zs[i].shares).values};
    }, &cost);
    auto get = [&](int which) {
      std::vector<Vec> s;
      for (auto& o : out) s.push_back(o[which]);
      return harness::open_all(cfg, s, cfg.d());
    };
    auto prod = get(0);
    for (std::size_t j = 0; j < x.size(); ++j) {
      CHECK(prod[j].value == oracle::mulmod(x[j].value, y[j].value, f.modulus()));
    }
    CHECK(get(1) == y);
    CHECK(get(2) == zeros);
    CHECK(cost.online.rounds == 3);
    CHECK(cost.online.total_elements == 3 * cost_pmult_dn(cfg, B).elements);
  }
}

TEST_CASE("vec_mat_mult examples") {
  PackingConfig cfg(Field(31), 5, 2);
  const Field& f = cfg.field();
  Prg prg(5, "vm-examples");
  std::vector<VmCase> cases;
  // Identity (5x5, padded inside packing).
  Vec a = random_vec(f, prg, 5), I(25, f.zero());
  for (int i = 0; i < 5; ++i) I[i * 5 + i] = f.one();
  cases.push_back({5, 5, a, I});
  // Unit vector picks row 2.
  Vec A = random_vec(f, prg, 5 * 3), e(5, f.zero());
  e[2] = f.one();
  cases.push_back({5, 3, e, A});
  // Random 6x4.
  Vec a6 = random_vec(f, prg, 6), A64 = random_vec(f, prg, 24);
  cases.push_back({6, 4, a6, A64});
  RunCost cost;
  auto out = run_vec_mat(cfg, 0, cases, false, &cost);
  CHECK(out[0] == a);
  CHECK(out[1] == Vec(A.begin() + 6, A.begin() + 9));
  CHECK(out[2] == plain_vec_mat(f, a6, A64, 6, 4));
  CHECK(cost.online.rounds == 3);
  CHECK(cost.online.total_elements ==
        cost_vec_mat(cfg, 5).elements + cost_vec_mat(cfg, 3).elements + cost_vec_mat(cfg, 4).elements);
}

TEST_CASE("vec_mat_mult is exact on 100 random instances per config") {
  for (auto [n, k] : kGrid) {
    CAPTURE(n);
    CAPTURE(k);
    PackingConfig cfg(Field(61), n, k);
    const Field& f = cfg.field();
    Prg prg(n * 10 + k, "vm-random");
    std::vector<VmCase> cases;
    std::uint64_t want = 0;
    for (int t = 0; t < 100; ++t) {
      std::size_t rows = 1 + prg.next_u64() % 9, cols = 1 + prg.next_u64() % 7;
      cases.push_back({rows, cols, random_vec(f, prg, rows), random_vec(f, prg, rows * cols)});
      want += cost_vec_mat(cfg, cols).elements;
    }
    RunCost cost;
    auto out = run_vec_mat(cfg, 0, cases, false, &cost);
    for (std::size_t c = 0; c < cases.size(); ++c) {
      CHECK(out[c] == plain_vec_mat(f, cases[c].a, cases[c].A, cases[c].rows, cases[c].cols));
    }
    CHECK(cost.online.rounds == 100);
    CHECK(cost.online.total_elements == want);
  }
}

TEST_CASE("vec_mat_mult traffic across k at n = 11") {
  const std::size_t u = 64, v = 48;
  std::vector<std::uint64_t> total, scatter;
  for (int k : {2, 3, 4}) {
    PackingConfig cfg(Field(61), 11, k);
    Prg prg(k, "vm-k");
    RunCost cost;
    run_vec_mat(cfg, 0, {{u, v, random_vec(cfg.field(), prg, u), random_vec(cfg.field(), prg, u * v)}},
                false, &cost);
    CHECK(cost.online.total_elements == cost_vec_mat(cfg, v).elements);
    CHECK(cost.online.rounds == 1);
    total.push_back(cost.online.total_elements);
    scatter.push_back(cost.online.p1_sent);
  }
  // P1's resharing shrinks as 1/k; the gather to P1 does not depend on k.
  CHECK(scatter[0] == 2 * scatter[2]);
  CHECK(total[2] < total[1]);
  CHECK(total[1] < total[0]);
}

TEST_CASE("vec_mat_mult_trunc examples") {
  const int ell_x = 13;
  SUBCASE("ones decode to row sums") {
    PackingConfig cfg(Field(61), 5, 2);
    const Field& f = cfg.field();
    const std::size_t u = 6, v = 3;
    Vec a(u, f.from_u64(1 << ell_x)), A(u * v, f.from_u64(1 << ell_x));
    auto out = run_vec_mat(cfg, ell_x, {{u, v, a, A}}, true);
    for (auto x : out[0]) {
      CHECK(std::abs(std::ldexp(static_cast<double>(f.to_signed(x)), -ell_x) - double(u)) <=
            std::ldexp(1.0 + u, -ell_x));
    }
  }
  SUBCASE("zero matrix gives zero exactly") {
    PackingConfig cfg(Field(31), 7, 3);
    const Field& f = cfg.field();
    Prg prg(1, "z");
    auto out = run_vec_mat(cfg, ell_x, {{5, 4, fixed(f, prg, 5, -4, 4, ell_x), Vec(20, f.zero())}}, true);
    CHECK(out[0] == Vec(4, f.zero()));
  }
  SUBCASE("random fixed point within one ulp") {
    PackingConfig cfg(Field(61), 5, 2);
    const Field& f = cfg.field();
    Prg prg(2, "fx");
    std::vector<VmCase> cases;
    for (int t = 0; t < 1000; ++t) {
      cases.push_back({8, 8, fixed(f, prg, 8, -4, 4, ell_x), fixed(f, prg, 64, -4, 4, ell_x)});
    }
    auto out = run_vec_mat(cfg, ell_x, cases, true);
    int bad = 0;
    for (std::size_t c = 0; c < cases.size(); ++c) {
      auto want = signed_vec_mat(f, cases[c].a, cases[c].A, 8, 8);
      for (int j = 0; j < 8; ++j) {
        std::int64_t err = f.to_signed(out[c][j]) - floor_shift(want[j], ell_x);
        if (err < 0 || err > 1) ++bad;
      }
    }
    CHECK(bad <= 1);
  }
}

TEST_CASE("truncation wraparound frequency stays within its bound at ell = 31") {
  const int ell_x = 13;
  PackingConfig cfg(Field(31), 5, 2);
  const Field& f = cfg.field();
  Prg prg(9, "wrap");
  std::vector<VmCase> cases;
  for (int t = 0; t < 10000; ++t) {
    cases.push_back({4, 2, fixed(f, prg, 4, -1, 1, ell_x), fixed(f, prg, 8, -1, 1, ell_x)});
  }
  auto out = run_vec_mat(cfg, ell_x, cases, true);
  double bound = 0;
  int bad = 0;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    auto want = signed_vec_mat(f, cases[c].a, cases[c].A, 4, 2);
    for (int j = 0; j < 2; ++j) {
      bound += std::abs(static_cast<double>(want[j])) / std::ldexp(1.0, 31);
      std::int64_t err = f.to_signed(out[c][j]) - floor_shift(want[j], ell_x);
      if (err < 0 || err > 1) ++bad;
    }
  }
  MESSAGE("wraparounds " << bad << " bound " << bound);
  CHECK(bound > 10);
  CHECK(bad <= bound + 4 * std::sqrt(bound));
}

namespace {

std::vector<Vec> run_pmat(const PackingConfig& cfg, int ell_x, std::size_t u, std::size_t v,
                          std::size_t m, const std::vector<Vec>& As, const std::vector<Vec>& Bs,
                          RunCost* cost = nullptr) {
  Prg prg(4, "pmat");
  auto Ash = share_slot_matrices(cfg, u, v, As, prg);
  auto Bsh = share_slot_matrices(cfg, v, m, Bs, prg);
  auto stores = dealer_generate(cfg, ell_x, budget_pmat(cfg, u * m), 8);
  auto out = harness::run<Vec>(cfg, ell_x, stores, [&](Party& p) {
    const int i = p.id().index - 1;
    auto C = pmat_mult_trunc(p, Ash[i], Bsh[i]);
    CHECK(C.rows == u);
    CHECK(C.cols == m);
    return C.shares.values;
  }, cost);
  auto flat = harness::open_all(cfg, out, cfg.d());
  std::vector<Vec> per(cfg.k(), Vec(u * m));
  for (std::size_t e = 0; e < u * m; ++e) {
    for (int i = 0; i < cfg.k(); ++i) per[i][e] = flat[e * cfg.k() + i];
  }
  return per;
}

}  // namespace

TEST_CASE("pmat_mult_trunc") {
  const int ell_x = 13;
  SUBCASE("scaled identity returns A") {
    PackingConfig cfg(Field(31), 7, 3);
    const Field& f = cfg.field();
    Prg prg(1, "a");
    Vec A = fixed(f, prg, 12, -2, 2, ell_x), I(16, f.zero());
    for (int i = 0; i < 4; ++i) I[i * 4 + i] = f.from_u64(1 << ell_x);
    auto out = run_pmat(cfg, ell_x, 3, 4, 4, {A, A, A}, {I, I, I});
    for (int s = 0; s < 3; ++s) {
      for (std::size_t e = 0; e < A.size(); ++e) {
        CHECK(std::abs(f.to_signed(out[s][e]) - f.to_signed(A[e])) <= 1);
      }
    }
  }
  SUBCASE("zero B gives zero exactly") {
    PackingConfig cfg(Field(31), 5, 2);
    const Field& f = cfg.field();
    Prg prg(2, "b");
    Vec A = fixed(f, prg, 6, -2, 2, ell_x);
    auto out = run_pmat(cfg, ell_x, 2, 3, 2, {A, A}, {Vec(6, f.zero()), Vec(6, f.zero())});
    for (auto& s : out) CHECK(s == Vec(4, f.zero()));
  }
  SUBCASE("random per-slot products, one round, 2um/k per party") {
    for (auto [n, k] : kGrid) {
      PackingConfig cfg(Field(61), n, k);
      const Field& f = cfg.field();
      Prg prg(n + k, "c");
      std::vector<Vec> As, Bs;
      for (int i = 0; i < k; ++i) {
        As.push_back(fixed(f, prg, 16, -2, 2, ell_x));
        Bs.push_back(fixed(f, prg, 16, -2, 2, ell_x));
      }
      RunCost cost;
      auto out = run_pmat(cfg, ell_x, 4, 4, 4, As, Bs, &cost);
      for (int i = 0; i < k; ++i) {
        for (int r = 0; r < 4; ++r) {
          for (int c = 0; c < 4; ++c) {
            std::int64_t s = 0;
            for (int g = 0; g < 4; ++g) s += f.to_signed(As[i][r * 4 + g]) * f.to_signed(Bs[i][g * 4 + c]);
            std::int64_t err = f.to_signed(out[i][r * 4 + c]) - floor_shift(s, ell_x);
            CHECK(err >= 0);
            CHECK(err <= 1);
          }
        }
      }
      CHECK(cost.online.rounds == 1);
      CHECK(cost.online.total_elements == cost_pmat(cfg, 16).elements);
      // u * m * k outputs in total, 2um/k of them per non-P1 party.
      CHECK(cost.online.max_other_sent + cost.online.max_other_received == 2 * 16 * k / k);
    }
  }
}

TEST_CASE("pack_trans broadcasts each slot") {
  auto run_pt = [](const PackingConfig& cfg, const Vec& x, RunCost* cost) {
    Prg prg(6, "pt");
    auto xs = share_vector(cfg, x, prg);
    auto stores = dealer_generate(cfg, 0, budget_pack_trans(cfg, xs[0].shares.size()), 2);
    auto out = harness::run<std::vector<Vec>>(cfg, 0, stores, [&](Party& p) {
      std::vector<Vec> r;
      for (auto& s : pack_trans(p, xs[p.id().index - 1].shares)) r.push_back(s.values);
      return r;
    }, cost);
    std::vector<Vec> per;
    for (int i = 0; i < cfg.k(); ++i) {
      std::vector<Vec> s;
      for (auto& o : out) s.push_back(o[i]);
      per.push_back(harness::open_all(cfg, s, cfg.d()));
    }
    return per;
  };
  PackingConfig cfg(Field(31), 7, 3);
  const Field& f = cfg.field();
  RunCost cost;
  auto out = run_pt(cfg, {{1}, {2}, {3}}, &cost);
  CHECK(out[0] == Vec{{1}, {1}, {1}});
  CHECK(out[1] == Vec{{2}, {2}, {2}});
  CHECK(out[2] == Vec{{3}, {3}, {3}});
  CHECK(cost.online.rounds == 1);
  CHECK(cost.online.total_elements == cost_pack_trans(cfg, 1).elements);

  Vec c(6, {42});
  for (auto& o : run_pt(cfg, c, nullptr)) CHECK(o == c);

  for (auto [n, k] : kGrid) {
    PackingConfig g(Field(31), n, k);
    Prg prg(n, "r");
    Vec x = random_vec(g.field(), prg, 5 * k);
    auto o = run_pt(g, x, &cost);
    for (int b = 0; b < 5; ++b) {
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) CHECK(o[i][b * k + j] == x[b * k + i]);
      }
    }
    CHECK(cost.online.total_elements == cost_pack_trans(g, 5).elements);
  }
  (void)f;
}

TEST_CASE("linear protocols report missing randomness and shape errors") {
  PackingConfig cfg(Field(31), 5, 2);
  Prg prg(1, "err");
  Vec a(4, {1}), A(12, {1});
  auto as = share_vector(cfg, a, prg);
  auto Ms = share_matrix_rows(cfg, 4, 3, A, prg);
  std::vector<OfflineStore> empty;
  try {
    harness::run<int>(cfg, 0, empty, [&](Party& p) {
      vec_mat_mult(p, as[p.id().index - 1], Ms[p.id().index - 1]);
      return 0;
    });
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kMissingRandomness);
  }
  auto short_a = share_vector(cfg, Vec(3, {1}), prg);
  try {
    std::vector<OfflineStore> stores;
    harness::run<int>(cfg, 0, stores, [&](Party& p) {
      vec_mat_mult(p, short_a[p.id().index - 1], Ms[p.id().index - 1]);
      return 0;
    });
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kShapeMismatch);
  }
}
