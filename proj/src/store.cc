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

#include "pssnn/store.h"

#include "json.hpp"
#include "pssnn/error.h"

namespace pssnn {

std::string DtKey::name() const {
  std::string where = packed() ? "packed" : "at" + std::to_string(position);
  return "dt/" + where + "/" + std::to_string(from) + "->" + std::to_string(to);
}

void Manifest::add_dt(const DtKey& key, std::uint64_t count) {
  if (count != 0) dt_pairs[key] += count;
}

Manifest& Manifest::operator+=(const Manifest& o) {
  for (const auto& [k, v] : o.dt_pairs) add_dt(k, v);
  vm_tuples += o.vm_tuples;
  trunc_tuples += o.trunc_tuples;
  random_bits += o.random_bits;
  pmat_masks += o.pmat_masks;
  pack_trans_masks += o.pack_trans_masks;
  for (const auto& [d, v] : o.zero_shares) {
    if (v != 0) zero_shares[d] += v;
  }
  return *this;
}

Manifest Manifest::scaled(std::uint64_t times) const {
  Manifest m;
  for (std::uint64_t i = 0; i < times; ++i) m += *this;
  return m;
}

bool Manifest::empty() const {
  for (const auto& [k, v] : dt_pairs)
    if (v != 0) return false;
  for (const auto& [k, v] : zero_shares)
    if (v != 0) return false;
  return vm_tuples == 0 && trunc_tuples == 0 && random_bits == 0 && pmat_masks == 0 &&
         pack_trans_masks == 0;
}

std::string Manifest::to_json() const {
  nlohmann::json j;
  j["vm_tuples"] = vm_tuples;
  j["trunc_tuples"] = trunc_tuples;
  j["random_bits"] = random_bits;
  j["pmat_masks"] = pmat_masks;
  j["pack_trans_masks"] = pack_trans_masks;
  j["dt_pairs"] = nlohmann::json::array();
  for (const auto& [k, v] : dt_pairs) {
    nlohmann::json e;
    e["packed"] = k.packed();
    if (!k.packed()) e["position"] = k.position;
    e["from"] = k.from;
    e["to"] = k.to;
    e["count"] = v;
    j["dt_pairs"].push_back(e);
  }
  j["zero_shares"] = nlohmann::json::object();
  for (const auto& [d, v] : zero_shares) j["zero_shares"][std::to_string(d)] = v;
  return j.dump(2);
}

Manifest Manifest::from_json(const std::string& text) {
  Manifest m;
  try {
    auto j = nlohmann::json::parse(text);
    m.vm_tuples = j.value("vm_tuples", 0ULL);
    m.trunc_tuples = j.value("trunc_tuples", 0ULL);
    m.random_bits = j.value("random_bits", 0ULL);
    m.pmat_masks = j.value("pmat_masks", 0ULL);
    m.pack_trans_masks = j.value("pack_trans_masks", 0ULL);
    const auto dts = j.value("dt_pairs", nlohmann::json::array());
    for (const auto& e : dts) {
      DtKey k;
      if (!e.at("packed").get<bool>()) k.position = e.at("position").get<std::uint64_t>();
      k.from = e.at("from").get<int>();
      k.to = e.at("to").get<int>();
      m.add_dt(k, e.at("count").get<std::uint64_t>());
    }
    const auto zeros = j.value("zero_shares", nlohmann::json::object());
    for (const auto& [d, v] : zeros.items()) {
      m.zero_shares[std::stoi(d)] = v.get<std::uint64_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kIo, std::string("bad manifest: ") + e.what());
  }
  return m;
}

namespace {

template <typename T>
std::vector<T> take(std::deque<T>& q, std::size_t count, const std::string& what) {
  if (q.size() < count) {
    throw Error(Errc::kMissingRandomness, "need " + std::to_string(count) + " " + what +
                                              ", have " + std::to_string(q.size()));
  }
  std::vector<T> out(std::make_move_iterator(q.begin()),
                     std::make_move_iterator(q.begin() + static_cast<std::ptrdiff_t>(count)));
  q.erase(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(count));
  return out;
}

template <typename T>
void append(std::deque<T>& q, std::vector<T> v) {
  for (auto& x : v) q.push_back(std::move(x));
}

}  // namespace

void OfflineStore::add_dt(const DtKey& key, std::vector<DtPair> pairs) { append(dt_[key], std::move(pairs)); }
void OfflineStore::add_vm(std::vector<VmTuple> t) { append(vm_, std::move(t)); }
void OfflineStore::add_trunc(std::vector<VmTuple> t) { append(trunc_, std::move(t)); }
void OfflineStore::add_bits(std::vector<FieldElement> b) { append(bits_, std::move(b)); }
void OfflineStore::add_pmat(std::vector<PMatMask> m) { append(pmat_, std::move(m)); }
void OfflineStore::add_pack_trans(std::vector<PackTransMask> m) { append(pack_trans_, std::move(m)); }
void OfflineStore::add_zero(int degree, std::vector<FieldElement> z) { append(zero_[degree], std::move(z)); }

std::vector<DtPair> OfflineStore::take_dt(const DtKey& key, std::size_t count) {
  return take(dt_[key], count, key.name() + " pairs");
}
std::vector<VmTuple> OfflineStore::take_vm(std::size_t count) { return take(vm_, count, "vm tuples"); }
std::vector<VmTuple> OfflineStore::take_trunc(std::size_t count) {
  return take(trunc_, count, "truncation tuples");
}
std::vector<FieldElement> OfflineStore::take_bits(std::size_t count) {
  return take(bits_, count, "random bit sharings");
}
std::vector<PMatMask> OfflineStore::take_pmat(std::size_t count) {
  return take(pmat_, count, "matrix masks");
}
std::vector<PackTransMask> OfflineStore::take_pack_trans(std::size_t count) {
  return take(pack_trans_, count, "pack transformation masks");
}
std::vector<FieldElement> OfflineStore::take_zero(int degree, std::size_t count) {
  auto it = zero_.find(degree);
  if (it == zero_.end()) {
    throw Error(Errc::kSetupMissing, "no zero sharings of degree " + std::to_string(degree));
  }
  return take(it->second, count, "zero sharings");
}

Manifest OfflineStore::remaining() const {
  Manifest m;
  for (const auto& [k, q] : dt_) m.add_dt(k, q.size());
  m.vm_tuples = vm_.size();
  m.trunc_tuples = trunc_.size();
  m.random_bits = bits_.size();
  m.pmat_masks = pmat_.size();
  m.pack_trans_masks = pack_trans_.size();
  for (const auto& [d, q] : zero_) {
    if (!q.empty()) m.zero_shares[d] = q.size();
  }
  return m;
}

// Layout: a sequence of sections, each [tag, params..., count, payload...].
namespace {
enum : std::uint64_t { kTagDt = 1, kTagVm, kTagTrunc, kTagBits, kTagPMat, kTagPackTrans, kTagZero };
}

std::vector<std::uint64_t> OfflineStore::serialize() const {
  std::vector<std::uint64_t> w;
  for (const auto& [k, q] : dt_) {
    w.insert(w.end(), {kTagDt, k.position, static_cast<std::uint64_t>(k.from),
                       static_cast<std::uint64_t>(k.to), q.size()});
    for (const auto& p : q) w.insert(w.end(), {p.from.value, p.to.value});
  }
  auto put_tuples = [&](std::uint64_t tag, const std::deque<VmTuple>& q) {
    std::uint64_t width = q.empty() ? 0 : q.front().r.size();
    w.insert(w.end(), {tag, width, q.size()});
    for (const auto& t : q) {
      for (auto v : t.r) w.push_back(v.value);
      w.push_back(t.r_prime.value);
    }
  };
  put_tuples(kTagVm, vm_);
  put_tuples(kTagTrunc, trunc_);
  w.insert(w.end(), {kTagBits, bits_.size()});
  for (auto b : bits_) w.push_back(b.value);
  w.insert(w.end(), {kTagPMat, pmat_.size()});
  for (const auto& m : pmat_) w.insert(w.end(), {m.r.value, m.r_prime.value});
  std::uint64_t width = pack_trans_.empty() ? 0 : pack_trans_.front().r_const.size();
  w.insert(w.end(), {kTagPackTrans, width, pack_trans_.size()});
  for (const auto& m : pack_trans_) {
    for (auto v : m.r_const) w.push_back(v.value);
    w.push_back(m.r.value);
  }
  for (const auto& [d, q] : zero_) {
    w.insert(w.end(), {kTagZero, static_cast<std::uint64_t>(d), q.size()});
    for (auto z : q) w.push_back(z.value);
  }
  return w;
}

OfflineStore OfflineStore::deserialize(const std::vector<std::uint64_t>& w) {
  OfflineStore s;
  std::size_t i = 0;
  auto next = [&]() -> std::uint64_t {
    if (i >= w.size()) throw Error(Errc::kIo, "truncated offline store");
    return w[i++];
  };
  auto fe = [&]() { return FieldElement{next()}; };
  while (i < w.size()) {
    std::uint64_t tag = next();
    switch (tag) {
      case kTagDt: {
        DtKey k;
        k.position = next();
        k.from = static_cast<int>(next());
        k.to = static_cast<int>(next());
        std::uint64_t c = next();
        auto& q = s.dt_[k];
        for (std::uint64_t j = 0; j < c; ++j) {
          DtPair p;
          p.from = fe();
          p.to = fe();
          q.push_back(p);
        }
        break;
      }
      case kTagVm:
      case kTagTrunc: {
        std::uint64_t width = next(), c = next();
        auto& q = tag == kTagVm ? s.vm_ : s.trunc_;
        for (std::uint64_t j = 0; j < c; ++j) {
          VmTuple t;
          for (std::uint64_t u = 0; u < width; ++u) t.r.push_back(fe());
          t.r_prime = fe();
          q.push_back(std::move(t));
        }
        break;
      }
      case kTagBits: {
        std::uint64_t c = next();
        for (std::uint64_t j = 0; j < c; ++j) s.bits_.push_back(fe());
        break;
      }
      case kTagPMat: {
        std::uint64_t c = next();
        for (std::uint64_t j = 0; j < c; ++j) {
          PMatMask m;
          m.r = fe();
          m.r_prime = fe();
          s.pmat_.push_back(m);
        }
        break;
      }
      case kTagPackTrans: {
        std::uint64_t width = next(), c = next();
        for (std::uint64_t j = 0; j < c; ++j) {
          PackTransMask m;
          for (std::uint64_t u = 0; u < width; ++u) m.r_const.push_back(fe());
          m.r = fe();
          s.pack_trans_.push_back(std::move(m));
        }
        break;
      }
      case kTagZero: {
        int d = static_cast<int>(next());
        std::uint64_t c = next();
        for (std::uint64_t j = 0; j < c; ++j) s.zero_[d].push_back(fe());
        break;
      }
      default:
        throw Error(Errc::kIo, "unknown offline section tag " + std::to_string(tag));
    }
  }
  return s;
}

}  // namespace pssnn
