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

#include "pssnn/io.h"

#include <fstream>

#include "pssnn/error.h"

namespace pssnn {

namespace {

constexpr std::uint64_t kMagic = 0x3148534e53535350ULL;  // "PSSNSHR1"
constexpr std::size_t kHeaderWords = 9;

class Reader {
 public:
  explicit Reader(std::span<const std::uint64_t> w) : w_(w) {}
  std::uint64_t next() {
    if (at_ >= w_.size()) throw Error(Errc::kIo, "truncated share payload");
    return w_[at_++];
  }
  int next_int() { return static_cast<int>(next()); }
  ShareVec share_vec() {
    ShareVec s;
    s.degree = next_int();
    const std::size_t count = next();
    if (count > w_.size() - at_) throw Error(Errc::kIo, "truncated share payload");
    for (std::size_t i = 0; i < count; ++i) s.values.push_back({next()});
    return s;
  }
  bool done() const { return at_ == w_.size(); }

 private:
  std::span<const std::uint64_t> w_;
  std::size_t at_ = 0;
};

void put(std::vector<std::uint64_t>& w, const ShareVec& s) {
  w.push_back(static_cast<std::uint64_t>(s.degree));
  w.push_back(s.size());
  for (auto v : s.values) w.push_back(v.value);
}

void put_le(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

bool get_le(std::istream& in, std::uint64_t& v) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) return false;
  v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return true;
}

std::vector<std::uint64_t> header_words(const ShareFileHeader& h) {
  return {kMagic,
          static_cast<std::uint64_t>(h.kind),
          static_cast<std::uint64_t>(h.ell),
          static_cast<std::uint64_t>(h.ell_x),
          static_cast<std::uint64_t>(h.n),
          static_cast<std::uint64_t>(h.d),
          static_cast<std::uint64_t>(h.k),
          static_cast<std::uint64_t>(h.party)};
}

std::vector<std::uint64_t> read_words(const std::string& path, ShareFileHeader& h) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open " + path);
  std::uint64_t w[kHeaderWords];
  for (auto& x : w) {
    if (!get_le(in, x)) throw Error(Errc::kIo, path + ": truncated header");
  }
  if (w[0] != kMagic) throw Error(Errc::kIo, path + ": not a share file");
  h = {static_cast<ShareKind>(w[1]), static_cast<int>(w[2]), static_cast<int>(w[3]),
       static_cast<int>(w[4]),       static_cast<int>(w[5]), static_cast<int>(w[6]),
       static_cast<int>(w[7])};
  std::vector<std::uint64_t> payload;
  payload.reserve(w[8]);
  for (std::uint64_t i = 0; i < w[8]; ++i) {
    std::uint64_t x;
    if (!get_le(in, x)) throw Error(Errc::kIo, path + ": truncated payload");
    payload.push_back(x);
  }
  return payload;
}

}  // namespace

const char* share_kind_name(ShareKind kind) {
  switch (kind) {
    case ShareKind::kInput: return "input";
    case ShareKind::kModel: return "model";
    case ShareKind::kOffline: return "offline";
    case ShareKind::kOutput: return "output";
  }
  return "unknown";
}

ShareFileHeader header_for(ShareKind kind, const PackingConfig& cfg, int ell_x, int party) {
  return {kind, cfg.field().ell(), ell_x, cfg.n(), cfg.d(), cfg.k(), party};
}

std::string share_file_name(ShareKind kind, int party) {
  return std::string(share_kind_name(kind)) + ".p" + std::to_string(party) + ".shr";
}

void write_share_file(const std::string& path, const ShareFileHeader& h,
                      const std::vector<std::uint64_t>& payload) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::kIo, "cannot write " + path);
  for (auto w : header_words(h)) put_le(out, w);
  put_le(out, payload.size());
  for (auto w : payload) put_le(out, w);
  if (!out) throw Error(Errc::kIo, "short write to " + path);
}

ShareFileHeader peek_share_header(const std::string& path) {
  ShareFileHeader h;
  read_words(path, h);
  return h;
}

std::vector<std::uint64_t> read_share_file(const std::string& path, const ShareFileHeader& expect) {
  ShareFileHeader h;
  auto payload = read_words(path, h);
  if (!(h == expect)) {
    throw Error(Errc::kConfigMismatch,
                path + ": header (" + share_kind_name(h.kind) + ", ell=" + std::to_string(h.ell) +
                    ", ell_x=" + std::to_string(h.ell_x) + ", n=" + std::to_string(h.n) +
                    ", k=" + std::to_string(h.k) + ", party=" + std::to_string(h.party) +
                    ") does not match the run (" + share_kind_name(expect.kind) +
                    ", ell=" + std::to_string(expect.ell) + ", ell_x=" + std::to_string(expect.ell_x) +
                    ", n=" + std::to_string(expect.n) + ", k=" + std::to_string(expect.k) +
                    ", party=" + std::to_string(expect.party) + ")");
  }
  return payload;
}

std::vector<std::uint64_t> encode_tensor(const SharedTensor& t) {
  std::vector<std::uint64_t> w = {static_cast<std::uint64_t>(t.layout),
                                  static_cast<std::uint64_t>(t.shape.c),
                                  static_cast<std::uint64_t>(t.shape.h),
                                  static_cast<std::uint64_t>(t.shape.w)};
  put(w, t.shares);
  return w;
}

SharedTensor decode_tensor(std::span<const std::uint64_t> words) {
  Reader r(words);
  SharedTensor t;
  const auto layout = r.next();
  if (layout > static_cast<std::uint64_t>(Layout::kReplicated)) throw Error(Errc::kIo, "bad tensor layout");
  t.layout = static_cast<Layout>(layout);
  t.shape.c = r.next_int();
  t.shape.h = r.next_int();
  t.shape.w = r.next_int();
  t.shares = r.share_vec();
  if (!r.done()) throw Error(Errc::kIo, "trailing words after tensor");
  return t;
}

std::vector<std::uint64_t> encode_model(const ModelShares& m) {
  std::vector<std::uint64_t> w = {m.layers.size()};
  for (const auto& l : m.layers) {
    w.push_back(static_cast<std::uint64_t>(l.weights.axis));
    w.push_back(l.weights.rows);
    w.push_back(l.weights.cols);
    w.push_back(static_cast<std::uint64_t>(l.weights.k));
    put(w, l.weights.shares);
    w.push_back(l.bias.length);
    put(w, l.bias.shares);
  }
  return w;
}

ModelShares decode_model(std::span<const std::uint64_t> words) {
  Reader r(words);
  ModelShares m;
  const std::size_t count = r.next();
  if (count > words.size()) throw Error(Errc::kIo, "bad layer count");
  for (std::size_t i = 0; i < count; ++i) {
    LayerShares l;
    l.weights.axis = r.next() ? PackedMatrix::Axis::kSlotParallel : PackedMatrix::Axis::kRowBlocks;
    l.weights.rows = r.next();
    l.weights.cols = r.next();
    l.weights.k = r.next_int();
    l.weights.shares = r.share_vec();
    l.bias.length = r.next();
    l.bias.shares = r.share_vec();
    m.layers.push_back(std::move(l));
  }
  if (!r.done()) throw Error(Errc::kIo, "trailing words after model");
  return m;
}

}  // namespace pssnn
