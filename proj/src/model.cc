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

#include "pssnn/model.h"

#include <cmath>
#include <filesystem>
#include <cstring>
#include <fstream>

#include "json.hpp"
#include "pssnn/error.h"
#include "pssnn/prg.h"

namespace pssnn {

namespace fs = std::filesystem;
using nlohmann::json;

FixedPointCodec::FixedPointCodec(Field field, int ell_x) : field_(field), ell_x_(ell_x) {
  if (ell_x < 0 || ell_x > field.ell() - 3) {
    throw Error(Errc::kInvalidConfig, "ell_x must be in [0, ell - 3]");
  }
}

double FixedPointCodec::scale() const { return std::ldexp(1.0, ell_x_); }

std::int64_t FixedPointCodec::to_fixed(double x) const {
  const double bound = std::ldexp(1.0, field_.ell() - 2);
  const double v = std::nearbyint(x * scale());
  if (!std::isfinite(v) || std::fabs(v) >= bound) {
    throw Error(Errc::kOutOfRange, "value " + std::to_string(x) + " exceeds the fixed-point range");
  }
  return static_cast<std::int64_t>(v);
}

double FixedPointCodec::decode(FieldElement v) const {
  return static_cast<double>(field_.to_signed(v)) / scale();
}

const char* layer_name(LayerKind kind) {
  switch (kind) {
    case LayerKind::kConv: return "conv";
    case LayerKind::kFC: return "fc";
    case LayerKind::kReLU: return "relu";
    case LayerKind::kMaxPool: return "maxpool";
    case LayerKind::kFlatten: return "flatten";
  }
  return "?";
}

LayerSpec LayerSpec::conv(int fh, int fw, int ci, int co, int stride, int pad) {
  LayerSpec l;
  l.kind = LayerKind::kConv;
  l.fh = fh;
  l.fw = fw;
  l.ci = ci;
  l.co = co;
  l.stride = stride;
  l.pad = pad;
  l.weights.assign(static_cast<std::size_t>(co) * ci * fh * fw, 0.0);
  return l;
}

LayerSpec LayerSpec::fc(int in, int out) {
  LayerSpec l;
  l.kind = LayerKind::kFC;
  l.in = in;
  l.out = out;
  l.weights.assign(static_cast<std::size_t>(in) * out, 0.0);
  l.bias.assign(out, 0.0);
  return l;
}

LayerSpec LayerSpec::relu() { return LayerSpec{}; }

LayerSpec LayerSpec::maxpool(int window) {
  LayerSpec l;
  l.kind = LayerKind::kMaxPool;
  l.window = window;
  return l;
}

LayerSpec LayerSpec::flatten() {
  LayerSpec l;
  l.kind = LayerKind::kFlatten;
  return l;
}

std::vector<Shape3> Model::shapes() const {
  auto fail = [](std::size_t i, const std::string& why) {
    throw Error(Errc::kShapeMismatch, "layer " + std::to_string(i) + ": " + why);
  };
  if (input.c <= 0 || input.h <= 0 || input.w <= 0) fail(0, "empty input shape");
  std::vector<Shape3> out;
  Shape3 s = input;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& l = layers[i];
    switch (l.kind) {
      case LayerKind::kConv: {
        if (l.ci != s.c) fail(i, "conv input channels differ from tensor channels");
        if (l.fh <= 0 || l.fw <= 0 || l.co <= 0 || l.stride <= 0 || l.pad < 0) fail(i, "bad conv parameters");
        const int ho = (s.h - l.fh + 2 * l.pad) / l.stride + 1;
        const int wo = (s.w - l.fw + 2 * l.pad) / l.stride + 1;
        if (s.h - l.fh + 2 * l.pad < 0 || s.w - l.fw + 2 * l.pad < 0) fail(i, "filter larger than input");
        if (l.weights.size() != static_cast<std::size_t>(l.co) * l.ci * l.fh * l.fw) fail(i, "conv weight count");
        s = {l.co, ho, wo};
        break;
      }
      case LayerKind::kFC:
        if (static_cast<std::size_t>(l.in) != s.size()) fail(i, "fc input size differs from tensor size");
        if (l.weights.size() != static_cast<std::size_t>(l.in) * l.out) fail(i, "fc weight count");
        if (l.bias.size() != static_cast<std::size_t>(l.out)) fail(i, "fc bias count");
        s = {l.out, 1, 1};
        break;
      case LayerKind::kReLU:
        break;
      case LayerKind::kMaxPool:
        if (l.window <= 0 || l.window > s.h || l.window > s.w) fail(i, "bad pooling window");
        s = {s.c, s.h / l.window, s.w / l.window};
        break;
      case LayerKind::kFlatten:
        s = {static_cast<int>(s.size()), 1, 1};
        break;
    }
    out.push_back(s);
  }
  return out;
}

Shape3 Model::output_shape() const {
  auto s = shapes();
  return s.empty() ? input : s.back();
}

int Model::truncations() const {
  int t = 0;
  for (const auto& l : layers) t += (l.kind == LayerKind::kConv || l.kind == LayerKind::kFC);
  return t;
}

namespace {

std::vector<double> read_blob(const fs::path& path, std::size_t count) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open " + path.string());
  std::vector<double> v(count);
  std::vector<unsigned char> raw(count * 8);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size()) || in.peek() != EOF) {
    throw Error(Errc::kIo, path.string() + " does not hold " + std::to_string(count) + " doubles");
  }
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t bits = 0;
    for (int b = 7; b >= 0; --b) bits = (bits << 8) | raw[i * 8 + b];
    std::memcpy(&v[i], &bits, 8);
  }
  return v;
}

void write_blob(const fs::path& path, const std::vector<double>& v) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kIo, "cannot write " + path.string());
  std::vector<unsigned char> raw(v.size() * 8);
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::uint64_t bits;
    std::memcpy(&bits, &v[i], 8);
    for (int b = 0; b < 8; ++b) raw[i * 8 + b] = static_cast<unsigned char>(bits >> (8 * b));
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw Error(Errc::kIo, "short write to " + path.string());
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIo, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::kIo, path + ": " + e.what());
  }
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::kIo, "cannot write " + path);
  out << j.dump(2) << "\n";
}

fs::path blob_path_for(const std::string& json_path) {
  fs::path p(json_path);
  return p.replace_extension(".bin");
}

Shape3 shape_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(Errc::kIo, "shape must be [c, h, w]");
  return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

}  // namespace

Model load_model(const std::string& json_path) {
  json j = read_json(json_path);
  Model m;
  std::size_t total = 0;
  fs::path blob;
  try {
    m.input = shape_from(j.at("input"));
    m.ell = j.value("ell", 0);
    m.ell_x = j.value("ell_x", 0);
    m.k = j.value("k", 0);
    for (const auto& e : j.at("layers")) {
      const std::string type = e.at("type");
      LayerSpec l;
      if (type == "conv") {
        l = LayerSpec::conv(e.at("fh"), e.at("fw"), e.at("ci"), e.at("co"), e.value("stride", 1),
                            e.value("pad", 0));
      } else if (type == "fc") {
        l = LayerSpec::fc(e.at("in"), e.at("out"));
      } else if (type == "relu") {
        l = LayerSpec::relu();
      } else if (type == "maxpool") {
        l = LayerSpec::maxpool(e.at("window"));
      } else if (type == "flatten") {
        l = LayerSpec::flatten();
      } else {
        throw Error(Errc::kIo, "unknown layer type " + type);
      }
      total += l.weights.size() + l.bias.size();
      m.layers.push_back(std::move(l));
    }
    blob = fs::path(json_path).parent_path() / j.at("weights").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(Errc::kIo, json_path + ": " + e.what());
  }
  auto values = read_blob(blob, total);
  std::size_t at = 0;
  for (auto& l : m.layers) {
    for (auto& w : l.weights) w = values[at++];
    for (auto& b : l.bias) b = values[at++];
  }
  m.shapes();
  return m;
}

void save_model(const Model& m, const std::string& json_path) {
  json j;
  j["input"] = {m.input.c, m.input.h, m.input.w};
  if (m.ell) j["ell"] = m.ell;
  if (m.ell_x) j["ell_x"] = m.ell_x;
  if (m.k) j["k"] = m.k;
  j["layers"] = json::array();
  std::vector<double> values;
  for (const auto& l : m.layers) {
    json e;
    e["type"] = layer_name(l.kind);
    switch (l.kind) {
      case LayerKind::kConv:
        e["fh"] = l.fh;
        e["fw"] = l.fw;
        e["ci"] = l.ci;
        e["co"] = l.co;
        e["stride"] = l.stride;
        e["pad"] = l.pad;
        break;
      case LayerKind::kFC:
        e["in"] = l.in;
        e["out"] = l.out;
        break;
      case LayerKind::kMaxPool:
        e["window"] = l.window;
        break;
      default:
        break;
    }
    j["layers"].push_back(e);
    values.insert(values.end(), l.weights.begin(), l.weights.end());
    values.insert(values.end(), l.bias.begin(), l.bias.end());
  }
  const fs::path blob = blob_path_for(json_path);
  j["weights"] = blob.filename().string();
  write_blob(blob, values);
  write_json(json_path, j);
}

Tensor load_tensor(const std::string& json_path) {
  json j = read_json(json_path);
  Tensor t;
  fs::path blob;
  try {
    t.shape = shape_from(j.at("shape"));
    blob = fs::path(json_path).parent_path() / j.at("data").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(Errc::kIo, json_path + ": " + e.what());
  }
  t.data = read_blob(blob, t.shape.size());
  return t;
}

void save_tensor(const Tensor& t, const std::string& json_path) {
  if (t.data.size() != t.shape.size()) throw Error(Errc::kShapeMismatch, "tensor data size");
  const fs::path blob = blob_path_for(json_path);
  write_blob(blob, t.data);
  write_json(json_path, json{{"shape", {t.shape.c, t.shape.h, t.shape.w}},
                             {"data", blob.filename().string()}});
}

void fill_random(Model& m, std::uint64_t seed, double scale) {
  Prg prg(seed, "model");
  auto uniform = [&] {
    return (static_cast<double>(prg.next_u64() >> 11) / 9007199254740992.0 * 2.0 - 1.0) * scale;
  };
  for (auto& l : m.layers) {
    for (auto& w : l.weights) w = uniform();
    for (auto& b : l.bias) b = uniform();
  }
}

}  // namespace pssnn
