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

#include <unistd.h>

#include <filesystem>
#include <functional>
#include <fstream>

#include "doctest.h"
#include "pssnn/error.h"
#include "pssnn/io.h"
#include "pssnn/pipeline.h"
#include "pssnn/zoo.h"

using namespace pssnn;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path = fs::temp_directory_path() / ("pssnn_io_" + std::to_string(::getpid()));
  TempDir() { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
};

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error");
  return Errc::kIo;
}

}  // namespace

TEST_CASE("share files round trip and carry their configuration") {
  TempDir dir;
  const PackingConfig cfg(Field(31), 7, 3);
  const Model m = zoo::tiny_cnn(2);
  const auto x = zoo::random_input(m.input, 2, 0, zoo::kTinyInputScale);
  auto inputs = client_shares(m, cfg, 13, x, 4);
  auto models = owner_shares(m, cfg, 13, 4);
  auto stores = dealer_shares(m, cfg, 13, 4);

  CHECK(share_file_name(ShareKind::kInput, 3) == "input.p3.shr");
  const std::string in = (dir.path / share_file_name(ShareKind::kInput, 3)).string();
  const std::string mo = (dir.path / share_file_name(ShareKind::kModel, 3)).string();
  const std::string of = (dir.path / share_file_name(ShareKind::kOffline, 3)).string();
  write_share_file(in, header_for(ShareKind::kInput, cfg, 13, 3), encode_tensor(inputs[2]));
  write_share_file(mo, header_for(ShareKind::kModel, cfg, 13, 3), encode_model(models[2]));
  write_share_file(of, header_for(ShareKind::kOffline, cfg, 13, 3), stores[2].serialize());

  const auto t = decode_tensor(read_share_file(in, header_for(ShareKind::kInput, cfg, 13, 3)));
  CHECK(t.layout == inputs[2].layout);
  CHECK(t.shares.values == inputs[2].shares.values);
  CHECK(t.shares.degree == inputs[2].shares.degree);
  const auto ms = decode_model(read_share_file(mo, header_for(ShareKind::kModel, cfg, 13, 3)));
  REQUIRE(ms.layers.size() == models[2].layers.size());
  for (std::size_t i = 0; i < ms.layers.size(); ++i) {
    CHECK(ms.layers[i].weights.shares.values == models[2].layers[i].weights.shares.values);
    CHECK(ms.layers[i].bias.shares.values == models[2].layers[i].bias.shares.values);
  }
  const auto words = read_share_file(of, header_for(ShareKind::kOffline, cfg, 13, 3));
  CHECK(OfflineStore::deserialize(words).serialize() == stores[2].serialize());
  CHECK(peek_share_header(of) == header_for(ShareKind::kOffline, cfg, 13, 3));

  SUBCASE("mismatched configuration") {
    const PackingConfig other(Field(31), 7, 2);
    CHECK(code_of([&] { read_share_file(in, header_for(ShareKind::kInput, other, 13, 3)); }) == Errc::kConfigMismatch);
    CHECK(code_of([&] { read_share_file(in, header_for(ShareKind::kInput, cfg, 12, 3)); }) == Errc::kConfigMismatch);
    CHECK(code_of([&] { read_share_file(in, header_for(ShareKind::kInput, cfg, 13, 2)); }) == Errc::kConfigMismatch);
    CHECK(code_of([&] { read_share_file(in, header_for(ShareKind::kModel, cfg, 13, 3)); }) == Errc::kConfigMismatch);
  }
  SUBCASE("damaged files") {
    CHECK(code_of([&] { read_share_file((dir.path / "absent").string(), header_for(ShareKind::kInput, cfg, 13, 3)); }) == Errc::kIo);
    fs::resize_file(in, fs::file_size(in) - 8);
    CHECK(code_of([&] { read_share_file(in, header_for(ShareKind::kInput, cfg, 13, 3)); }) == Errc::kIo);
    std::ofstream(in, std::ios::binary | std::ios::trunc) << "not a share file";
    CHECK(code_of([&] { read_share_file(in, header_for(ShareKind::kInput, cfg, 13, 3)); }) == Errc::kIo);
  }
}
