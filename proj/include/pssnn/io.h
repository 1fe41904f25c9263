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
#include <span>
#include <string>
#include <vector>

#include "pssnn/nn.h"
#include "pssnn/store.h"

// Per-party share files: a fixed header of little-endian u64 words
// (magic, kind, ell, ell_x, n, d, k, party, payload length) followed by
// the payload words.
namespace pssnn {

enum class ShareKind : std::uint64_t { kInput = 1, kModel = 2, kOffline = 3, kOutput = 4 };
const char* share_kind_name(ShareKind kind);

struct ShareFileHeader {
  ShareKind kind = ShareKind::kInput;
  int ell = 0;
  int ell_x = 0;
  int n = 0;
  int d = 0;
  int k = 0;
  int party = 0;
  friend bool operator==(const ShareFileHeader&, const ShareFileHeader&) = default;
};

ShareFileHeader header_for(ShareKind kind, const PackingConfig& cfg, int ell_x, int party);
// "<kind>.p<party>.shr"
std::string share_file_name(ShareKind kind, int party);

void write_share_file(const std::string& path, const ShareFileHeader& h,
                      const std::vector<std::uint64_t>& payload);
// Errc::kIo for unreadable or malformed files, Errc::kConfigMismatch when
// the header differs from 'expect'.
std::vector<std::uint64_t> read_share_file(const std::string& path, const ShareFileHeader& expect);
ShareFileHeader peek_share_header(const std::string& path);

std::vector<std::uint64_t> encode_tensor(const SharedTensor& t);
SharedTensor decode_tensor(std::span<const std::uint64_t> words);
std::vector<std::uint64_t> encode_model(const ModelShares& m);
ModelShares decode_model(std::span<const std::uint64_t> words);

}  // namespace pssnn
