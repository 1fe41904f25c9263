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

#include <unistd.h>

#include <string>
#include <vector>

// Localhost host table with a port range derived from the pid, so parallel
// test binaries do not collide.
inline std::vector<std::string> local_hosts(int n, int salt = 0) {
  // Stays below the usual ephemeral range (32768 and up).
  int base = 15000 + (static_cast<int>(::getpid()) * 37 + salt * 101) % 17000;
  std::vector<std::string> hosts;
  for (int i = 0; i < n; ++i) hosts.push_back("127.0.0.1:" + std::to_string(base + i));
  return hosts;
}
