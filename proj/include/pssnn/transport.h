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

#include <array>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "pssnn/field.h"
#include "pssnn/pss.h"

namespace pssnn {

enum class Phase : std::uint8_t { kOffline = 0, kOnline = 1 };

inline constexpr int kPhaseCount = 2;
const char* phase_name(Phase phase);

struct NetworkConfig {
  enum class Mode { kSim, kTcp };
  Mode mode = Mode::kSim;
  double latency_ms = 0;      // round-trip time per link; one-way delay is half
  double bandwidth_mbps = 0;  // 0 means unlimited
  std::vector<std::string> hosts;  // "host:port", index 0 is P1
  std::chrono::milliseconds timeout{30000};

  void validate(int n) const;
};

struct LinkCounter {
  std::uint64_t messages = 0;
  std::uint64_t elements = 0;
};

// Counters for one party. A round is counted when the party blocks on a
// receive after having sent something since the previous round boundary.
class ChannelStats {
 public:
  explicit ChannelStats(int n = 0, int self = 1);

  int n() const { return n_; }
  int self() const { return self_; }

  void on_send(int to, Phase phase, std::size_t elements);
  void on_recv(int from, Phase phase, std::size_t elements);

  const LinkCounter& sent(int to, Phase phase) const;
  const LinkCounter& received(int from, Phase phase) const;
  std::uint64_t rounds(Phase phase) const { return rounds_[idx(phase)]; }
  std::uint64_t elements_sent(Phase phase) const;
  std::uint64_t elements_received(Phase phase) const;

 private:
  static int idx(Phase p) { return static_cast<int>(p); }

  int n_;
  int self_;
  std::array<std::vector<LinkCounter>, kPhaseCount> sent_;
  std::array<std::vector<LinkCounter>, kPhaseCount> recv_;
  std::array<std::uint64_t, kPhaseCount> rounds_{};
  std::array<bool, kPhaseCount> pending_{};
};

// Snapshot of one party's totals, used for per-protocol diffs.
struct StatsPoint {
  std::array<std::uint64_t, kPhaseCount> rounds{};
  std::array<std::uint64_t, kPhaseCount> sent{};
  std::array<std::uint64_t, kPhaseCount> received{};
};
StatsPoint snapshot(const ChannelStats& stats);

// Aggregate cost of a protocol run across all parties.
struct CostSummary {
  std::uint64_t rounds = 0;          // max over parties
  std::uint64_t total_elements = 0;  // sum of elements sent by all parties
  std::uint64_t p1_sent = 0;
  std::uint64_t p1_received = 0;
  std::uint64_t max_other_sent = 0;      // over non-P1 parties
  std::uint64_t max_other_received = 0;  // over non-P1 parties
};
CostSummary summarize(std::span<const StatsPoint> before, std::span<const StatsPoint> after,
                      Phase phase);

// CSV rows sender,receiver,phase,elements,rounds for every link with
// traffic. The rounds column holds the number of messages on that link.
std::string stats_csv(std::span<const ChannelStats> stats);

struct Message {
  Phase phase = Phase::kOnline;
  std::vector<std::uint64_t> payload;
  std::chrono::steady_clock::time_point deliver_at{};
};

// FIFO queue of messages from one peer to this party.
class Mailbox {
 public:
  void push(Message m);
  // Blocks until a deliverable message exists, the peer closed, or timeout.
  Message pop(std::chrono::milliseconds timeout, int from);
  void close();
  void abort();

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Message> queue_;
  bool closed_ = false;
  bool aborted_ = false;
};

// One party's view of the network.
class Endpoint {
 public:
  virtual ~Endpoint() = default;
  virtual void send(int to, Message m) = 0;
  virtual Message recv(int from) = 0;
};

// All n endpoints in one process, with optional latency/bandwidth delays.
class InProcFabric {
 public:
  InProcFabric(int n, NetworkConfig cfg = {});
  ~InProcFabric();

  Endpoint& endpoint(int party);  // 1-based
  // Wakes every blocked receiver with PeerDisconnected.
  void abort();

 private:
  class Local;
  int n_;
  NetworkConfig cfg_;
  std::vector<std::unique_ptr<Mailbox>> boxes_;  // [to * n + from]
  std::vector<std::unique_ptr<Local>> endpoints_;
};

// Full-mesh TCP endpoint for one party. Party i listens on hosts[i-1];
// it accepts connections from higher-indexed parties and dials lower ones.
class TcpEndpoint : public Endpoint {
 public:
  TcpEndpoint(int self, const NetworkConfig& cfg);
  ~TcpEndpoint() override;

  void send(int to, Message m) override;
  Message recv(int from) override;

 private:
  void reader(int peer);

  int self_;
  int n_;
  NetworkConfig cfg_;
  std::vector<int> fds_;
  std::vector<std::unique_ptr<std::mutex>> write_mu_;
  std::vector<std::unique_ptr<Mailbox>> boxes_;
  std::vector<std::thread> readers_;
};

// Encodes a message in the socket wire format: "PSSN", phase byte, LE u32
// count, LE u64 elements.
std::vector<unsigned char> encode_frame(const Message& m);

// Per-party messaging facade with accounting and the P1-centred patterns
// used by the protocols.
class Comm {
 public:
  Comm(int self, int n, Endpoint& endpoint);

  int self() const { return self_; }
  int n() const { return n_; }
  bool is_p1() const { return self_ == 1; }

  Phase phase() const { return phase_; }
  void set_phase(Phase p) { phase_ = p; }

  void send(int to, std::span<const FieldElement> values);
  std::vector<FieldElement> recv(int from, std::size_t count);

  // P1 receives 'count' values from every party; slot 0 holds its own.
  // Other parties get an empty result.
  std::vector<std::vector<FieldElement>> gather_at_p1(std::span<const FieldElement> own);
  // P1 supplies one vector per party (slot 0 its own); everyone returns theirs.
  std::vector<FieldElement> scatter_from_p1(const std::vector<std::vector<FieldElement>>& out,
                                            std::size_t count);
  // P1 sends the same values to every party.
  std::vector<FieldElement> broadcast_from_p1(std::span<const FieldElement> values,
                                              std::size_t count);
  // Every party sends out[j] to party j+1 and receives 'count' values from
  // each; slot j of the result comes from party j+1 (own slot passed through).
  std::vector<std::vector<FieldElement>> exchange_all(
      const std::vector<std::vector<FieldElement>>& out, std::size_t count);

  ChannelStats& stats() { return stats_; }
  const ChannelStats& stats() const { return stats_; }
  // BLAKE2b digest over every payload sent and received, in order.
  std::string transcript_digest() const;

 private:
  void absorb(int tag, int peer, std::span<const std::uint64_t> payload);

  int self_;
  int n_;
  Endpoint& endpoint_;
  Phase phase_ = Phase::kOnline;
  ChannelStats stats_;
  std::shared_ptr<void> hash_state_;
};

class PhaseScope {
 public:
  PhaseScope(Comm& comm, Phase p) : comm_(comm), saved_(comm.phase()) { comm.set_phase(p); }
  ~PhaseScope() { comm_.set_phase(saved_); }
  PhaseScope(const PhaseScope&) = delete;
  PhaseScope& operator=(const PhaseScope&) = delete;

 private:
  Comm& comm_;
  Phase saved_;
};

// Opens a batch of packed sharings to every party: P1 gathers the shares,
// reconstructs (checking consistency when more than degree+1 shares exist)
// and broadcasts the k secrets of each sharing. Result is slot-major per
// sharing: element b*k + i is slot i of sharing b.
std::vector<FieldElement> open_to_all(Comm& comm, const PackingConfig& cfg, const ShareVec& x);

// Runs body(comm) for parties 1..n on separate threads over an in-process
// fabric. Rethrows the first party failure after all threads join; other
// parties are released with PeerDisconnected rather than waiting for the
// timeout.
void run_parties(int n, const NetworkConfig& net,
                 const std::function<void(Comm&)>& body,
                 std::vector<ChannelStats>* stats_out = nullptr,
                 std::vector<std::string>* digests_out = nullptr);

}  // namespace pssnn
