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

#include "pssnn/transport.h"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sodium.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <exception>
#include <sstream>

#include "pssnn/error.h"

namespace pssnn {

const char* phase_name(Phase phase) {
  return phase == Phase::kOffline ? "offline" : "online";
}

void NetworkConfig::validate(int n) const {
  if (latency_ms < 0 || bandwidth_mbps < 0) {
    throw Error(Errc::kInvalidConfig, "latency and bandwidth must be non-negative");
  }
  if (mode == Mode::kTcp && static_cast<int>(hosts.size()) != n) {
    throw Error(Errc::kInvalidConfig, "tcp mode needs one host:port per party");
  }
}

// ---- ChannelStats ----------------------------------------------------------

ChannelStats::ChannelStats(int n, int self) : n_(n), self_(self) {
  for (auto& v : sent_) v.assign(n + 1, {});
  for (auto& v : recv_) v.assign(n + 1, {});
}

void ChannelStats::on_send(int to, Phase phase, std::size_t elements) {
  auto& c = sent_[idx(phase)].at(to);
  c.messages += 1;
  c.elements += elements;
  pending_[idx(phase)] = true;
}

void ChannelStats::on_recv(int from, Phase phase, std::size_t elements) {
  auto& c = recv_[idx(phase)].at(from);
  c.messages += 1;
  c.elements += elements;
  if (pending_[idx(phase)]) {
    rounds_[idx(phase)] += 1;
    pending_[idx(phase)] = false;
  }
}

const LinkCounter& ChannelStats::sent(int to, Phase phase) const {
  return sent_[idx(phase)].at(to);
}

const LinkCounter& ChannelStats::received(int from, Phase phase) const {
  return recv_[idx(phase)].at(from);
}

std::uint64_t ChannelStats::elements_sent(Phase phase) const {
  std::uint64_t s = 0;
  for (const auto& c : sent_[idx(phase)]) s += c.elements;
  return s;
}

std::uint64_t ChannelStats::elements_received(Phase phase) const {
  std::uint64_t s = 0;
  for (const auto& c : recv_[idx(phase)]) s += c.elements;
  return s;
}

StatsPoint snapshot(const ChannelStats& stats) {
  StatsPoint p;
  for (Phase ph : {Phase::kOffline, Phase::kOnline}) {
    int i = static_cast<int>(ph);
    p.rounds[i] = stats.rounds(ph);
    p.sent[i] = stats.elements_sent(ph);
    p.received[i] = stats.elements_received(ph);
  }
  return p;
}

CostSummary summarize(std::span<const StatsPoint> before, std::span<const StatsPoint> after,
                      Phase phase) {
  CostSummary s;
  const int i = static_cast<int>(phase);
  for (std::size_t j = 0; j < after.size(); ++j) {
    std::uint64_t r = after[j].rounds[i] - before[j].rounds[i];
    std::uint64_t sent = after[j].sent[i] - before[j].sent[i];
    std::uint64_t recv = after[j].received[i] - before[j].received[i];
    s.rounds = std::max(s.rounds, r);
    s.total_elements += sent;
    if (j == 0) {
      s.p1_sent = sent;
      s.p1_received = recv;
    } else {
      s.max_other_sent = std::max(s.max_other_sent, sent);
      s.max_other_received = std::max(s.max_other_received, recv);
    }
  }
  return s;
}

std::string stats_csv(std::span<const ChannelStats> stats) {
  std::ostringstream os;
  os << "sender,receiver,phase,elements,rounds\n";
  for (const auto& st : stats) {
    for (Phase ph : {Phase::kOffline, Phase::kOnline}) {
      for (int to = 1; to <= st.n(); ++to) {
        const auto& c = st.sent(to, ph);
        if (c.messages == 0) continue;
        os << st.self() << ',' << to << ',' << phase_name(ph) << ',' << c.elements << ','
           << c.messages << '\n';
      }
    }
  }
  return os.str();
}

// ---- Mailbox ---------------------------------------------------------------

void Mailbox::push(Message m) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    queue_.push_back(std::move(m));
  }
  cv_.notify_all();
}

Message Mailbox::pop(std::chrono::milliseconds timeout, int from) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  std::unique_lock<std::mutex> lock(mu_);
  while (true) {
    if (aborted_) {
      throw Error(Errc::kPeerDisconnected, "run aborted while waiting on party " +
                                               std::to_string(from));
    }
    auto now = std::chrono::steady_clock::now();
    if (!queue_.empty()) {
      if (queue_.front().deliver_at <= now) {
        Message m = std::move(queue_.front());
        queue_.pop_front();
        return m;
      }
      cv_.wait_until(lock, std::min(deadline, queue_.front().deliver_at));
    } else if (closed_) {
      throw Error(Errc::kPeerDisconnected, "party " + std::to_string(from) + " disconnected");
    } else {
      cv_.wait_until(lock, deadline);
    }
    if (std::chrono::steady_clock::now() >= deadline &&
        (queue_.empty() || queue_.front().deliver_at > deadline)) {
      throw Error(Errc::kTimeout, "no message from party " + std::to_string(from));
    }
  }
}

void Mailbox::close() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    closed_ = true;
  }
  cv_.notify_all();
}

void Mailbox::abort() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    aborted_ = true;
  }
  cv_.notify_all();
}

// ---- In-process fabric -----------------------------------------------------

class InProcFabric::Local : public Endpoint {
 public:
  Local(InProcFabric& fabric, int self)
      : fabric_(fabric), self_(self), busy_until_(fabric.n_ + 1) {}

  void send(int to, Message m) override {
    const auto now = std::chrono::steady_clock::now();
    const auto& cfg = fabric_.cfg_;
    auto at = now;
    if (cfg.bandwidth_mbps > 0) {
      double secs = static_cast<double>(m.payload.size()) * 64.0 / (cfg.bandwidth_mbps * 1e6);
      auto start = std::max(now, busy_until_[to]);
      busy_until_[to] = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                    std::chrono::duration<double>(secs));
      at = busy_until_[to];
    }
    if (cfg.latency_ms > 0) {
      at += std::chrono::duration_cast<std::chrono::steady_clock::duration>(
          std::chrono::duration<double, std::milli>(cfg.latency_ms / 2));
    }
    m.deliver_at = at;
    fabric_.boxes_[(to - 1) * fabric_.n_ + (self_ - 1)]->push(std::move(m));
  }

  Message recv(int from) override {
    return fabric_.boxes_[(self_ - 1) * fabric_.n_ + (from - 1)]->pop(fabric_.cfg_.timeout, from);
  }

 private:
  InProcFabric& fabric_;
  int self_;
  std::vector<std::chrono::steady_clock::time_point> busy_until_;
};

InProcFabric::InProcFabric(int n, NetworkConfig cfg) : n_(n), cfg_(std::move(cfg)) {
  cfg_.validate(n);
  for (int i = 0; i < n * n; ++i) boxes_.push_back(std::make_unique<Mailbox>());
  for (int i = 1; i <= n; ++i) endpoints_.push_back(std::make_unique<Local>(*this, i));
}

InProcFabric::~InProcFabric() = default;

Endpoint& InProcFabric::endpoint(int party) { return *endpoints_.at(party - 1); }

void InProcFabric::abort() {
  for (auto& b : boxes_) b->abort();
}

// ---- TCP -------------------------------------------------------------------

namespace {

constexpr unsigned char kMagic[4] = {'P', 'S', 'S', 'N'};
constexpr std::size_t kHeader = 9;

void put_u32(unsigned char* p, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) p[i] = static_cast<unsigned char>(v >> (8 * i));
}

std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return v;
}

bool write_all(int fd, const unsigned char* data, std::size_t len) {
  while (len > 0) {
    ssize_t w = ::send(fd, data, len, MSG_NOSIGNAL);
    if (w < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    data += w;
    len -= static_cast<std::size_t>(w);
  }
  return true;
}

bool read_all(int fd, unsigned char* data, std::size_t len) {
  while (len > 0) {
    ssize_t r = ::recv(fd, data, len, 0);
    if (r < 0 && errno == EINTR) continue;
    if (r <= 0) return false;
    data += r;
    len -= static_cast<std::size_t>(r);
  }
  return true;
}

std::pair<std::string, std::string> split_host(const std::string& hp) {
  auto pos = hp.rfind(':');
  if (pos == std::string::npos) throw Error(Errc::kInvalidConfig, "bad host entry '" + hp + "'");
  return {hp.substr(0, pos), hp.substr(pos + 1)};
}

int listen_on(const std::string& port) {
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw Error(Errc::kIo, "socket: " + std::string(std::strerror(errno)));
  int one = 1;
  ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_ANY);
  addr.sin_port = htons(static_cast<std::uint16_t>(std::stoi(port)));
  if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 || ::listen(fd, 64) != 0) {
    std::string msg = std::strerror(errno);
    ::close(fd);
    throw Error(Errc::kIo, "listen on port " + port + ": " + msg);
  }
  return fd;
}

// Dialing a loopback port inside the ephemeral range with no listener can
// connect the socket to itself (TCP simultaneous open).
bool self_connected(int fd) {
  sockaddr_in local{}, remote{};
  socklen_t a = sizeof(local), b = sizeof(remote);
  if (::getsockname(fd, reinterpret_cast<sockaddr*>(&local), &a) != 0 ||
      ::getpeername(fd, reinterpret_cast<sockaddr*>(&remote), &b) != 0) {
    return false;
  }
  return local.sin_port == remote.sin_port && local.sin_addr.s_addr == remote.sin_addr.s_addr;
}

int accept_within(int lfd, std::chrono::milliseconds timeout) {
  pollfd pfd{lfd, POLLIN, 0};
  const int ready = ::poll(&pfd, 1, static_cast<int>(timeout.count()));
  if (ready == 0) throw Error(Errc::kTimeout, "no connection from a peer within the timeout");
  if (ready < 0) throw Error(Errc::kIo, "poll: " + std::string(std::strerror(errno)));
  int fd = ::accept(lfd, nullptr, nullptr);
  if (fd < 0) throw Error(Errc::kIo, "accept: " + std::string(std::strerror(errno)));
  return fd;
}

int dial(const std::string& host, const std::string& port, std::chrono::milliseconds timeout) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  while (true) {
    addrinfo* res = nullptr;
    if (::getaddrinfo(host.c_str(), port.c_str(), &hints, &res) == 0) {
      for (addrinfo* a = res; a != nullptr; a = a->ai_next) {
        int fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
        if (fd < 0) continue;
        if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0 && !self_connected(fd)) {
          ::freeaddrinfo(res);
          return fd;
        }
        ::close(fd);
      }
      ::freeaddrinfo(res);
    }
    if (std::chrono::steady_clock::now() > deadline) {
      throw Error(Errc::kPeerDisconnected, "cannot reach " + host + ":" + port);
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
}

void tune(int fd) {
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

}  // namespace

std::vector<unsigned char> encode_frame(const Message& m) {
  std::vector<unsigned char> buf(kHeader + 8 * m.payload.size());
  std::memcpy(buf.data(), kMagic, 4);
  buf[4] = static_cast<unsigned char>(m.phase);
  put_u32(buf.data() + 5, static_cast<std::uint32_t>(m.payload.size()));
  unsigned char* p = buf.data() + kHeader;
  for (std::uint64_t v : m.payload) {
    for (int i = 0; i < 8; ++i) *p++ = static_cast<unsigned char>(v >> (8 * i));
  }
  return buf;
}

TcpEndpoint::TcpEndpoint(int self, const NetworkConfig& cfg)
    : self_(self), n_(static_cast<int>(cfg.hosts.size())), cfg_(cfg), fds_(n_ + 1, -1) {
  cfg_.validate(n_);
  for (int i = 0; i <= n_; ++i) {
    write_mu_.push_back(std::make_unique<std::mutex>());
    boxes_.push_back(std::make_unique<Mailbox>());
  }
  int lfd = -1;
  if (self_ < n_) lfd = listen_on(split_host(cfg_.hosts[self_ - 1]).second);
  try {
    for (int peer = 1; peer < self_; ++peer) {
      auto [host, port] = split_host(cfg_.hosts[peer - 1]);
      int fd = dial(host, port, cfg_.timeout);
      tune(fd);
      unsigned char id[4];
      put_u32(id, static_cast<std::uint32_t>(self_));
      if (!write_all(fd, id, 4)) throw Error(Errc::kPeerDisconnected, "handshake failed");
      fds_[peer] = fd;
    }
    for (int accepted = 0; accepted < n_ - self_; ++accepted) {
      int fd = accept_within(lfd, cfg_.timeout);
      tune(fd);
      unsigned char id[4];
      if (!read_all(fd, id, 4)) throw Error(Errc::kPeerDisconnected, "handshake failed");
      int peer = static_cast<int>(get_u32(id));
      if (peer <= self_ || peer > n_ || fds_[peer] != -1) {
        ::close(fd);
        throw Error(Errc::kConfigMismatch, "unexpected peer id " + std::to_string(peer));
      }
      fds_[peer] = fd;
    }
  } catch (...) {
    if (lfd >= 0) ::close(lfd);
    for (int fd : fds_)
      if (fd >= 0) ::close(fd);
    throw;
  }
  if (lfd >= 0) ::close(lfd);
  for (int peer = 1; peer <= n_; ++peer) {
    if (peer != self_) readers_.emplace_back([this, peer] { reader(peer); });
  }
}

TcpEndpoint::~TcpEndpoint() {
  // Half-close so peers drain everything we sent, then wait for their FIN.
  for (int peer = 1; peer <= n_; ++peer) {
    if (fds_[peer] >= 0) ::shutdown(fds_[peer], SHUT_WR);
  }
  for (auto& t : readers_) t.join();
  for (int peer = 1; peer <= n_; ++peer) {
    if (fds_[peer] >= 0) ::close(fds_[peer]);
  }
}

void TcpEndpoint::reader(int peer) {
  const int fd = fds_[peer];
  while (true) {
    unsigned char head[kHeader];
    if (!read_all(fd, head, kHeader) || std::memcmp(head, kMagic, 4) != 0) break;
    Message m;
    m.phase = static_cast<Phase>(head[4]);
    std::uint32_t count = get_u32(head + 5);
    std::vector<unsigned char> body(8 * static_cast<std::size_t>(count));
    if (!read_all(fd, body.data(), body.size())) break;
    m.payload.resize(count);
    for (std::uint32_t i = 0; i < count; ++i) {
      std::uint64_t v = 0;
      for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(body[8 * i + b]) << (8 * b);
      m.payload[i] = v;
    }
    boxes_[peer]->push(std::move(m));
  }
  boxes_[peer]->close();
}

void TcpEndpoint::send(int to, Message m) {
  auto frame = encode_frame(m);
  std::lock_guard<std::mutex> lock(*write_mu_[to]);
  if (!write_all(fds_[to], frame.data(), frame.size())) {
    throw Error(Errc::kPeerDisconnected, "write to party " + std::to_string(to) + " failed");
  }
}

Message TcpEndpoint::recv(int from) { return boxes_[from]->pop(cfg_.timeout, from); }

// ---- Comm ------------------------------------------------------------------

Comm::Comm(int self, int n, Endpoint& endpoint)
    : self_(self), n_(n), endpoint_(endpoint), stats_(n, self) {
  if (sodium_init() < 0) throw Error(Errc::kIo, "libsodium init failed");
  auto* st = new crypto_generichash_state;
  crypto_generichash_init(st, nullptr, 0, 32);
  hash_state_ = std::shared_ptr<void>(st, [](void* p) {
    delete static_cast<crypto_generichash_state*>(p);
  });
}

void Comm::absorb(int tag, int peer, std::span<const std::uint64_t> payload) {
  auto* st = static_cast<crypto_generichash_state*>(hash_state_.get());
  unsigned char head[9];
  head[0] = static_cast<unsigned char>(tag);
  put_u32(head + 1, static_cast<std::uint32_t>(peer));
  put_u32(head + 5, static_cast<std::uint32_t>(payload.size()));
  crypto_generichash_update(st, head, sizeof(head));
  std::vector<unsigned char> bytes(payload.size() * 8);
  for (std::size_t i = 0; i < payload.size(); ++i) {
    for (int b = 0; b < 8; ++b) bytes[8 * i + b] = static_cast<unsigned char>(payload[i] >> (8 * b));
  }
  crypto_generichash_update(st, bytes.data(), bytes.size());
}

std::string Comm::transcript_digest() const {
  crypto_generichash_state copy = *static_cast<crypto_generichash_state*>(hash_state_.get());
  unsigned char out[32];
  crypto_generichash_final(&copy, out, sizeof(out));
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned char c : out) {
    s += hex[c >> 4];
    s += hex[c & 15];
  }
  return s;
}

void Comm::send(int to, std::span<const FieldElement> values) {
  if (to == self_ || to < 1 || to > n_) {
    throw Error(Errc::kInvalidConfig, "bad destination " + std::to_string(to));
  }
  Message m;
  m.phase = phase_;
  m.payload.reserve(values.size());
  for (auto v : values) m.payload.push_back(v.value);
  absorb(0, to, m.payload);
  stats_.on_send(to, phase_, values.size());
  endpoint_.send(to, std::move(m));
}

std::vector<FieldElement> Comm::recv(int from, std::size_t count) {
  if (from == self_ || from < 1 || from > n_) {
    throw Error(Errc::kInvalidConfig, "bad source " + std::to_string(from));
  }
  stats_.on_recv(from, phase_, count);
  Message m = endpoint_.recv(from);
  if (m.payload.size() != count || m.phase != phase_) {
    throw Error(Errc::kCountMismatch, "expected " + std::to_string(count) + " " +
                                          phase_name(phase_) + " elements from party " +
                                          std::to_string(from) + ", got " +
                                          std::to_string(m.payload.size()) + " " +
                                          phase_name(m.phase));
  }
  absorb(1, from, m.payload);
  std::vector<FieldElement> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = {m.payload[i]};
  return out;
}

std::vector<std::vector<FieldElement>> Comm::gather_at_p1(std::span<const FieldElement> own) {
  if (!is_p1()) {
    send(1, own);
    return {};
  }
  std::vector<std::vector<FieldElement>> all(n_);
  all[0].assign(own.begin(), own.end());
  for (int j = 2; j <= n_; ++j) all[j - 1] = recv(j, own.size());
  return all;
}

std::vector<FieldElement> Comm::scatter_from_p1(const std::vector<std::vector<FieldElement>>& out,
                                                std::size_t count) {
  if (!is_p1()) return recv(1, count);
  for (int j = 2; j <= n_; ++j) send(j, out.at(j - 1));
  return out.at(0);
}

std::vector<FieldElement> Comm::broadcast_from_p1(std::span<const FieldElement> values,
                                                  std::size_t count) {
  if (!is_p1()) return recv(1, count);
  for (int j = 2; j <= n_; ++j) send(j, values);
  return {values.begin(), values.end()};
}

std::vector<std::vector<FieldElement>> Comm::exchange_all(
    const std::vector<std::vector<FieldElement>>& out, std::size_t count) {
  for (int j = 1; j <= n_; ++j) {
    if (j != self_) send(j, out.at(j - 1));
  }
  std::vector<std::vector<FieldElement>> in(n_);
  for (int j = 1; j <= n_; ++j) {
    in[j - 1] = j == self_ ? out.at(j - 1) : recv(j, count);
  }
  return in;
}

std::vector<FieldElement> open_to_all(Comm& comm, const PackingConfig& cfg, const ShareVec& x) {
  const std::size_t count = x.size() * cfg.k();
  auto all = comm.gather_at_p1(x.values);
  std::vector<FieldElement> opened;
  if (comm.is_p1()) {
    const SharingPlan& plan = cfg.packed_plan(x.degree);
    std::vector<FieldElement> column(cfg.n());
    opened.reserve(count);
    for (std::size_t b = 0; b < x.size(); ++b) {
      for (int j = 0; j < cfg.n(); ++j) column[j] = all[j][b];
      auto secrets = cfg.reconstruct(plan, column);
      opened.insert(opened.end(), secrets.begin(), secrets.end());
    }
  }
  return comm.broadcast_from_p1(opened, count);
}

// ---- Runner ----------------------------------------------------------------

void run_parties(int n, const NetworkConfig& net, const std::function<void(Comm&)>& body,
                 std::vector<ChannelStats>* stats_out, std::vector<std::string>* digests_out) {
  net.validate(n);
  std::unique_ptr<InProcFabric> fabric;
  if (net.mode == NetworkConfig::Mode::kSim) fabric = std::make_unique<InProcFabric>(n, net);
  std::vector<std::exception_ptr> errors(n);
  std::vector<ChannelStats> stats(n);
  std::vector<std::string> digests(n);
  std::mutex abort_mu;
  std::vector<std::thread> threads;
  for (int i = 1; i <= n; ++i) {
    threads.emplace_back([&, i] {
      try {
        std::unique_ptr<TcpEndpoint> tcp;
        Endpoint* ep = nullptr;
        if (fabric) {
          ep = &fabric->endpoint(i);
        } else {
          tcp = std::make_unique<TcpEndpoint>(i, net);
          ep = tcp.get();
        }
        Comm comm(i, n, *ep);
        body(comm);
        stats[i - 1] = comm.stats();
        digests[i - 1] = comm.transcript_digest();
      } catch (...) {
        errors[i - 1] = std::current_exception();
        std::lock_guard<std::mutex> lock(abort_mu);
        if (fabric) fabric->abort();
      }
    });
  }
  for (auto& t : threads) t.join();
  // Prefer the root cause over the disconnects it triggered elsewhere.
  std::exception_ptr first;
  for (auto& e : errors) {
    if (!e) continue;
    try {
      std::rethrow_exception(e);
    } catch (const Error& err) {
      if (err.code() != Errc::kPeerDisconnected) {
        first = e;
        break;
      }
      if (!first) first = e;
    } catch (...) {
      first = e;
      break;
    }
  }
  if (first) std::rethrow_exception(first);
  if (stats_out) *stats_out = std::move(stats);
  if (digests_out) *digests_out = std::move(digests);
}

}  // namespace pssnn
