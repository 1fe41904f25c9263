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

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pssnn/bench.h"
#include "pssnn/error.h"
#include "pssnn/io.h"
#include "pssnn/nn.h"
#include "pssnn/nonlinear.h"
#include "pssnn/oracle.h"
#include "pssnn/pipeline.h"
#include "pssnn/zoo.h"

namespace fs = std::filesystem;
using namespace pssnn;

namespace {

enum Exit { kOk = 0, kConfig = 2, kProtocol = 3, kIoError = 4 };

struct Common {
  int n = 5;
  int k = 2;
  int ell = 31;
  int ell_x = 13;
  std::uint64_t seed = 1;
  std::string offline = "dealer";
  std::string model;
  std::string zoo;
  std::string config;

  PackingConfig packing() const { return PackingConfig(Field(ell), n, k); }
  OfflineMode offline_mode() const {
    if (offline == "dealer") return OfflineMode::kDealer;
    if (offline == "interactive") return OfflineMode::kInteractive;
    throw Error(Errc::kInvalidConfig, "--offline must be dealer or interactive");
  }
  Model load() const {
    if (!model.empty() && !zoo.empty()) throw Error(Errc::kInvalidConfig, "give --model or --zoo, not both");
    if (!zoo.empty()) return zoo::by_name(zoo, seed);
    if (model.empty()) throw Error(Errc::kInvalidConfig, "--model or --zoo is required");
    return load_model(model);
  }
};

void add_common(CLI::App* app, Common& c, bool with_model = true) {
  app->add_option("--n", c.n, "number of parties")->capture_default_str();
  app->add_option("--k", c.k, "secrets per packed share")->capture_default_str();
  app->add_option("--ell", c.ell, "field bits (13, 31 or 61)")->capture_default_str();
  app->add_option("--ellx", c.ell_x, "fractional bits")->capture_default_str();
  app->add_option("--seed", c.seed, "seed for sharing and offline material")->capture_default_str();
  app->add_option("--offline", c.offline, "dealer or interactive")->capture_default_str();
  app->add_option("--config", c.config, "JSON file with defaults for these flags");
  if (with_model) {
    app->add_option("--model", c.model, "model JSON (weights blob next to it)");
    app->add_option("--zoo", c.zoo, "built-in model: tiny-cnn or lenet-small");
  }
}

std::vector<std::string> read_hosts(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIo, "cannot open hosts file " + path);
  std::vector<std::string> hosts;
  std::string line;
  while (std::getline(in, line)) {
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ss(line);
    std::string h;
    if (ss >> h) hosts.push_back(h);
  }
  return hosts;
}

std::string format_double(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(Errc::kIo, "cannot write " + path);
  out << text;
  if (!out) throw Error(Errc::kIo, "short write to " + path);
}

std::string logits_csv(const std::vector<double>& v) {
  std::string s = "index,value\n";
  for (std::size_t i = 0; i < v.size(); ++i) s += std::to_string(i) + "," + format_double(v[i]) + "\n";
  return s;
}

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

std::string phase_summary(std::span<const ChannelStats> stats) {
  std::vector<StatsPoint> before(stats.size()), after;
  for (const auto& s : stats) after.push_back(snapshot(s));
  std::string out;
  for (Phase ph : {Phase::kOffline, Phase::kOnline}) {
    auto c = summarize(before, after, ph);
    out += std::string(phase_name(ph)) + ": rounds=" + std::to_string(c.rounds) +
           " elements=" + std::to_string(c.total_elements) + " p1_sent=" + std::to_string(c.p1_sent) +
           " p1_received=" + std::to_string(c.p1_received) +
           " max_other_sent=" + std::to_string(c.max_other_sent) + "\n";
  }
  return out;
}

std::vector<double> load_input(const std::string& path, const Model& m, std::uint64_t seed,
                               std::uint64_t index, double scale) {
  if (path.empty()) return zoo::random_input(m.input, seed, index, scale);
  Tensor t = load_tensor(path);
  if (!(t.shape == m.input)) throw Error(Errc::kShapeMismatch, "input tensor shape does not match the model");
  return t.data;
}

// ---- share ----

struct ShareArgs {
  Common c;
  std::string role;
  std::string input;
  std::uint64_t input_index = 0;
  double input_scale = zoo::kTinyInputScale;
  std::string out = "shares";
};

int cmd_share(const ShareArgs& a) {
  const PackingConfig cfg = a.c.packing();
  const Model m = a.c.load();
  fs::create_directories(a.out);
  auto path = [&](ShareKind kind, int j) { return (fs::path(a.out) / share_file_name(kind, j)).string(); };
  if (a.role == "client") {
    auto shares = client_shares(m, cfg, a.c.ell_x, load_input(a.input, m, a.c.seed, a.input_index, a.input_scale), a.c.seed);
    for (int j = 1; j <= cfg.n(); ++j) {
      write_share_file(path(ShareKind::kInput, j), header_for(ShareKind::kInput, cfg, a.c.ell_x, j), encode_tensor(shares[j - 1]));
    }
  } else if (a.role == "owner") {
    auto shares = owner_shares(m, cfg, a.c.ell_x, a.c.seed);
    for (int j = 1; j <= cfg.n(); ++j) {
      write_share_file(path(ShareKind::kModel, j), header_for(ShareKind::kModel, cfg, a.c.ell_x, j), encode_model(shares[j - 1]));
    }
  } else if (a.role == "dealer") {
    auto stores = dealer_shares(m, cfg, a.c.ell_x, a.c.seed);
    for (int j = 1; j <= cfg.n(); ++j) {
      write_share_file(path(ShareKind::kOffline, j), header_for(ShareKind::kOffline, cfg, a.c.ell_x, j), stores[j - 1].serialize());
    }
  } else {
    throw Error(Errc::kInvalidConfig, "--role must be client, owner or dealer");
  }
  std::cout << "wrote " << cfg.n() << " " << a.role << " share files to " << a.out << "\n";
  return kOk;
}

// ---- run-party ----

struct PartyArgs {
  Common c;
  int party = 1;
  std::string hosts;
  std::string shares = "shares";
  std::string out;
  std::string stats;
  double latency_ms = 0;
  double bandwidth_mbps = 0;
  int timeout_ms = 30000;
};

int cmd_run_party(const PartyArgs& a) {
  const PackingConfig cfg = a.c.packing();
  const Model m = a.c.load();
  const PackingPlan plan = make_plan(m, cfg.k());
  const int j = a.party;
  if (j < 1 || j > cfg.n()) throw Error(Errc::kInvalidConfig, "--party out of range");
  auto in = [&](ShareKind kind) {
    return read_share_file((fs::path(a.shares) / share_file_name(kind, j)).string(),
                           header_for(kind, cfg, a.c.ell_x, j));
  };
  SharedTensor input = decode_tensor(in(ShareKind::kInput));
  ModelShares model = decode_model(in(ShareKind::kModel));
  const OfflineMode mode = a.c.offline_mode();
  OfflineStore store = mode == OfflineMode::kDealer ? OfflineStore::deserialize(in(ShareKind::kOffline)) : OfflineStore{};

  NetworkConfig net;
  net.mode = NetworkConfig::Mode::kTcp;
  net.hosts = read_hosts(a.hosts);
  net.latency_ms = a.latency_ms;
  net.bandwidth_mbps = a.bandwidth_mbps;
  net.timeout = std::chrono::milliseconds(a.timeout_ms);
  net.validate(cfg.n());
  TcpEndpoint ep(j, net);
  Comm comm(j, cfg.n(), ep);
  Party p(cfg, a.c.ell_x, comm, store, a.c.seed);
  if (mode == OfflineMode::kInteractive) generate_interactive(p, randomness_budget(cfg, plan));
  SharedTensor out = infer_secure(p, plan, m, model, std::move(input));

  const std::string out_dir = a.out.empty() ? a.shares : a.out;
  fs::create_directories(out_dir);
  write_share_file((fs::path(out_dir) / share_file_name(ShareKind::kOutput, j)).string(),
                   header_for(ShareKind::kOutput, cfg, a.c.ell_x, j), encode_tensor(out));
  const ChannelStats stats = comm.stats();
  if (!a.stats.empty()) write_text(a.stats, stats_csv(std::span(&stats, 1)));
  std::cout << "party " << j << " done: " << phase_summary(std::span(&stats, 1));
  return kOk;
}

// ---- reveal ----

struct RevealArgs {
  Common c;
  std::string shares = "shares";
  std::string out;
};

int cmd_reveal(const RevealArgs& a) {
  const PackingConfig cfg = a.c.packing();
  std::vector<SharedTensor> outs;
  for (int j = 1; j <= cfg.n(); ++j) {
    outs.push_back(decode_tensor(read_share_file((fs::path(a.shares) / share_file_name(ShareKind::kOutput, j)).string(),
                                                 header_for(ShareKind::kOutput, cfg, a.c.ell_x, j))));
  }
  auto v = reveal_output(cfg, FixedPointCodec(cfg.field(), a.c.ell_x), outs);
  write_text(a.out, logits_csv(v));
  if (!a.out.empty()) std::cout << "argmax " << argmax(v) << "\n";
  return kOk;
}

// ---- simulate ----

struct SimArgs {
  Common c;
  std::string mode = "sim";
  std::string hosts;
  std::string input;
  std::uint64_t input_index = 0;
  double input_scale = zoo::kTinyInputScale;
  double latency_ms = 0;
  double bandwidth_mbps = 0;
  std::string out;
  std::string stats;
  bool check = false;
};

int cmd_simulate(const SimArgs& a) {
  const PackingConfig cfg = a.c.packing();
  const Model m = a.c.load();
  const auto x = load_input(a.input, m, a.c.seed, a.input_index, a.input_scale);
  RunOptions opt;
  opt.seed = a.c.seed;
  opt.offline = a.c.offline_mode();
  opt.net.latency_ms = a.latency_ms;
  opt.net.bandwidth_mbps = a.bandwidth_mbps;
  if (a.mode == "tcp") {
    opt.net.mode = NetworkConfig::Mode::kTcp;
    opt.net.hosts = read_hosts(a.hosts);
  } else if (a.mode != "sim") {
    throw Error(Errc::kInvalidConfig, "--mode must be sim or tcp");
  }
  auto run = run_inference(m, cfg, a.c.ell_x, x, opt);
  if (!a.out.empty()) write_text(a.out, logits_csv(run.output));
  if (!a.stats.empty()) write_text(a.stats, stats_csv(run.stats));
  std::cout << "n=" << cfg.n() << " k=" << cfg.k() << " ell=" << a.c.ell << " ell_x=" << a.c.ell_x
            << " offline=" << a.c.offline << " mode=" << a.mode << "\n"
            << phase_summary(run.stats) << "argmax " << argmax(run.output) << "\n";
  if (a.out.empty()) std::cout << logits_csv(run.output);
  if (a.check) {
    auto ref = oracle::plaintext_infer(m, a.c.ell, a.c.ell_x, x);
    oracle::BigInt worst = 0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      oracle::BigInt d = oracle::centered(run.output_fixed[i].value, cfg.field().modulus()) - ref[i];
      worst = std::max(worst, d < 0 ? oracle::BigInt(-d) : d);
    }
    std::cout << "max deviation from plaintext fixed point: " << worst << " ulp (bound "
              << m.truncations() << ")\n";
  }
  return kOk;
}

// ---- bench ----

struct BenchArgs {
  Common c;
  std::vector<int> ns = {5, 7, 11};
  std::vector<int> ks = {2, 3};
  std::vector<std::string> protocols;
  std::vector<std::string> models;
  std::size_t scale = 4;
  std::string out = "bench.csv";
  std::string md;
};

const char* kBenchHeader =
    "n,k,ell,protocol,batch,rows,inner,cols,width,phase,rounds,elements,p1_sent,p1_received,"
    "max_other_sent,max_other_received,wall_ms\n";

std::string bench_row(int n, int k, int ell, const bench::ProtocolCase& c, Phase ph,
                      const CostSummary& s, double ms) {
  std::ostringstream o;
  o << n << ',' << k << ',' << ell << ',' << c.protocol << ',' << c.batch << ',' << c.rows << ','
    << c.inner << ',' << c.cols << ',' << c.width << ',' << phase_name(ph) << ',' << s.rounds << ','
    << s.total_elements << ',' << s.p1_sent << ',' << s.p1_received << ',' << s.max_other_sent << ','
    << s.max_other_received << ',' << format_double(ms) << '\n';
  return o.str();
}

std::string markdown_from_csv(const std::string& csv);

int cmd_bench(const BenchArgs& a) {
  std::vector<std::string> protocols = a.protocols.empty() ? bench::protocols() : a.protocols;
  std::string csv = kBenchHeader;
  for (int n : a.ns) {
    for (int k : a.ks) {
      if (n % 2 == 0 || k < 2 || k > (n - 1) / 2) {
        std::cerr << "skipping n=" << n << " k=" << k << " (needs odd n and 2 <= k <= (n-1)/2)\n";
        continue;
      }
      const PackingConfig cfg(Field(a.c.ell), n, k);
      for (const auto& name : protocols) {
        auto c = bench::default_case(name, cfg, a.scale);
        RunOptions opt;
        opt.seed = a.c.seed;
        opt.offline = bench::is_generator(name) ? OfflineMode::kInteractive : a.c.offline_mode();
        auto t = bench::run_protocol(c, cfg, a.c.ell_x, opt);
        csv += bench_row(n, k, a.c.ell, c, Phase::kOffline, t.offline, t.wall_ms);
        csv += bench_row(n, k, a.c.ell, c, Phase::kOnline, t.online, t.wall_ms);
      }
      for (const auto& name : a.models) {
        const Model m = zoo::by_name(name, a.c.seed);
        RunOptions opt;
        opt.seed = a.c.seed;
        opt.offline = a.c.offline_mode();
        const auto start = std::chrono::steady_clock::now();
        auto run = run_inference(m, cfg, a.c.ell_x, zoo::random_input(m.input, a.c.seed, 0, zoo::kTinyInputScale), opt);
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        std::vector<StatsPoint> before(run.stats.size()), after;
        for (const auto& s : run.stats) after.push_back(snapshot(s));
        bench::ProtocolCase c;
        c.protocol = "model:" + name;
        c.batch = 0;
        csv += bench_row(n, k, a.c.ell, c, Phase::kOffline, summarize(before, after, Phase::kOffline), ms);
        csv += bench_row(n, k, a.c.ell, c, Phase::kOnline, summarize(before, after, Phase::kOnline), ms);
      }
    }
  }
  write_text(a.out, csv);
  if (!a.md.empty()) write_text(a.md, markdown_from_csv(csv));
  if (a.out != "-") std::cout << "wrote " << a.out << "\n";
  return kOk;
}

// ---- report ----

std::vector<std::map<std::string, std::string>> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> cols;
  std::vector<std::map<std::string, std::string>> rows;
  auto split = [](const std::string& l) {
    std::vector<std::string> f;
    std::string cell;
    std::istringstream ss(l);
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    return f;
  };
  if (!std::getline(in, line)) throw Error(Errc::kIo, "empty CSV");
  cols = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split(line);
    if (f.size() != cols.size()) throw Error(Errc::kIo, "CSV row has " + std::to_string(f.size()) + " fields");
    std::map<std::string, std::string> r;
    for (std::size_t i = 0; i < cols.size(); ++i) r[cols[i]] = f[i];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::uint64_t num(const std::map<std::string, std::string>& r, const std::string& key) {
  auto it = r.find(key);
  if (it == r.end()) throw Error(Errc::kIo, "CSV lacks column " + key);
  std::uint64_t v = 0;
  auto res = std::from_chars(it->second.data(), it->second.data() + it->second.size(), v);
  if (res.ec != std::errc()) throw Error(Errc::kIo, "bad number in column " + key);
  return v;
}

// Round counts stated in the protocol descriptions, where they exist.
std::string reference_rounds(const std::string& p, int ell, std::size_t width) {
  const int lg = ceil_log2(static_cast<std::size_t>(ell));
  if (p == "vec_mat_mult" || p == "vec_mat_mult_trunc" || p == "pmat_mult_trunc" || p == "pack_trans") return "1";
  if (p == "pre_or" || p == "pre_mult") return std::to_string(ceil_log2(width));
  if (p == "bitwise_lt") return std::to_string(lg + 2);
  if (p == "drelu") return std::to_string(lg + 5);
  if (p == "relu") return std::to_string(lg + 6);
  if (p == "maxpool") return std::to_string(ceil_log2(width) * (lg + 6));
  return "";
}

std::string markdown_from_csv(const std::string& csv) {
  std::ostringstream o;
  o << "| n | k | protocol | phase | rounds | elements | max non-P1 sent | wall ms |\n"
    << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : parse_csv(csv)) {
    o << "| " << r.at("n") << " | " << r.at("k") << " | " << r.at("protocol") << " | " << r.at("phase")
      << " | " << r.at("rounds") << " | " << r.at("elements") << " | " << r.at("max_other_sent")
      << " | " << r.at("wall_ms") << " |\n";
  }
  return o.str();
}

struct ReportArgs {
  std::string bench;
  std::string out;
  std::string offline = "dealer";
  std::uint64_t seed = 1;
  int ell_x = 13;
};

int cmd_report(const ReportArgs& a) {
  std::ifstream in(a.bench);
  if (!in) throw Error(Errc::kIo, "cannot open " + a.bench);
  std::stringstream buf;
  buf << in.rdbuf();
  const OfflineMode mode = a.offline == "interactive" ? OfflineMode::kInteractive : OfflineMode::kDealer;
  std::ostringstream o;
  o << "| n | k | protocol | phase | rounds | predicted rounds | reference rounds | elements | predicted elements | per-party (non-P1 sent+recv) | reference per-party | status |\n"
    << "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
  int deviations = 0, checked = 0;
  for (const auto& r : parse_csv(buf.str())) {
    const int n = static_cast<int>(num(r, "n")), k = static_cast<int>(num(r, "k")), ell = static_cast<int>(num(r, "ell"));
    const PackingConfig cfg(Field(ell), n, k);
    const std::string p = r.at("protocol");
    const bool online = r.at("phase") == "online";
    std::optional<ProtocolCost> want;
    std::string ref_rounds, ref_party;
    if (p.rfind("model:", 0) == 0) {
      const Model m = zoo::by_name(p.substr(6), a.seed);
      if (online) want = inference_cost(cfg, make_plan(m, k));
      else if (mode == OfflineMode::kDealer) want = ProtocolCost{};
    } else {
      bench::ProtocolCase c{p, num(r, "batch"), num(r, "rows"), num(r, "inner"), num(r, "cols"), num(r, "width"), 0};
      const OfflineMode m = bench::is_generator(p) ? OfflineMode::kInteractive : mode;
      want = online ? std::optional<ProtocolCost>(bench::predicted_online(c, cfg)) : bench::predicted_offline(c, cfg, m);
      if (online) {
        ref_rounds = reference_rounds(p, ell, c.width);
        // 2um/k per party, um/k being the number of packed output entries.
        if (p == "pmat_mult_trunc") ref_party = std::to_string(2 * c.rows * c.cols);
      }
    }
    const std::uint64_t rounds = num(r, "rounds"), elements = num(r, "elements");
    const std::uint64_t party = num(r, "max_other_sent") + num(r, "max_other_received");
    std::string status = "n/a";
    if (want) {
      ++checked;
      const bool ok = want->rounds == rounds && want->elements == elements;
      status = ok ? "ok" : "DEVIATION";
      if (!ok) ++deviations;
    }
    o << "| " << n << " | " << k << " | " << p << " | " << r.at("phase") << " | " << rounds << " | "
      << (want ? std::to_string(want->rounds) : "") << " | " << ref_rounds << " | " << elements << " | "
      << (want ? std::to_string(want->elements) : "") << " | " << party << " | " << ref_party << " | "
      << status << " |\n";
  }
  o << "\nchecked " << checked << " rows against closed forms, " << deviations << " deviation(s)\n";
  write_text(a.out, o.str());
  if (!a.out.empty()) std::cout << "checked " << checked << " rows, " << deviations << " deviation(s)\n";
  return kOk;
}

int exit_code(Errc e) {
  switch (e) {
    case Errc::kInvalidConfig:
    case Errc::kConfigMismatch:
    case Errc::kShapeMismatch:
    case Errc::kOutOfRange:
    case Errc::kSetupMissing:
      return kConfig;
    case Errc::kIo:
      return kIoError;
    default:
      return kProtocol;
  }
}

// Flags from --config are inserted right after the subcommand name, so
// anything given on the command line (parsed later, last value wins) overrides them.
std::vector<std::string> with_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--config") path = args[i + 1];
  }
  for (const auto& a : args) {
    if (a.rfind("--config=", 0) == 0) path = a.substr(9);
  }
  if (path.empty() || args.empty()) return args;
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIo, "cannot open config " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kIo, path + ": " + e.what());
  }
  std::vector<std::string> extra;
  for (const auto& [key, value] : j.items()) {
    extra.push_back("--" + key);
    extra.push_back(value.is_string() ? value.get<std::string>() : value.dump());
  }
  args.insert(args.begin() + 1, extra.begin(), extra.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Packed secret sharing neural network inference"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  ShareArgs share;
  auto* s = app.add_subcommand("share", "Write per-party share files for the client, model owner or dealer");
  add_common(s, share.c);
  s->add_option("--role", share.role, "client, owner or dealer")->required();
  s->add_option("--input", share.input, "input tensor JSON (client; default: random input)");
  s->add_option("--input-index", share.input_index, "index of the random input");
  s->add_option("--input-scale", share.input_scale, "range of the random input");
  s->add_option("--out", share.out, "output directory")->capture_default_str();

  PartyArgs party;
  auto* rp = app.add_subcommand("run-party", "Run one party over TCP");
  add_common(rp, party.c);
  rp->add_option("--party", party.party, "party index, 1-based")->required();
  rp->add_option("--hosts", party.hosts, "file with one host:port per party")->required();
  rp->add_option("--shares", party.shares, "directory with this party's share files")->capture_default_str();
  rp->add_option("--out", party.out, "directory for the output share (default: --shares)");
  rp->add_option("--stats", party.stats, "per-link stats CSV");
  rp->add_option("--latency-ms", party.latency_ms, "added round-trip latency");
  rp->add_option("--bandwidth-mbps", party.bandwidth_mbps, "link bandwidth, 0 for unlimited");
  rp->add_option("--timeout-ms", party.timeout_ms, "receive timeout")->capture_default_str();

  SimArgs sim;
  auto* sm = app.add_subcommand("simulate", "Run all parties in this process and reveal the output");
  add_common(sm, sim.c);
  sm->add_option("--mode", sim.mode, "sim or tcp")->capture_default_str();
  sm->add_option("--hosts", sim.hosts, "hosts file for tcp mode");
  sm->add_option("--input", sim.input, "input tensor JSON (default: random input)");
  sm->add_option("--input-index", sim.input_index, "index of the random input");
  sm->add_option("--input-scale", sim.input_scale, "range of the random input");
  sm->add_option("--latency-ms", sim.latency_ms, "added round-trip latency per link");
  sm->add_option("--bandwidth-mbps", sim.bandwidth_mbps, "link bandwidth, 0 for unlimited");
  sm->add_option("--out", sim.out, "logits CSV");
  sm->add_option("--stats", sim.stats, "per-link stats CSV");
  sm->add_flag("--check", sim.check, "compare with plaintext fixed-point inference");

  RevealArgs reveal;
  auto* rv = app.add_subcommand("reveal", "Reconstruct logits from the parties' output shares");
  add_common(rv, reveal.c, false);
  rv->add_option("--shares", reveal.shares, "directory with output.p*.shr")->capture_default_str();
  rv->add_option("--out", reveal.out, "logits CSV (default: stdout)");

  BenchArgs bench;
  auto* bn = app.add_subcommand("bench", "Measure protocol rounds and traffic over a parameter grid");
  add_common(bn, bench.c, false);
  bn->add_option("--ns", bench.ns, "party counts")->delimiter(',')->capture_default_str();
  bn->add_option("--ks", bench.ks, "packing parameters")->delimiter(',')->capture_default_str();
  bn->add_option("--protocols", bench.protocols, "subset of protocols")->delimiter(',');
  bn->add_option("--models", bench.models, "end-to-end models (tiny-cnn, lenet-small)")->delimiter(',');
  bn->add_option("--scale", bench.scale, "batch size multiplier")->capture_default_str();
  bn->add_option("--out", bench.out, "CSV output")->capture_default_str();
  bn->add_option("--md", bench.md, "markdown table output");

  ReportArgs report;
  auto* rep = app.add_subcommand("report", "Compare measured traffic with the closed forms");
  rep->add_option("--bench", report.bench, "CSV written by bench")->required();
  rep->add_option("--out", report.out, "markdown output (default: stdout)");
  rep->add_option("--offline", report.offline, "offline mode used by the bench run")->capture_default_str();
  rep->add_option("--seed", report.seed, "seed used for zoo models")->capture_default_str();

  try {
    auto args = with_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
    if (*s) return cmd_share(share);
    if (*rp) return cmd_run_party(party);
    if (*sm) return cmd_simulate(sim);
    if (*rv) return cmd_reveal(reveal);
    if (*bn) return cmd_bench(bench);
    if (*rep) return cmd_report(report);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kProtocol;
  }
  return kOk;
}
