// Copyright 2026 The tfshift Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tfshift/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "tfshift/detect.hpp"
#include "tfshift/errors.hpp"
#include "tfshift/heisenberg.hpp"
#include "tfshift/sim.hpp"
#include "tfshift/signal_io.hpp"
#include "tfshift/weil.hpp"

namespace tfshift::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

// Usage problems detected after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failures while building a requested waveform.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Prime checked_prime(std::uint64_t p) {
  try {
    return Prime(p);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// ---- gen --------------------------------------------------------------------

struct GenArgs {
  std::uint64_t p = 0;
  std::string kind;
  std::string line = "0";
  std::string lines;
  std::int64_t index = 0;
  std::int64_t index2 = 0;
  std::int64_t torus_trace = 0;
  std::int64_t eig = -1;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "text";
};

// First non-degenerate Weil vector, or the requested one (must be non-degenerate).
WeilVector pick_weil_vector(const Torus& torus, std::int64_t requested) {
  auto basis = torus_eigenbasis(torus);
  if (requested < 0) {
    for (auto& w : basis) {
      if (!w.degenerate) return w;
    }
    throw ConstructionError("torus has no non-degenerate eigenvector");
  }
  if (static_cast<std::size_t>(requested) >= basis.size()) {
    throw UsageError("eigenvector index " + std::to_string(requested) + " out of range");
  }
  auto& w = basis[static_cast<std::size_t>(requested)];
  if (w.degenerate) {
    throw ConstructionError("Weil eigenvector " + std::to_string(requested) +
                            " lies in a degenerate eigenspace");
  }
  return w;
}

Torus checked_torus(Prime p, std::int64_t trace) {
  try {
    return make_torus(p, reduce(p, trace));
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

Line checked_line(Prime p, const std::string& text) {
  try {
    return parse_line(p, text);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

int cmd_gen(const GenArgs& a, std::ostream& out, std::ostream& err) {
  const Prime p = checked_prime(a.p);
  SignalFile file{{}, a.format == "binary" ? PayloadFormat::kBinary : PayloadFormat::kText, Signal(p)};
  if (a.format != "binary" && a.format != "text") throw UsageError("format must be text or binary");
  auto& h = file.header;
  h["kind"] = a.kind;
  const Residue index = reduce(p, a.index);

  if (a.kind == "heisenberg") {
    const Line l = checked_line(p, a.line);
    file.signal = line_basis_vector(p, l, index).signal;
    h["line"] = format_line(l);
    h["index"] = std::to_string(index);
  } else if (a.kind == "weil") {
    const Torus t = checked_torus(p, a.torus_trace);
    const auto w = pick_weil_vector(t, a.eig >= 0 ? a.eig : a.index);
    file.signal = w.signal;
    h["torus-trace"] = std::to_string(*t.trace_class);
    h["eig"] = std::to_string(w.index);
  } else if (a.kind == "flag") {
    const Line l = checked_line(p, a.line);
    const Torus t = checked_torus(p, a.torus_trace);
    const Flag f = make_flag(line_basis_vector(p, l, index), pick_weil_vector(t, a.eig));
    file.signal = f.signal;
    h["line"] = format_line(l);
    h["index"] = std::to_string(index);
    h["torus-trace"] = std::to_string(*t.trace_class);
    h["eig"] = std::to_string(f.phi_t.index);
  } else if (a.kind == "cross") {
    const auto parts = split(a.lines, ',');
    if (parts.size() != 2) throw UsageError("--lines needs two comma-separated lines");
    const Line l = checked_line(p, parts[0]);
    const Line m = checked_line(p, parts[1]);
    if (l == m) throw UsageError("cross lines must differ");
    const Cross c = cross_waveform(p, l, m, index, reduce(p, a.index2));
    file.signal = c.signal;
    h["line"] = format_line(l);
    h["line2"] = format_line(m);
    h["index"] = std::to_string(c.f_l.index);
    h["index2"] = std::to_string(c.f_m.index);
  } else if (a.kind == "random") {
    file.signal = random_phase_signal(p, a.seed);
  } else {
    throw UsageError("unknown kind '" + a.kind + "'");
  }
  h["seed"] = std::to_string(a.seed);

  std::ostringstream info;
  info << "kind=" << a.kind << " p=" << p.value();
  for (const auto& [k, v] : h) {
    if (k != "kind") info << ' ' << k << '=' << v;
  }
  info << " norm=" << file.signal.norm() << " norm2=" << file.signal.norm_squared() << '\n';

  if (a.out.empty() || a.out == "-") {
    write_signal_file(out, file);
    err << info.str();
  } else {
    save_signal_file(a.out, file);
    out << info.str();
  }
  return kSuccess;
}

// ---- ambiguity --------------------------------------------------------------

struct AmbiguityArgs {
  std::string sender;
  std::string receiver;
  std::string out;
  std::string line;
  std::vector<std::int64_t> offset;
  std::string format = "csv";
};

SignalFile load_or_usage(const std::string& path) {
  try {
    return load_signal_file(path);
  } catch (const DomainError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

int cmd_ambiguity(const AmbiguityArgs& a, std::ostream& out) {
  const auto s = load_or_usage(a.sender);
  const auto r = load_or_usage(a.receiver.empty() ? a.sender : a.receiver);
  if (s.signal.prime() != r.signal.prime()) throw UsageError("sender and receiver have different p");
  const Prime p = s.signal.prime();

  std::ofstream file;
  std::ostream* os = &out;
  if (!a.out.empty() && a.out != "-") {
    file.open(a.out, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + a.out + "'");
    os = &file;
  }
  if (!a.line.empty()) {
    Line l = checked_line(p, a.line);
    if (!a.offset.empty()) {
      if (a.offset.size() != 2) throw UsageError("--offset needs tau,omega");
      l.offset = {reduce(p, a.offset[0]), reduce(p, a.offset[1])};
    }
    write_line_profile(*os, p, mf_on_line(s.signal, r.signal, l));
    return kSuccess;
  }
  if (a.format != "csv" && a.format != "binary") throw UsageError("format must be csv or binary");
  write_grid(*os, mf_full(s.signal, r.signal),
             a.format == "binary" ? PayloadFormat::kBinary : PayloadFormat::kText);
  return kSuccess;
}

// ---- detect -----------------------------------------------------------------

struct DetectArgs {
  std::string receiver;
  std::string manifest;
  std::string method = "flag";
  double theta1 = 0.5;
  double theta2 = 1.5;
  std::size_t targets = 1;
};

struct ManifestEntry {
  std::string path;
  SignalFile file;
};

std::vector<ManifestEntry> read_manifest(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open manifest '" + path + "'");
  const fs::path base = fs::path(path).parent_path();
  std::vector<ManifestEntry> entries;
  std::string line;
  while (std::getline(is, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    fs::path p(line);
    if (p.is_relative()) p = base / p;
    try {
      entries.push_back({line, load_signal_file(p)});
    } catch (const DomainError& e) {
      throw UsageError("manifest entry '" + line + "': " + e.what());
    }
  }
  if (entries.empty()) throw UsageError("manifest lists no waveforms");
  return entries;
}

Waveform waveform_from_file(const ManifestEntry& e, const std::string& method) {
  const Prime p = e.file.signal.prime();
  if (!e.file.has("line")) throw UsageError("'" + e.path + "' has no line descriptor");
  const Line l = checked_line(p, e.file.field("line"));
  if (method == "cross") {
    if (!e.file.has("line2")) throw UsageError("'" + e.path + "' is not a cross (no line2)");
    return {Waveform::Kind::kCross, e.file.signal, l, checked_line(p, e.file.field("line2"))};
  }
  return {Waveform::Kind::kFlag, e.file.signal, l, std::nullopt};
}

json detection_json(const Detection& d) {
  return {{"tau", d.shift.tau},
          {"omega", d.shift.omega},
          {"magnitude", d.magnitude},
          {"stage1_magnitude", d.stage1_magnitude},
          {"confident", d.confident}};
}

int cmd_detect(const DetectArgs& a, std::ostream& out) {
  if (a.method != "flag" && a.method != "cross" && a.method != "radar") {
    throw UsageError("method must be flag, cross or radar");
  }
  const auto r = load_or_usage(a.receiver);
  const auto entries = read_manifest(a.manifest);
  std::vector<Waveform> family;
  for (const auto& e : entries) {
    if (e.file.signal.prime() != r.signal.prime()) throw UsageError("'" + e.path + "' has a different p");
    family.push_back(waveform_from_file(e, a.method));
  }
  const Thresholds th{a.theta1, a.theta2};
  bool all_confident = true;

  if (a.method == "radar") {
    const auto result = radar_detect(r.signal, family.front().signal, family.front().line, a.targets,
                                     a.theta1, a.theta2);
    for (const auto& d : result.targets) {
      json rec = detection_json(d);
      rec["waveform"] = entries.front().path;
      out << rec.dump() << '\n';
      all_confident = all_confident && d.confident;
    }
    all_confident = all_confident && result.complete;
    out << json{{"targets_requested", a.targets}, {"targets_found", result.targets.size()},
                {"complete", result.complete}}
               .dump()
        << '\n';
    return all_confident ? kSuccess : kLowConfidence;
  }

  const auto bits = extract_bits(r.signal, family, th);
  for (std::size_t k = 0; k < bits.size(); ++k) {
    json rec = detection_json(bits[k].detection);
    rec["waveform"] = entries[k].path;
    rec["bit"] = bits[k].bit;
    rec["soft_re"] = bits[k].soft.real();
    rec["soft_im"] = bits[k].soft.imag();
    out << rec.dump() << '\n';
    all_confident = all_confident && bits[k].detection.confident;
  }
  return all_confident ? kSuccess : kLowConfidence;
}

// ---- simulate / bench ------------------------------------------------------

struct SimulateArgs {
  std::string config;
  std::uint64_t p = 101;
  std::size_t r = 3;
  double sigma = 0.0;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::string method = "flag";
  double theta1 = 0.5;
  double theta2 = 1.5;
  bool timing = false;
};

template <typename T>
void apply_config(CLI::App& app, const std::map<std::string, std::string>& cfg, const std::string& key,
                  T& target) {
  const auto it = cfg.find(key);
  if (it == cfg.end()) return;
  if (app.get_option("--" + key)->count() > 0) return;  // flags override the file
  std::istringstream is(it->second);
  T value{};
  if (!(is >> value) || !(is >> std::ws).eof()) {
    throw UsageError("config key '" + key + "' has invalid value '" + it->second + "'");
  }
  target = value;
}

int cmd_simulate(CLI::App& app, SimulateArgs a, std::ostream& out) {
  if (!a.config.empty()) {
    std::ifstream is(a.config);
    if (!is) throw UsageError("cannot open config '" + a.config + "'");
    std::map<std::string, std::string> cfg;
    try {
      cfg = parse_config(is);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    static const std::set<std::string> known = {"p", "r", "sigma", "trials", "seed", "method", "theta1", "theta2"};
    for (const auto& [k, v] : cfg) {
      if (!known.count(k)) throw UsageError("unknown config key '" + k + "'");
    }
    apply_config(app, cfg, "p", a.p);
    apply_config(app, cfg, "r", a.r);
    apply_config(app, cfg, "sigma", a.sigma);
    apply_config(app, cfg, "trials", a.trials);
    apply_config(app, cfg, "seed", a.seed);
    apply_config(app, cfg, "method", a.method);
    apply_config(app, cfg, "theta1", a.theta1);
    apply_config(app, cfg, "theta2", a.theta2);
  }
  if (a.method != "flag" && a.method != "cross") throw UsageError("method must be flag or cross");
  if (a.trials == 0 || a.r == 0 || !(a.sigma >= 0)) throw UsageError("invalid simulation config");

  MonteCarloConfig cfg;
  cfg.p = checked_prime(a.p);
  cfg.users = a.r;
  cfg.sigma = a.sigma;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.method = a.method == "cross" ? Method::kCross : Method::kFlag;
  cfg.thresholds = {a.theta1, a.theta2};
  TrialStats s;
  try {
    s = monte_carlo(cfg);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }

  out << "p,r,sigma,method,trials,detections,exact_shift_rate,bit_error_rate,confident_rate,"
         "mean_stage1_mag,mean_peak_mag"
      << (a.timing ? ",wall_time" : "") << '\n';
  out << cfg.p.value() << ',' << a.r << ',' << a.sigma << ',' << a.method << ',' << s.trials << ','
      << s.detections << ',' << s.exact_shift_rate << ',' << s.bit_error_rate << ',' << s.confident_rate
      << ',' << s.mean_stage1_mag << ',' << s.mean_peak_mag;
  if (a.timing) out << ',' << s.wall_time;
  out << '\n';
  return kSuccess;
}

int cmd_bench(const std::string& primes, int repeats, std::uint32_t full_limit, std::ostream& out) {
  std::vector<Prime> list;
  for (const auto& s : split(primes, ',')) {
    try {
      list.push_back(checked_prime(std::stoull(s)));
    } catch (const std::invalid_argument&) {
      throw UsageError("bad prime '" + s + "'");
    }
  }
  if (list.empty()) throw UsageError("--p needs at least one prime");
  if (repeats < 1) throw UsageError("--repeats must be positive");
  const auto rows = bench_complexity(list, repeats, full_limit);
  out << "p,line_seconds,full_seconds,ratio,full_mode,line_dft_ops\n";
  for (const auto& r : rows) {
    out << r.p << ',' << r.line_seconds << ',' << r.full_seconds << ',' << r.ratio << ','
        << (r.full_extrapolated ? "extrapolated" : "measured") << ',' << r.line_dft_ops << '\n';
  }
  return kSuccess;
}

}  // namespace

std::map<std::string, std::string> parse_config(std::istream& is) {
  std::map<std::string, std::string> cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError("config line " + std::to_string(lineno) + " is not key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw DomainError("config line " + std::to_string(lineno) + " has an empty key");
    cfg[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"tfshift: waveform design and fast matched filtering over F_p"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a waveform to a signal file");
  gen_cmd->add_option("--p", gen.p, "Odd prime length")->required();
  gen_cmd->add_option("--kind", gen.kind, "heisenberg|weil|flag|cross|random")->required();
  gen_cmd->add_option("--line", gen.line, "Line: slope number or 'vertical'");
  gen_cmd->add_option("--lines", gen.lines, "Cross lines, e.g. 1,2");
  gen_cmd->add_option("--index", gen.index, "Basis index (line character, or Weil eigenvector for kind=weil)");
  gen_cmd->add_option("--index2", gen.index2, "Second line character index for crosses");
  gen_cmd->add_option("--torus-trace", gen.torus_trace, "Torus trace class");
  gen_cmd->add_option("--eig", gen.eig, "Weil eigenvector index (default: first non-degenerate)");
  gen_cmd->add_option("--seed", gen.seed, "Seed for random signals");
  gen_cmd->add_option("--out", gen.out, "Output path (default stdout)");
  gen_cmd->add_option("--format", gen.format, "text|binary");

  AmbiguityArgs amb;
  auto* amb_cmd = app.add_subcommand("ambiguity", "Dump |M[S,R]| as a grid, or along one line");
  amb_cmd->add_option("--sender", amb.sender, "Sender signal file")->required();
  amb_cmd->add_option("--receiver", amb.receiver, "Receiver signal file (default: sender)");
  amb_cmd->add_option("--out", amb.out, "Output path (default stdout)");
  amb_cmd->add_option("--line", amb.line, "Only this line: slope number or 'vertical'");
  amb_cmd->add_option("--offset", amb.offset, "Line offset tau,omega")->delimiter(',');
  amb_cmd->add_option("--format", amb.format, "csv|binary");

  DetectArgs det;
  auto* det_cmd = app.add_subcommand("detect", "Recover shifts and bits from a receiver file");
  det_cmd->add_option("--receiver", det.receiver, "Receiver signal file")->required();
  det_cmd->add_option("--manifest", det.manifest, "File listing sender signal files")->required();
  det_cmd->add_option("--method", det.method, "flag|cross|radar");
  det_cmd->add_option("--theta1", det.theta1, "Line-finding confidence threshold");
  det_cmd->add_option("--theta2", det.theta2, "Peak confidence threshold");
  det_cmd->add_option("--targets", det.targets, "Radar target count");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo detection statistics");
  sim_cmd->add_option("--config", sim.config, "key=value config file; flags override it");
  sim_cmd->add_option("--p", sim.p, "Odd prime");
  sim_cmd->add_option("--r", sim.r, "Number of users");
  sim_cmd->add_option("--sigma", sim.sigma, "Noise standard deviation per complex sample");
  sim_cmd->add_option("--trials", sim.trials, "Number of trials");
  sim_cmd->add_option("--seed", sim.seed, "Seed");
  sim_cmd->add_option("--method", sim.method, "flag|cross");
  sim_cmd->add_option("--theta1", sim.theta1, "Line-finding confidence threshold");
  sim_cmd->add_option("--theta2", sim.theta2, "Peak confidence threshold");
  sim_cmd->add_flag("--timing", sim.timing, "Append wall time (not deterministic)");

  std::string bench_primes = "1009,10007";
  int bench_repeats = 9;
  std::uint32_t bench_full_limit = 2000;
  auto* bench_cmd = app.add_subcommand("bench", "Time one line vs the full plane");
  bench_cmd->add_option("--p", bench_primes, "Comma-separated primes");
  bench_cmd->add_option("--repeats", bench_repeats, "Timing repeats");
  bench_cmd->add_option("--full-limit", bench_full_limit, "Largest p timed over the full plane");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, out, err);
    if (amb_cmd->parsed()) return cmd_ambiguity(amb, out);
    if (det_cmd->parsed()) return cmd_detect(det, out);
    if (sim_cmd->parsed()) return cmd_simulate(*sim_cmd, sim, out);
    if (bench_cmd->parsed()) return cmd_bench(bench_primes, bench_repeats, bench_full_limit, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ConstructionError& e) {
    err << "error: " << e.what() << '\n';
    return kConstructionError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kConstructionError;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kConstructionError;
  }
  return kUsageError;
}

}  // namespace tfshift::cli
