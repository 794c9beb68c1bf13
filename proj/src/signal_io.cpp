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

#include "tfshift/signal_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tfshift/errors.hpp"

namespace tfshift {
namespace {

constexpr std::string_view kSignalMagic = "tfshift-signal";
constexpr std::string_view kGridMagic = "tfshift-grid";

void put_le_double(std::ostream& os, double x) {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  std::array<char, 8> bytes{};
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  os.write(bytes.data(), bytes.size());
}

double get_le_double(std::istream& is) {
  std::array<unsigned char, 8> bytes{};
  if (!is.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    throw DomainError("truncated binary payload");
  }
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= std::uint64_t{bytes[i]} << (8 * i);
  return std::bit_cast<double>(bits);
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::uint64_t parse_uint(std::string_view s, const char* what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw DomainError(std::string("malformed ") + what + ": '" + std::string(s) + "'");
  }
  return v;
}

// Splits "magic k=v k=v" into the magic word and a key/value map.
std::pair<std::string, std::map<std::string, std::string>> parse_header(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw DomainError("missing header line");
  std::istringstream tokens(line);
  std::string magic;
  tokens >> magic;
  std::map<std::string, std::string> fields;
  std::string tok;
  while (tokens >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw DomainError("malformed header field '" + tok + "'");
    fields[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return {magic, fields};
}

PayloadFormat parse_format(const std::string& s) {
  if (s == "text" || s == "csv") return PayloadFormat::kText;
  if (s == "binary") return PayloadFormat::kBinary;
  throw DomainError("unknown payload format '" + s + "'");
}

}  // namespace

const std::string& SignalFile::field(const std::string& key) const {
  const auto it = header.find(key);
  if (it == header.end()) throw DomainError("signal file has no '" + key + "' field");
  return it->second;
}

void write_signal_file(std::ostream& os, const SignalFile& file) {
  const Prime p = file.signal.prime();
  os << kSignalMagic << " p=" << p.value()
     << " format=" << (file.format == PayloadFormat::kBinary ? "binary" : "text");
  for (const auto& [k, v] : file.header) {
    if (k == "p" || k == "format") continue;
    os << ' ' << k << '=' << v;
  }
  os << '\n';
  for (const auto& z : file.signal.samples()) {
    if (file.format == PayloadFormat::kBinary) {
      put_le_double(os, z.real());
      put_le_double(os, z.imag());
    } else {
      os << format_double(z.real()) << ' ' << format_double(z.imag()) << '\n';
    }
  }
}

SignalFile read_signal_file(std::istream& is) {
  auto [magic, fields] = parse_header(is);
  if (magic != kSignalMagic) throw DomainError("not a signal file (magic '" + magic + "')");
  if (!fields.count("p")) throw DomainError("signal file header lacks p");
  const Prime p(parse_uint(fields["p"], "p"));
  const PayloadFormat format = fields.count("format") ? parse_format(fields["format"]) : PayloadFormat::kText;
  fields.erase("p");
  fields.erase("format");

  std::vector<Complex> samples(p.value());
  for (auto& z : samples) {
    if (format == PayloadFormat::kBinary) {
      const double re = get_le_double(is);
      const double im = get_le_double(is);
      z = {re, im};
    } else {
      double re = 0, im = 0;
      if (!(is >> re >> im)) throw DomainError("signal payload shorter than p samples");
      z = {re, im};
    }
  }
  if (format == PayloadFormat::kText) {
    std::string rest;
    if (is >> rest) throw DomainError("signal payload longer than p samples");
  } else if (is.peek() != std::char_traits<char>::eof()) {
    throw DomainError("signal payload longer than p samples");
  }
  return {std::move(fields), format, Signal(p, std::move(samples))};
}

void save_signal_file(const std::filesystem::path& path, const SignalFile& file) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DomainError("cannot open '" + path.string() + "' for writing");
  write_signal_file(os, file);
}

SignalFile load_signal_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DomainError("cannot open '" + path.string() + "'");
  return read_signal_file(is);
}

void write_grid(std::ostream& os, const MFMatrix& m, PayloadFormat format) {
  const std::uint32_t p = m.prime().value();
  os << kGridMagic << " p=" << p << " format=" << (format == PayloadFormat::kBinary ? "binary" : "csv")
     << '\n';
  for (Residue tau = 0; tau < p; ++tau) {
    for (Residue omega = 0; omega < p; ++omega) {
      const double mag = std::abs(m.at(tau, omega));
      if (format == PayloadFormat::kBinary) {
        put_le_double(os, mag);
      } else {
        if (omega) os << ',';
        os << format_double(mag);
      }
    }
    if (format == PayloadFormat::kText) os << '\n';
  }
}

Grid read_grid(std::istream& is) {
  auto [magic, fields] = parse_header(is);
  if (magic != kGridMagic) throw DomainError("not a grid file (magic '" + magic + "')");
  Grid g;
  g.p = static_cast<std::uint32_t>(parse_uint(fields["p"], "p"));
  const PayloadFormat format = parse_format(fields["format"]);
  g.magnitudes.resize(std::size_t{g.p} * g.p);
  if (format == PayloadFormat::kBinary) {
    for (auto& x : g.magnitudes) x = get_le_double(is);
    return g;
  }
  std::string row;
  for (std::uint32_t tau = 0; tau < g.p; ++tau) {
    if (!std::getline(is, row)) throw DomainError("grid has fewer than p rows");
    std::istringstream cells(row);
    std::string cell;
    for (std::uint32_t omega = 0; omega < g.p; ++omega) {
      if (!std::getline(cells, cell, ',')) throw DomainError("grid row shorter than p");
      g.magnitudes[std::size_t{tau} * g.p + omega] = std::stod(cell);
    }
  }
  return g;
}

void write_line_profile(std::ostream& os, Prime p, const LineProfile& profile) {
  os << "tfshift-line p=" << p.value() << " line=" << format_line(profile.line)
     << " offset=" << profile.line.offset.tau << ',' << profile.line.offset.omega << '\n';
  os << "t,tau,omega,re,im,abs\n";
  for (Residue t = 0; t < profile.values.size(); ++t) {
    const PlanePoint v = line_point(p, profile.line, t);
    const Complex z = profile.values[t];
    os << t << ',' << v.tau << ',' << v.omega << ',' << format_double(z.real()) << ','
       << format_double(z.imag()) << ',' << format_double(std::abs(z)) << '\n';
  }
}

std::string format_line(const Line& line) {
  return line.is_vertical() ? "vertical" : "slope:" + std::to_string(line.slope);
}

Line parse_line(Prime p, std::string_view text) {
  if (text == "vertical" || text == "v") return Line::vertical();
  if (text.starts_with("slope:")) text.remove_prefix(6);
  const auto m = parse_uint(text, "line");
  if (m >= p.value()) throw DomainError("slope " + std::string(text) + " not below p");
  return Line::slope_line(static_cast<Residue>(m));
}

}  // namespace tfshift
