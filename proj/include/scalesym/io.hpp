#pragma once

#include <charconv>
#include <cstddef>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "scalesym/band_vector.hpp"
#include "scalesym/multipliers.hpp"
#include "scalesym/residual.hpp"

namespace scalesym::io {

/// Locale-independent decimal formatting, 17 significant digits.
inline std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// RFC-4180 quoting: wrap in quotes when the field contains a comma,
/// quote or newline; embedded quotes are doubled.
inline std::string csv_field(const std::string& s) {
  bool needs_quotes = s.find_first_of(",\"\n") != std::string::npos;
  if (!needs_quotes) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline nlohmann::ordered_json to_json(const BandVector& x) {
  nlohmann::ordered_json j;
  j["band"] = x.band();
  std::vector<double> re, im;
  for (int n = -x.band(); n <= x.band(); ++n) {
    re.push_back(x.c(n).real());
    im.push_back(x.c(n).imag());
  }
  j["re"] = re;
  j["im"] = im;
  return j;
}

inline BandVector band_vector_from_json(const nlohmann::json& j) {
  if (!j.contains("band") || !j.contains("re") || !j.contains("im"))
    throw std::invalid_argument("BandVector JSON: requires band, re, im");
  int band = j.at("band").get<int>();
  if (band < 0) throw std::invalid_argument("BandVector JSON: band must be >= 0");
  auto re = j.at("re").get<std::vector<double>>();
  auto im = j.at("im").get<std::vector<double>>();
  std::size_t want = 2 * static_cast<std::size_t>(band) + 1;
  if (re.size() != want || im.size() != want)
    throw std::invalid_argument(
        "BandVector JSON: re/im must have length 2*band+1");
  BandVector x(band);
  for (int n = -band; n <= band; ++n) {
    std::size_t i = static_cast<std::size_t>(n + band);
    x.set(n, Complex{re[i], im[i]});
  }
  return x;
}

/// Multiplier table sampled on |n| <= band.
inline nlohmann::ordered_json to_json(const MultiplierOperator& m, int band) {
  nlohmann::ordered_json j;
  j["label"] = m.label();
  std::vector<int> idx;
  std::vector<double> re, im;
  for (int n = -band; n <= band; ++n) {
    idx.push_back(n);
    re.push_back(m.coeff(n).real());
    im.push_back(m.coeff(n).imag());
  }
  j["n"] = idx;
  j["re"] = re;
  j["im"] = im;
  return j;
}

inline MultiplierOperator multiplier_from_json(const nlohmann::json& j) {
  if (!j.contains("label") || !j.contains("n") || !j.contains("re") ||
      !j.contains("im"))
    throw std::invalid_argument("multiplier JSON: requires label, n, re, im");
  auto idx = j.at("n").get<std::vector<int>>();
  auto re = j.at("re").get<std::vector<double>>();
  auto im = j.at("im").get<std::vector<double>>();
  if (idx.empty() || idx.size() != re.size() || idx.size() != im.size())
    throw std::invalid_argument("multiplier JSON: n/re/im length mismatch");
  int band = static_cast<int>(idx.size() / 2);
  std::vector<Complex> table(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] != static_cast<int>(i) - band)
      throw std::invalid_argument("multiplier JSON: n must run -band..band");
    table[i] = Complex{re[i], im[i]};
  }
  return MultiplierOperator::from_table(j.at("label").get<std::string>(),
                                        std::move(table));
}

/// CSV columns eps, residual followed by a trailing JSON summary line
/// {"slope": <number or "exact">, "pass": <bool>}.
inline void write_residual_csv(std::ostream& os, const ResidualTable& table,
                               bool pass, double exact_floor = 1e-12) {
  os << "eps,residual\n";
  for (std::size_t i = 0; i < table.size(); ++i)
    os << format_double(table.steps()[i]) << ','
       << format_double(table.residuals()[i]) << '\n';
  nlohmann::ordered_json summary;
  auto slope = table.slope();
  if (table.all_below(exact_floor) || !slope)
    summary["slope"] = "exact";
  else
    summary["slope"] = *slope;
  summary["pass"] = pass;
  os << summary.dump() << '\n';
}

inline void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << body;
}

}  // namespace scalesym::io
