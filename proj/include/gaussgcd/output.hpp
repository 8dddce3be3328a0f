#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gaussgcd/analytic.hpp"
#include "gaussgcd/errors.hpp"
#include "gaussgcd/fit.hpp"
#include "gaussgcd/gcd_statistics.hpp"

namespace gaussgcd::output {

/// Shortest decimal that round-trips to the same double.
inline std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::logic_error("to_chars failed");
  return {buf, end};
}

/// Empty cells render as an empty CSV field and are omitted from JSON records.
using Cell = std::variant<std::monostate, std::int64_t, std::uint64_t, double, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

inline std::string render_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

inline void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << render_cell(row[i]);
    os << '\n';
  }
}

inline nlohmann::ordered_json to_json(const Table& t) {
  auto records = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < t.header.size(); ++i) {
      std::visit(
          [&](const auto& v) {
            if constexpr (!std::is_same_v<std::decay_t<decltype(v)>, std::monostate>) rec[t.header[i]] = v;
          },
          row[i]);
    }
    records.push_back(std::move(rec));
  }
  return records;
}

inline void write_json(const Table& t, std::ostream& os) { os << to_json(t).dump(2) << '\n'; }

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  return out;
}

inline void emit_csv(const Table& t, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_csv(t, out);
  if (!out.flush()) throw IoError(path.string(), "write failed");
}

inline void emit_json(const Table& t, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_json(t, out);
  if (!out.flush()) throw IoError(path.string(), "write failed");
}

// Schemas

inline Table distribution_table(const GcdDistribution& d) {
  Table t{{"x", "k", "count"}, {}};
  for (std::uint64_t k = 1; k < d.counts.size(); ++k) {
    if (d.counts[k] != 0) t.rows.push_back({d.x, k, d.counts[k]});
  }
  return t;
}

inline Table moments_table(std::span<const MomentSeries> series) {
  Table t{{"x", "n", "moment"}, {}};
  for (const auto& s : series) {
    for (const auto& sample : s.samples) {
      t.rows.push_back({static_cast<std::uint64_t>(sample.x), static_cast<std::int64_t>(s.n), sample.value});
    }
  }
  return t;
}

struct FitRow {
  int n = 2;
  FitResult fit;
};

/// n, coeff_deg0..coeff_degD, residual, conjectured, rel_err; D is the largest fitted degree.
inline Table fits_table(std::span<const FitRow> fits) {
  int max_degree = 0;
  for (const auto& f : fits) max_degree = std::max(max_degree, f.fit.degree);
  Table t;
  t.header.push_back("n");
  for (int j = 0; j <= max_degree; ++j) t.header.push_back("coeff_deg" + std::to_string(j));
  t.header.insert(t.header.end(), {"residual", "conjectured", "rel_err"});
  for (const auto& f : fits) {
    std::vector<Cell> row{static_cast<std::int64_t>(f.n)};
    for (int j = 0; j <= max_degree; ++j) {
      if (j <= f.fit.degree) {
        row.emplace_back(f.fit.coefficients[static_cast<std::size_t>(f.fit.degree - j)]);
      } else {
        row.emplace_back(std::monostate{});
      }
    }
    const double conj = conjectured_moment_constant(f.n);
    row.emplace_back(f.fit.residual);
    row.emplace_back(conj);
    row.emplace_back(std::abs(f.fit.leading() - conj) / conj);
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// "0.63951x + 0.5753" style rendering, highest degree first.
inline std::string format_polynomial(const FitResult& fit) {
  std::string out;
  for (int j = fit.degree; j >= 0; --j) {
    const double c = fit.coefficients[static_cast<std::size_t>(fit.degree - j)];
    char buf[64];
    std::snprintf(buf, sizeof buf, j == fit.degree ? "%.5f" : "%.4f", std::abs(c));
    if (out.empty()) {
      out += (c < 0 ? "-" : "");
    } else {
      out += (c < 0 ? " - " : " + ");
    }
    out += buf;
    if (j >= 1) out += "x";
    if (j >= 2) out += "^" + std::to_string(j);
  }
  return out;
}

// SVG geometry
inline constexpr double kSvgWidth = 720.0;
inline constexpr double kSvgHeight = 480.0;
inline constexpr double kMarginLeft = 90.0;
inline constexpr double kMarginRight = 30.0;
inline constexpr double kMarginTop = 30.0;
inline constexpr double kMarginBottom = 90.0;

/// Standalone SVG: data polyline, fitted curve at the same abscissae, axes, and a caption
/// naming the fitted polynomial.
inline std::string render_svg(const MomentSeries& series, const FitResult& fit, const std::string& title = {}) {
  if (series.samples.size() < 2) throw DomainError("plot needs at least two samples");
  double xmin = series.samples.front().x, xmax = series.samples.back().x;
  double ymin = series.samples.front().value, ymax = ymin;
  for (const auto& s : series.samples) {
    xmin = std::min(xmin, s.x);
    xmax = std::max(xmax, s.x);
    ymin = std::min({ymin, s.value, fit(s.x)});
    ymax = std::max({ymax, s.value, fit(s.x)});
  }
  if (xmax == xmin) throw DomainError("plot needs distinct abscissae");
  if (ymax == ymin) ymax = ymin + 1.0;
  const double pw = kSvgWidth - kMarginLeft - kMarginRight;
  const double ph = kSvgHeight - kMarginTop - kMarginBottom;
  auto px = [&](double x) { return kMarginLeft + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return kMarginTop + (ymax - y) / (ymax - ymin) * ph; };
  auto coord = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSvgWidth << "\" height=\"" << kSvgHeight
     << "\" viewBox=\"0 0 " << kSvgWidth << ' ' << kSvgHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + ph << "\" x2=\"" << kMarginLeft + pw
     << "\" y2=\"" << kMarginTop + ph << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft << "\" y2=\""
     << kMarginTop + ph << "\" stroke=\"black\"/>\n";
  os << "<polyline id=\"data\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < series.samples.size(); ++i) {
    os << (i ? " " : "") << coord(px(series.samples[i].x)) << ',' << coord(py(series.samples[i].value));
  }
  os << "\"/>\n";
  os << "<polyline id=\"fit\" fill=\"none\" stroke=\"crimson\" stroke-width=\"1\" stroke-dasharray=\"4 3\" points=\"";
  for (std::size_t i = 0; i < series.samples.size(); ++i) {
    os << (i ? " " : "") << coord(px(series.samples[i].x)) << ',' << coord(py(fit(series.samples[i].x)));
  }
  os << "\"/>\n";
  os << "<text x=\"" << kMarginLeft << "\" y=\"" << kMarginTop + ph + 18 << "\" font-size=\"11\">"
     << format_number(xmin) << "</text>\n";
  os << "<text x=\"" << kMarginLeft + pw << "\" y=\"" << kMarginTop + ph + 18
     << "\" font-size=\"11\" text-anchor=\"end\">" << format_number(xmax) << "</text>\n";
  os << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << kMarginTop + ph
     << "\" font-size=\"11\" text-anchor=\"end\">" << coord(ymin) << "</text>\n";
  os << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << kMarginTop + 10
     << "\" font-size=\"11\" text-anchor=\"end\">" << coord(ymax) << "</text>\n";
  os << "<text x=\"" << kMarginLeft + pw / 2 << "\" y=\"" << kMarginTop + ph + 36
     << "\" font-size=\"13\" text-anchor=\"middle\">x</text>\n";
  os << "<text x=\"20\" y=\"" << kMarginTop + ph / 2 << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
     << kMarginTop + ph / 2 << ")\">E_x{N(gcd)^" << series.n << "}</text>\n";
  const std::string caption = (title.empty() ? "" : title + " ") + "Best fit curve: " + format_polynomial(fit);
  os << "<text id=\"caption\" x=\"" << kSvgWidth / 2 << "\" y=\"" << kSvgHeight - 20
     << "\" font-size=\"13\" text-anchor=\"middle\">" << caption << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

inline void emit_svg(const MomentSeries& series, const FitResult& fit, const std::filesystem::path& path,
                     const std::string& title = {}) {
  const std::string svg = render_svg(series, fit, title);
  auto out = open_output(path);
  out << svg;
  if (!out.flush()) throw IoError(path.string(), "write failed");
}

}  // namespace gaussgcd::output
