#pragma once

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gaussgcd/analytic.hpp"
#include "gaussgcd/errors.hpp"
#include "gaussgcd/gcd_statistics.hpp"
#include "gaussgcd/output.hpp"
#include "gaussgcd/sieve_tables.hpp"

namespace gaussgcd::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kOverflow = 3,
  kIo = 4,
  kRange = 5,
};

enum class Command {
  constants,
  sieve,
  distribution,
  probability,
  expectation,
  moment,
  fit,
  reproduce_table1,
  reproduce_figures,
};

enum class Format { csv, json };

inline const std::vector<std::pair<std::string, Command>>& command_names() {
  static const std::vector<std::pair<std::string, Command>> names{
      {"constants", Command::constants},
      {"sieve", Command::sieve},
      {"distribution", Command::distribution},
      {"probability", Command::probability},
      {"expectation", Command::expectation},
      {"moment", Command::moment},
      {"fit", Command::fit},
      {"reproduce-table1", Command::reproduce_table1},
      {"reproduce-figures", Command::reproduce_figures},
  };
  return names;
}

inline std::optional<Command> parse_command(const std::string& name) {
  for (const auto& [key, cmd] : command_names()) {
    if (key == name) return cmd;
  }
  return std::nullopt;
}

struct RunConfig {
  Command command = Command::constants;
  std::uint64_t xmax = 50'000;
  int n = 2;
  std::size_t grid_points = 500;
  /// Empty means stdout (reproduce-figures: the directory "figures").
  std::filesystem::path output_path;
  Format format = Format::csv;
  std::filesystem::path cache_dir = ".gaussgcd-cache";
  unsigned threads = 1;
  bool no_cache = false;
  bool oracle = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void validate(const RunConfig& cfg) {
  if (cfg.xmax < 1) throw UsageError("--xmax must be >= 1");
  if (cfg.threads < 1) throw UsageError("--threads must be >= 1");
  const bool moment_cmd = cfg.command == Command::moment || cfg.command == Command::fit;
  if (moment_cmd && (cfg.n < 1 || cfg.n > 5)) throw UsageError("--n must lie in 1..5");
  if (cfg.command == Command::fit) {
    if (cfg.n < 2) throw UsageError("fit needs --n >= 2");
    if (cfg.grid_points < static_cast<std::size_t>(cfg.n) + 1) throw UsageError("--grid-points must be >= n + 1");
  }
  if ((cfg.command == Command::reproduce_table1 || cfg.command == Command::reproduce_figures) &&
      cfg.grid_points < 6) {
    throw UsageError("--grid-points must be >= 6 to fit the quartic of the fifth moment");
  }
}

inline std::filesystem::path cache_file(const RunConfig& cfg) { return cfg.cache_dir / "sieve.gglab"; }

/// Tables covering cfg.xmax: reuse the cache when it is large enough, otherwise build and store.
inline SieveTables obtain_tables(const RunConfig& cfg, std::ostream& err) {
  if (cfg.no_cache) return build_tables(cfg.xmax);
  const auto path = cache_file(cfg);
  if (std::filesystem::exists(path)) {
    try {
      SieveTables t = load_cache(path);
      if (t.xmax >= cfg.xmax) return t;
    } catch (const CacheError& e) {
      if (e.code() == CacheErrc::io) throw;
      err << "warning: rebuilding sieve cache (" << e.what() << ")\n";
    }
  }
  SieveTables t = build_tables(cfg.xmax);
  std::error_code ec;
  std::filesystem::create_directories(cfg.cache_dir, ec);
  if (ec) throw IoError(cfg.cache_dir.string(), "cannot create cache directory: " + ec.message());
  save_cache(t, path);
  return t;
}

inline void write_table(const RunConfig& cfg, const output::Table& table, std::ostream& out) {
  if (cfg.output_path.empty()) {
    if (cfg.format == Format::json) {
      output::write_json(table, out);
    } else {
      output::write_csv(table, out);
    }
  } else if (cfg.format == Format::json) {
    output::emit_json(table, cfg.output_path);
  } else {
    output::emit_csv(table, cfg.output_path);
  }
}

inline GcdDistribution obtain_distribution(const RunConfig& cfg, std::ostream& err) {
  if (cfg.oracle) return distribution_bruteforce(cfg.xmax);
  return distribution_fast(cfg.xmax, obtain_tables(cfg, err), cfg.threads);
}

inline GridSpec grid_for(const RunConfig& cfg) { return GridSpec{100, cfg.xmax, cfg.grid_points}; }

struct Table1Row {
  int n = 0;
  FitResult fit;
  double conjectured = 0.0;
  double relative_error = 0.0;
};

struct MomentStudy {
  std::vector<MomentSeries> series;
  std::vector<Table1Row> rows;
};

/// Moment curves for n = 2..5 on the configured grid, each fitted with a degree n-1 polynomial.
inline MomentStudy run_moment_study(const RunConfig& cfg, const SieveTables& t) {
  const auto grid = grid_for(cfg).values();
  const int orders[] = {2, 3, 4, 5};
  MomentStudy study;
  study.series = moment_series(orders, grid, t, cfg.threads);
  for (const auto& s : study.series) {
    Table1Row row;
    row.n = s.n;
    row.fit = fit_polynomial(s, s.n - 1);
    row.conjectured = conjectured_moment_constant(s.n);
    row.relative_error = std::abs(row.fit.leading() - row.conjectured) / row.conjectured;
    study.rows.push_back(std::move(row));
  }
  return study;
}

inline std::string format_table1(const std::vector<Table1Row>& rows) {
  std::ostringstream os;
  os << "Moment  Fitted leading term  Conjectured term  Relative error\n";
  for (const auto& r : rows) {
    char line[160];
    const std::string power = r.n == 2 ? "x" : "x^" + std::to_string(r.n - 1);
    std::snprintf(line, sizeof line, "%-6d  %.5f%-12s  %.5f%-9s  %.3f%%\n", r.n, r.fit.leading(), power.c_str(),
                  r.conjectured, power.c_str(), 100.0 * r.relative_error);
    os << line;
  }
  return os.str();
}

inline std::vector<output::FitRow> fit_rows(const std::vector<Table1Row>& rows) {
  std::vector<output::FitRow> out;
  for (const auto& r : rows) out.push_back({r.n, r.fit});
  return out;
}

inline void run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  validate(cfg);
  using output::Cell;
  using output::Table;
  switch (cfg.command) {
    case Command::constants: {
      const double zk2 = dedekind_zeta_qi(2.0).value;
      Table t{{"name", "value"}, {}};
      t.rows.push_back({std::string("zeta_qi_2"), zk2});
      t.rows.push_back({std::string("coprime_probability_limit"), 1.0 / zk2});
      t.rows.push_back({std::string("expected_norm_slope"), expected_norm_slope()});
      t.rows.push_back({std::string("euler_gamma"), euler_gamma().value});
      t.rows.push_back({std::string("dirichlet_beta_prime_1"), dirichlet_beta_derivative_at_one().value});
      t.rows.push_back({std::string("sierpinski_S"), sierpinski_constant()});
      for (int n = 2; n <= 5; ++n) {
        t.rows.push_back({"conjectured_moment_" + std::to_string(n), conjectured_moment_constant(n)});
      }
      write_table(cfg, t, out);
      return;
    }
    case Command::sieve: {
      const SieveTables tables = obtain_tables(cfg, err);
      const double x = static_cast<double>(cfg.xmax);
      const auto lattice = circle_sum(tables, cfg.xmax);
      const double weighted = log_weighted_sum(tables, cfg.xmax);
      Table t{{"xmax", "circle_sum", "circle_deviation", "log_weighted_sum", "sierpinski_estimate"}, {}};
      t.rows.push_back({cfg.xmax, lattice, (static_cast<double>(lattice) - std::numbers::pi * x) / std::cbrt(x),
                        weighted, weighted / std::numbers::pi - std::log(x)});
      write_table(cfg, t, out);
      return;
    }
    case Command::distribution:
      write_table(cfg, output::distribution_table(obtain_distribution(cfg, err)), out);
      return;
    case Command::probability: {
      const auto d = obtain_distribution(cfg, err);
      Table t{{"x", "probability", "main_term"}, {}};
      t.rows.push_back({cfg.xmax, coprime_probability(d), theorem1_main(1)});
      write_table(cfg, t, out);
      return;
    }
    case Command::expectation: {
      const auto d = obtain_distribution(cfg, err);
      Table t{{"x", "expected_norm", "main_term"}, {}};
      const Cell main_term = cfg.xmax > 1 ? Cell{theorem2_main(static_cast<double>(cfg.xmax))} : Cell{0.0};
      t.rows.push_back({cfg.xmax, expected_norm(d), main_term});
      write_table(cfg, t, out);
      return;
    }
    case Command::moment: {
      const auto d = obtain_distribution(cfg, err);
      MomentSeries s{cfg.n, {{static_cast<double>(cfg.xmax), moment(d, static_cast<unsigned>(cfg.n))}}};
      write_table(cfg, output::moments_table(std::span(&s, 1)), out);
      return;
    }
    case Command::fit: {
      const SieveTables tables = obtain_tables(cfg, err);
      const output::FitRow row{cfg.n, leading_coefficient_experiment(cfg.n, cfg.xmax, grid_for(cfg), tables, cfg.threads)};
      write_table(cfg, output::fits_table(std::span(&row, 1)), out);
      return;
    }
    case Command::reproduce_table1: {
      const SieveTables tables = obtain_tables(cfg, err);
      const auto study = run_moment_study(cfg, tables);
      const auto rows = fit_rows(study.rows);
      if (cfg.output_path.empty()) {
        out << format_table1(study.rows);
      } else {
        write_table(cfg, output::fits_table(rows), out);
        out << format_table1(study.rows);
      }
      return;
    }
    case Command::reproduce_figures: {
      const SieveTables tables = obtain_tables(cfg, err);
      const auto study = run_moment_study(cfg, tables);
      const std::filesystem::path dir = cfg.output_path.empty() ? std::filesystem::path("figures") : cfg.output_path;
      std::error_code ec;
      std::filesystem::create_directories(dir, ec);
      if (ec) throw IoError(dir.string(), "cannot create output directory: " + ec.message());
      const char* ext = cfg.format == Format::json ? ".json" : ".csv";
      for (std::size_t i = 0; i < study.series.size(); ++i) {
        const auto& s = study.series[i];
        const std::string stem = "moment_n" + std::to_string(s.n);
        RunConfig sub = cfg;
        sub.output_path = dir / (stem + ext);
        write_table(sub, output::moments_table(std::span(&s, 1)), out);
        const std::string title = "E_x{N(gcd)^" + std::to_string(s.n) + "} for x up to " + std::to_string(cfg.xmax) + ".";
        output::emit_svg(s, study.rows[i].fit, dir / (stem + ".svg"), title);
        out << (dir / (stem + ".svg")).string() << ": " << output::format_polynomial(study.rows[i].fit) << '\n';
      }
      const auto rows = fit_rows(study.rows);
      RunConfig sub = cfg;
      sub.output_path = dir / (std::string("fits") + ext);
      write_table(sub, output::fits_table(rows), out);
      return;
    }
  }
}

/// Runs a validated command and maps failures onto exit codes.
inline int dispatch(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    run(cfg, out, err);
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const OverflowError& e) {
    err << "overflow: " << e.what() << '\n';
    return kOverflow;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const CacheError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const RangeError& e) {
    err << "range error: " << e.what() << '\n';
    return kRange;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

/// Parse argv into cfg. Returns an exit code when the process should stop (help or bad usage).
inline std::optional<int> parse_args(int argc, const char* const* argv, RunConfig& cfg,
                                     std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Exact gcd statistics for pairs of Gaussian integers"};
  std::string command;
  std::string format = "csv";
  std::string output;
  std::string cache_dir = cfg.cache_dir.string();
  std::string names;
  for (const auto& [name, c] : command_names()) names += (names.empty() ? "" : ", ") + name;
  app.add_option("command", command, "One of: " + names)->required();
  app.add_option("--xmax", cfg.xmax, "Norm cutoff x")->check(CLI::PositiveNumber);
  app.add_option("--n", cfg.n, "Moment order");
  app.add_option("--grid-points", cfg.grid_points, "Cutoffs sampled between 100 and xmax for fits");
  app.add_option("--output", output, "Output file (directory for reproduce-figures)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--cache-dir", cache_dir, "Directory holding the sieve cache");
  app.add_option("--threads", cfg.threads, "Worker threads for the fast distribution");
  app.add_flag("--no-cache", cfg.no_cache, "Recompute sieve tables without touching the cache");
  app.add_flag("--oracle", cfg.oracle, "Use the pairwise Euclidean oracle (x <= 2000)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  const auto cmd = parse_command(command);
  if (!cmd) {
    err << "usage error: unknown command '" << command << "' (expected one of: " << names << ")\n";
    return kUsage;
  }
  cfg.command = *cmd;
  cfg.format = format == "json" ? Format::json : Format::csv;
  cfg.output_path = output;
  cfg.cache_dir = cache_dir;
  return std::nullopt;
}

inline int main(int argc, const char* const* argv) {
  RunConfig cfg;
  if (auto code = parse_args(argc, argv, cfg)) return *code;
  return dispatch(cfg);
}

}  // namespace gaussgcd::cli
