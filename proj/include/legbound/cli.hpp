#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "legbound/bounds.hpp"
#include "legbound/descriptor.hpp"
#include "legbound/errors.hpp"
#include "legbound/experiments.hpp"
#include "legbound/io.hpp"

namespace legbound::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_bad_arguments = 2,
  exit_io_failure = 3,
  exit_numerical_failure = 4,
};

namespace detail {

struct FunctionOptions {
  std::string kind = "abs-kink";
  std::string t = "0";
  std::string pieces;
  int m = -1;  // -1: use the admissible order of the function
};

inline void add_function_options(CLI::App* sub, FunctionOptions& o) {
  sub->add_option("--function", o.kind, "abs-kink or polynomial")
      ->check(CLI::IsMember({"abs-kink", "polynomial"}));
  sub->add_option("--t", o.t, "kink location of abs-kink, decimal or p/q");
  sub->add_option("--pieces", o.pieces,
                  "polynomial descriptor, e.g. \"-1 [0,-1] 0 [0,1] 1\" for |x|");
  sub->add_option("--m", o.m, "smoothness order (default: largest admissible)");
}

inline PiecewiseSmoothFunction build_function(const FunctionOptions& o) {
  if (o.kind == "polynomial") {
    if (o.pieces.empty()) throw std::invalid_argument("--function polynomial requires --pieces");
    return parse_pieces(o.pieces);
  }
  return make_abs_kink(parse_real(o.t));
}

inline int resolve_order(const PiecewiseSmoothFunction& f, const FunctionOptions& o) {
  const int admissible = admissible_smoothness_order(f);
  if (o.m < 0) return admissible;
  if (o.m > admissible) {
    throw std::domain_error("--m " + std::to_string(o.m) + " exceeds the admissible order " +
                            std::to_string(admissible) + " of this function");
  }
  return o.m;
}

// Writes to `path`, or to `stdout_stream` when path is empty or "-".
template <class Writer>
void emit(const std::string& path, std::ostream& stdout_stream, Writer&& writer) {
  if (path.empty() || path == "-") {
    writer(stdout_stream);
    return;
  }
  auto file = open_output(path);
  writer(file);
  finish_output(file, path);
}

inline std::vector<int> truncation_list(const std::vector<int>& listed, int n_min, int n_max) {
  if (!listed.empty()) return listed;
  if (n_min > 0 || n_max > 0) {
    if (n_min <= 0 || n_max < n_min) throw std::domain_error("need 1 <= --n-min <= --n-max");
    std::vector<int> Ns;
    for (int N = n_min; N <= n_max; ++N) Ns.push_back(N);
    return Ns;
  }
  return default_error_study_truncations();
}

}  // namespace detail

/// Runs one invocation; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Legendre coefficient and truncation-error bounds"};
  app.require_subcommand(1);

  // ratio-figure
  std::vector<int> ratio_n{2, 6, 18};
  std::size_t ratio_grid = default_ratio_grid;
  std::string ratio_out = ".";
  std::string ratio_format = "csv";
  auto* ratio = app.add_subcommand("ratio-figure", "Bernstein ratio curves, one file per n");
  ratio->add_option("--n", ratio_n, "degrees, comma separated")->delimiter(',');
  ratio->add_option("--grid", ratio_grid, "uniform grid size on [-1,1]");
  ratio->add_option("--out", ratio_out, "output directory");
  ratio->add_option("--format", ratio_format)->check(CLI::IsMember({"csv", "svg"}));

  // coeff-bounds
  std::string bounds_t = "0";
  std::int64_t bounds_n_min = 5;
  std::int64_t bounds_n_max = 400;
  std::string bounds_out;
  std::string bounds_format = "csv";
  auto* bounds = app.add_subcommand("coeff-bounds", "|a_n| of |x-t| against B1 and B2");
  bounds->add_option("--t", bounds_t, "kink location, decimal or p/q");
  bounds->add_option("--n-min", bounds_n_min);
  bounds->add_option("--n-max", bounds_n_max);
  bounds->add_option("--out", bounds_out, "output file (default stdout)");
  bounds->add_option("--format", bounds_format)->check(CLI::IsMember({"csv", "svg"}));

  // error-study
  detail::FunctionOptions study_fn;
  std::vector<int> study_n;
  int study_n_min = 0;
  int study_n_max = 0;
  std::size_t study_grid = default_error_grid;
  std::string study_out;
  std::string study_format = "csv";
  auto* study = app.add_subcommand("error-study", "measured sup error against the uniform bound");
  detail::add_function_options(study, study_fn);
  study->add_option("--n", study_n, "truncation lengths, comma separated")->delimiter(',');
  study->add_option("--n-min", study_n_min);
  study->add_option("--n-max", study_n_max);
  study->add_option("--grid", study_grid, "Chebyshev grid size (>= 1000)");
  study->add_option("--out", study_out, "output file (default stdout)");
  study->add_option("--format", study_format)->check(CLI::IsMember({"csv", "svg"}));

  // select-degree
  detail::FunctionOptions select_fn;
  double select_eps = 0.0;
  std::size_t select_grid = default_error_grid;
  auto* select = app.add_subcommand("select-degree", "smallest N whose uniform bound meets --eps");
  detail::add_function_options(select, select_fn);
  select->add_option("--eps", select_eps, "target uniform accuracy")->required();
  select->add_option("--grid", select_grid, "Chebyshev grid size for the confirming measurement");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_bad_arguments;
  }

  // Summaries go to `out` unless the data itself does.
  try {
    if (ratio->parsed()) {
      if (ratio_n.empty()) throw std::domain_error("--n must list at least one degree");
      std::filesystem::path dir(ratio_out);
      for (const int n : ratio_n) {
        const auto curve = ratio_curve(n, ratio_grid);
        const auto path = (dir / ("ratio_n" + std::to_string(n) + "." + ratio_format)).string();
        detail::emit(path, out, [&](std::ostream& s) {
          if (ratio_format == "svg") {
            write_svg(s, ratio_plot(curve));
          } else {
            write_ratio_csv(s, curve);
          }
        });
        out << "n=" << n << " max_ratio=" << format_number(curve.max_ratio)
            << " at x=" << format_number(curve.argmax) << " -> " << path << '\n';
      }
    } else if (bounds->parsed()) {
      const double t = parse_real(bounds_t);
      const auto table = abs_kink_bound_table(t, bounds_n_min, bounds_n_max);
      detail::emit(bounds_out, out, [&](std::ostream& s) {
        if (bounds_format == "svg") {
          write_svg(s, bound_table_plot(table, "Legendre coefficients of |x - " + bounds_t + "|"));
        } else {
          write_bound_table_csv(s, table);
        }
      });
      std::ostream& info = bounds_out.empty() || bounds_out == "-" ? err : out;
      std::size_t dominated = 0;
      std::size_t sharper = 0;
      for (const auto& row : table.rows) {
        if (row.abs_a_n && *row.abs_a_n <= row.B1) ++dominated;
        if (row.B2 && row.B1 < *row.B2) ++sharper;
      }
      info << "rows=" << table.rows.size() << " abs_a_n<=B1: " << dominated
           << " B1<B2: " << sharper << " ratio limit=" << format_number(ratio_B1_B2_limit(t))
           << '\n';
    } else if (study->parsed()) {
      const auto f = detail::build_function(study_fn);
      const int m = detail::resolve_order(f, study_fn);
      if (m < 1) throw std::domain_error("error-study needs m >= 1");
      const BoundParameters params{m, semi_norm_V(f, m).value, std::nullopt};
      const auto Ns = detail::truncation_list(study_n, study_n_min, study_n_max);
      const auto result = error_study(f, params, Ns, study_grid);
      detail::emit(study_out, out, [&](std::ostream& s) {
        if (study_format == "svg") {
          write_svg(s, error_study_plot(result));
        } else {
          write_error_study_csv(s, result);
        }
      });
      std::ostream& info = study_out.empty() || study_out == "-" ? err : out;
      std::size_t violations = 0;
      for (const auto& row : result.rows) violations += row.measured > row.bound ? 1 : 0;
      info << "m=" << m << " V=" << format_number(params.V) << " rows=" << result.rows.size()
           << " violations=" << violations << " slope=" << format_number(result.slope)
           << " (fit over " << result.fit_points << " points)\n";
    } else if (select->parsed()) {
      const auto f = detail::build_function(select_fn);
      const int m = detail::resolve_order(f, select_fn);
      const auto sel = select_degree(f, m, select_eps, select_grid);
      out << "m = " << m << "\nV = " << format_number(sel.params.V) << "\nN = " << sel.N
          << "\nbound = " << format_number(sel.bound) << '\n';
      if (sel.measured) {
        out << "measured = " << format_number(sel.measured->sup_error) << " at x = "
            << format_number(sel.measured->argmax_location)
            << (sel.measured->sup_error <= select_eps ? " (<= eps)" : " (> eps)") << '\n';
      } else {
        out << "measured = skipped (N > " << measurement_cap << ")\n";
      }
    }
  } catch (const io_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_io_failure;
  } catch (const numerical_failure& e) {
    err << "error: " << e.what() << '\n';
    return exit_numerical_failure;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_bad_arguments;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_bad_arguments;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return exit_bad_arguments;
  }
  return exit_ok;
}

}  // namespace legbound::cli
