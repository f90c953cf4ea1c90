#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "legbound/bounds.hpp"
#include "legbound/io.hpp"
#include "legbound/legendre.hpp"
#include "legbound/piecewise_function.hpp"
#include "legbound/transform.hpp"

namespace legbound {

// ---------------------------------------------------------------------------
// Bernstein ratio curves

struct RatioCurve {
  int n = 0;
  std::vector<double> x;
  std::vector<double> ratio;
  double max_ratio = 0.0;
  double argmax = 0.0;
};

inline constexpr std::size_t default_ratio_grid = 2001;

/// bernstein_ratio(n, .) on a uniform grid over [-1,1].
inline RatioCurve ratio_curve(int n, std::size_t grid_size = default_ratio_grid) {
  if (n < 0) throw std::domain_error("ratio_curve: negative degree");
  if (grid_size < 2) throw std::domain_error("ratio_curve: grid needs at least 2 points");
  RatioCurve curve;
  curve.n = n;
  curve.x.resize(grid_size);
  curve.ratio.resize(grid_size);
  const double step = 2.0 / static_cast<double>(grid_size - 1);
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double x = (i + 1 == grid_size) ? 1.0 : -1.0 + step * static_cast<double>(i);
    curve.x[i] = x;
    curve.ratio[i] = bernstein_ratio(n, x);
    if (curve.ratio[i] > curve.max_ratio) {
      curve.max_ratio = curve.ratio[i];
      curve.argmax = x;
    }
  }
  return curve;
}

inline void write_ratio_csv(std::ostream& out, const RatioCurve& curve) {
  out << "x,ratio\n";
  for (std::size_t i = 0; i < curve.x.size(); ++i) {
    out << format_number(curve.x[i]) << ',' << format_number(curve.ratio[i]) << '\n';
  }
}

inline Plot ratio_plot(const RatioCurve& curve) {
  Plot plot;
  plot.title = "Bernstein ratio, n = " + std::to_string(curve.n);
  plot.x_label = "x";
  plot.y_label = "ratio";
  plot.series.push_back({"ratio", curve.x, curve.ratio, SeriesStyle::line});
  return plot;
}

// ---------------------------------------------------------------------------
// Coefficients of |x - t| against B1 and B2

/// Rows n_min..n_max with |a_n| from the closed-form coefficients and
/// semi-norms computed from the abs-kink function.
inline BoundTable abs_kink_bound_table(double t, std::int64_t n_min, std::int64_t n_max) {
  if (n_min < 2) throw std::domain_error("coeff-bounds: n_min must be >= 2");
  if (n_max < n_min) throw std::domain_error("coeff-bounds: empty n-range");
  const auto f = make_abs_kink(t);
  const auto smooth = smoothness_data(f, 1);
  const BoundParameters params{1, smooth.V, smooth.V_hat};
  const auto series = abs_kink_series(t, static_cast<int>(n_max) + 1);
  std::vector<double> abs_a;
  for (std::int64_t n = n_min; n <= n_max; ++n) {
    abs_a.push_back(std::abs(series.coefficients[static_cast<std::size_t>(n)]));
  }
  return make_bound_table(n_min, n_max, params, &abs_a);
}

inline void write_bound_table_csv(std::ostream& out, const BoundTable& table) {
  out << "n,abs_a_n,B1,B2,B1_over_B2\n";
  for (const auto& row : table.rows) {
    out << row.n << ',' << format_number(row.abs_a_n) << ',' << format_number(row.B1) << ','
        << format_number(row.B2) << ',' << format_number(row.B1_over_B2) << '\n';
  }
}

inline Plot bound_table_plot(const BoundTable& table, const std::string& title) {
  Plot plot;
  plot.title = title;
  plot.x_label = "n";
  plot.y_label = "magnitude";
  plot.log_y = true;
  PlotSeries b1{"B1", {}, {}, SeriesStyle::line};
  PlotSeries b2{"B2", {}, {}, SeriesStyle::dash};
  PlotSeries a{"|a_n|", {}, {}, SeriesStyle::dots};
  for (const auto& row : table.rows) {
    const double n = static_cast<double>(row.n);
    b1.x.push_back(n);
    b1.y.push_back(row.B1);
    if (row.B2) {
      b2.x.push_back(n);
      b2.y.push_back(*row.B2);
    }
    if (row.abs_a_n) {
      a.x.push_back(n);
      a.y.push_back(*row.abs_a_n);
    }
  }
  plot.series = {b1, b2, a};
  return plot;
}

// ---------------------------------------------------------------------------
// Truncation error against the uniform bound

struct ErrorStudyRow {
  std::int64_t N = 0;
  double measured = 0.0;
  double bound = 0.0;
  double argmax = 0.0;
};

struct ErrorStudy {
  BoundParameters params;
  std::vector<ErrorStudyRow> rows;
  double slope = 0.0;        // least-squares slope of log(error) against log(N)
  std::size_t fit_points = 0;
};

/// Least-squares slope of log(y) against log(x).
inline double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::domain_error("log_log_slope: need at least two points");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(x.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline std::vector<int> default_error_study_truncations() {
  std::vector<int> Ns;
  for (int N = 3; N <= 200; ++N) Ns.push_back(N);
  Ns.push_back(400);
  Ns.push_back(800);
  return Ns;
}

/// Measured ||f - f_N|| and the uniform bound for each N (sorted ascending).
/// The slope is fitted over the upper half of the list.
inline ErrorStudy error_study(const PiecewiseSmoothFunction& f, const BoundParameters& params,
                              const std::vector<int>& truncations,
                              std::size_t grid_size = default_error_grid) {
  if (truncations.empty()) throw std::domain_error("error-study: empty N-list");
  for (std::size_t i = 0; i < truncations.size(); ++i) {
    if (i > 0 && truncations[i] <= truncations[i - 1]) {
      throw std::domain_error("error-study: N-list must be strictly increasing");
    }
  }
  if (truncations.front() < uniform_bound_min_N(params.m)) {
    throw std::domain_error("error-study: N below the bound's domain");
  }
  const auto series = compute_coefficients(f, truncations.back());
  const auto measured = measure_truncation_errors(f, series.coefficients, truncations, grid_size);

  ErrorStudy study;
  study.params = params;
  for (std::size_t i = 0; i < truncations.size(); ++i) {
    study.rows.push_back({truncations[i], measured[i].sup_error,
                          uniform_error_bound(truncations[i], params),
                          measured[i].argmax_location});
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = truncations.size() / 2; i < truncations.size(); ++i) {
    if (study.rows[i].measured > 0.0) {
      xs.push_back(static_cast<double>(study.rows[i].N));
      ys.push_back(study.rows[i].measured);
    }
  }
  study.fit_points = xs.size();
  study.slope = xs.size() >= 2 ? log_log_slope(xs, ys) : 0.0;
  return study;
}

inline void write_error_study_csv(std::ostream& out, const ErrorStudy& study) {
  out << "N,measured_sup_error,corollary_bound,bound_over_error\n";
  for (const auto& row : study.rows) {
    const double ratio = row.measured > 0.0 ? row.bound / row.measured
                                            : std::numeric_limits<double>::infinity();
    out << row.N << ',' << format_number(row.measured) << ',' << format_number(row.bound) << ','
        << format_number(ratio) << '\n';
  }
}

inline Plot error_study_plot(const ErrorStudy& study) {
  Plot plot;
  plot.title = "Uniform truncation error";
  plot.x_label = "N";
  plot.y_label = "sup error";
  plot.log_y = true;
  PlotSeries bound{"bound", {}, {}, SeriesStyle::dash};
  PlotSeries measured{"measured", {}, {}, SeriesStyle::dots};
  for (const auto& row : study.rows) {
    bound.x.push_back(static_cast<double>(row.N));
    bound.y.push_back(row.bound);
    measured.x.push_back(static_cast<double>(row.N));
    measured.y.push_back(row.measured);
  }
  plot.series = {bound, measured};
  return plot;
}

// ---------------------------------------------------------------------------
// Degree selection

inline constexpr std::int64_t measurement_cap = 5000;

struct DegreeSelection {
  BoundParameters params;
  std::int64_t N = 0;
  double bound = 0.0;
  std::optional<ErrorMeasurement> measured;  // absent above measurement_cap
};

inline DegreeSelection select_degree(const PiecewiseSmoothFunction& f, int m, double eps,
                                     std::size_t grid_size = default_error_grid) {
  if (m < 1) {
    throw std::domain_error(
        "select-degree: m = 0 has no uniform error bound; only the coefficient bound B1 is "
        "available");
  }
  const auto v = semi_norm_V(f, m);
  DegreeSelection selection;
  selection.params = BoundParameters{m, v.value, std::nullopt};
  selection.N = min_degree_for_tolerance(eps, selection.params);
  selection.bound = uniform_error_bound(selection.N, selection.params);
  if (selection.N <= measurement_cap) {
    const auto series = compute_coefficients(f, static_cast<int>(selection.N));
    selection.measured = measure_uniform_error(f, series, grid_size);
  }
  return selection;
}

}  // namespace legbound
