#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "legbound/errors.hpp"
#include "legbound/legendre.hpp"
#include "legbound/piecewise_function.hpp"
#include "legbound/quadrature.hpp"

namespace legbound {

/// Truncated Legendre series f_N = sum_{n<N} a_n P_n.
struct LegendreSeries {
  std::vector<double> coefficients;
  std::string source;

  std::size_t size() const { return coefficients.size(); }
};

/// Sup-norm error sampled on a grid; argmax_location is the grid point where
/// the largest deviation was seen.
struct ErrorMeasurement {
  double sup_error = 0.0;
  std::size_t grid_size = 0;
  double argmax_location = 0.0;
};

namespace detail {

// Accumulates sum_i w_i f(x_i) P_n(x_i) for n < count over one piece.
inline void accumulate_piece_moments(const GaussRule& rule, const Piece& piece, double a, double b,
                                     std::span<double> moments) {
  const double mid = 0.5 * (a + b);
  const double half_width = 0.5 * (b - a);
  const std::size_t count = moments.size();
  std::vector<double> local(count, 0.0);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = mid + half_width * rule.nodes[i];
    const double wf = rule.weights[i] * piece.derivative(0, x);
    double p_km1 = 1.0;
    double p_k = x;
    local[0] += wf;
    if (count > 1) local[1] += wf * x;
    for (std::size_t k = 1; k + 1 < count; ++k) {
      const double next = legendre_step(static_cast<int>(k), x, p_k, p_km1);
      p_km1 = p_k;
      p_k = next;
      local[k + 1] += wf * p_k;
    }
  }
  for (std::size_t n = 0; n < count; ++n) moments[n] += half_width * local[n];
}

class RuleCache {
 public:
  const GaussRule& get(int size) {
    auto it = rules_.find(size);
    if (it == rules_.end()) it = rules_.emplace(size, gauss_legendre_rule(size)).first;
    return it->second;
  }

 private:
  std::map<int, GaussRule> rules_;
};

inline std::vector<double> piece_moments_adaptive(RuleCache& cache, const Piece& piece, double a,
                                                  double b, int count) {
  int size = std::min(count + 32, max_gauss_rule_size);
  std::vector<double> coarse(static_cast<std::size_t>(count), 0.0);
  accumulate_piece_moments(cache.get(size), piece, a, b, coarse);
  while (size < max_gauss_rule_size) {
    size = std::min(2 * size, max_gauss_rule_size);
    std::vector<double> fine(static_cast<std::size_t>(count), 0.0);
    accumulate_piece_moments(cache.get(size), piece, a, b, fine);
    double change = 0.0;
    double magnitude = 1.0;
    for (std::size_t n = 0; n < fine.size(); ++n) {
      change = std::max(change, std::abs(fine[n] - coarse[n]));
      magnitude = std::max(magnitude, std::abs(fine[n]));
    }
    coarse = std::move(fine);
    if (change <= 1e-12 * magnitude) return coarse;
  }
  throw numerical_failure("compute_coefficients: quadrature did not stagnate by K = 10000");
}

}  // namespace detail

/// a_n = (n + 1/2) * integral of f P_n, n = 0..N-1. Polynomial pieces of
/// degree d use one ceil((N+d)/2)+8 point rule, which integrates every f P_n
/// exactly; other pieces double the rule size until the values settle.
inline LegendreSeries compute_coefficients(const PiecewiseSmoothFunction& f, int truncation) {
  if (truncation < 1) throw std::domain_error("compute_coefficients: N must be >= 1");
  const auto count = static_cast<std::size_t>(truncation);
  std::vector<double> integrals(count, 0.0);
  detail::RuleCache cache;
  const auto& bp = f.breakpoints();
  for (std::size_t i = 0; i < f.piece_count(); ++i) {
    const auto& piece = f.piece(i);
    if (piece.polynomial_degree) {
      const int size = (truncation + *piece.polynomial_degree + 1) / 2 + 8;
      if (size > max_gauss_rule_size) {
        throw std::domain_error("compute_coefficients: N too large for exact quadrature");
      }
      detail::accumulate_piece_moments(cache.get(size), piece, bp[i], bp[i + 1], integrals);
    } else {
      const auto moments = detail::piece_moments_adaptive(cache, piece, bp[i], bp[i + 1], truncation);
      for (std::size_t n = 0; n < count; ++n) integrals[n] += moments[n];
    }
  }
  LegendreSeries series;
  series.source = f.description();
  series.coefficients.resize(count);
  for (std::size_t n = 0; n < count; ++n) {
    series.coefficients[n] = (static_cast<double>(n) + 0.5) * integrals[n];
    if (!std::isfinite(series.coefficients[n])) {
      throw numerical_failure("compute_coefficients: non-finite coefficient");
    }
  }
  return series;
}

/// Exact Legendre coefficient of |x - t|. For n >= 2, integrating
/// sign(x - t) (P_{n-1} - P_{n+1}) / 2 with the antiderivative
/// (P_{k+1} - P_{k-1}) / (2k+1) of P_k gives
///   a_n = (P_{n+2}(t) - P_n(t)) / (2n+3) - (P_n(t) - P_{n-2}(t)) / (2n-1).
/// n = 0 and n = 1 come from integrating the two linear pieces directly.
inline double abs_kink_coefficient(double t, int n) {
  if (!(t > -1.0 && t < 1.0)) {
    throw std::domain_error("abs_kink_coefficient: t must lie in (-1,1)");
  }
  if (n < 0) throw std::domain_error("abs_kink_coefficient: negative degree");
  if (n == 0) return 0.5 * (1.0 + t * t);
  if (n == 1) return 0.5 * (t * t * t - 3.0 * t);
  const auto p = eval_legendre_sequence(n + 2, t);
  const double nd = static_cast<double>(n);
  return (p[n + 2] - p[n]) / (2.0 * nd + 3.0) - (p[n] - p[n - 2]) / (2.0 * nd - 1.0);
}

/// Closed-form coefficients a_0..a_{N-1} of |x - t|.
inline LegendreSeries abs_kink_series(double t, int truncation) {
  if (truncation < 1) throw std::domain_error("abs_kink_series: N must be >= 1");
  LegendreSeries series;
  series.source = "abs-kink oracle t=" + std::to_string(t);
  series.coefficients.resize(static_cast<std::size_t>(truncation));
  series.coefficients[0] = abs_kink_coefficient(t, 0);
  if (truncation > 1) series.coefficients[1] = abs_kink_coefficient(t, 1);
  if (truncation > 2) {
    const auto p = eval_legendre_sequence(truncation + 1, t);
    for (int n = 2; n < truncation; ++n) {
      const double nd = static_cast<double>(n);
      series.coefficients[static_cast<std::size_t>(n)] =
          (p[n + 2] - p[n]) / (2.0 * nd + 3.0) - (p[n] - p[n - 2]) / (2.0 * nd - 1.0);
    }
  }
  return series;
}

/// Sum a_n P_n(x) in one upward recurrence pass.
inline double evaluate_series(std::span<const double> coefficients, double x) {
  if (coefficients.empty()) throw std::invalid_argument("evaluate_series: empty series");
  detail::require_closed_interval(x, "evaluate_series");
  double sum = coefficients[0];
  if (coefficients.size() == 1) return sum;
  double p_km1 = 1.0;
  double p_k = x;
  sum += coefficients[1] * p_k;
  for (std::size_t k = 1; k + 1 < coefficients.size(); ++k) {
    const double next = detail::legendre_step(static_cast<int>(k), x, p_k, p_km1);
    p_km1 = p_k;
    p_k = next;
    sum += coefficients[k + 1] * p_k;
  }
  return sum;
}

inline double evaluate_series(const LegendreSeries& series, double x) {
  return evaluate_series(std::span<const double>(series.coefficients), x);
}

inline constexpr std::size_t default_error_grid = 100000;
inline constexpr std::size_t min_error_grid = 1000;

/// Chebyshev-Lobatto points cos(pi i/(G-1)) (they include +-1), followed by
/// the interior breakpoints of f.
inline std::vector<double> error_grid(const PiecewiseSmoothFunction& f, std::size_t grid_size) {
  if (grid_size < min_error_grid) {
    throw std::domain_error("error grid must have at least 1000 points");
  }
  std::vector<double> grid(grid_size);
  const double denom = static_cast<double>(grid_size - 1);
  for (std::size_t i = 0; i < grid_size; ++i) {
    grid[i] = std::cos(std::numbers::pi * static_cast<double>(i) / denom);
  }
  grid.front() = 1.0;
  grid.back() = -1.0;
  const auto& bp = f.breakpoints();
  for (std::size_t j = 1; j + 1 < bp.size(); ++j) grid.push_back(bp[j]);
  return grid;
}

inline ErrorMeasurement measure_uniform_error(const PiecewiseSmoothFunction& f,
                                              const LegendreSeries& series,
                                              std::size_t grid_size = default_error_grid) {
  const auto grid = error_grid(f, grid_size);
  ErrorMeasurement result;
  result.grid_size = grid.size();
  for (const double x : grid) {
    const double err = std::abs(f(x) - evaluate_series(series, x));
    if (err > result.sup_error) {
      result.sup_error = err;
      result.argmax_location = x;
    }
  }
  return result;
}

/// measure_uniform_error for every prefix length in `truncations` at once:
/// one recurrence pass per grid point, partial sums read off along the way.
/// Results equal the per-N measurement bitwise.
inline std::vector<ErrorMeasurement> measure_truncation_errors(
    const PiecewiseSmoothFunction& f, std::span<const double> coefficients,
    std::span<const int> truncations, std::size_t grid_size = default_error_grid) {
  int n_max = 0;
  for (const int N : truncations) {
    if (N < 1 || static_cast<std::size_t>(N) > coefficients.size()) {
      throw std::domain_error("measure_truncation_errors: N outside the coefficient range");
    }
    n_max = std::max(n_max, N);
  }
  // wanted[k] lists the requests whose partial sum is complete after a_k.
  std::vector<std::vector<std::size_t>> wanted(static_cast<std::size_t>(n_max));
  for (std::size_t r = 0; r < truncations.size(); ++r) {
    wanted[static_cast<std::size_t>(truncations[r] - 1)].push_back(r);
  }

  const auto grid = error_grid(f, grid_size);
  std::vector<ErrorMeasurement> results(truncations.size());
  for (auto& r : results) r.grid_size = grid.size();

  auto record = [&](std::size_t k, double fx, double sum, double x) {
    for (const std::size_t r : wanted[k]) {
      const double err = std::abs(fx - sum);
      if (err > results[r].sup_error) {
        results[r].sup_error = err;
        results[r].argmax_location = x;
      }
    }
  };

  for (const double x : grid) {
    const double fx = f(x);
    double sum = coefficients[0];
    record(0, fx, sum, x);
    if (n_max == 1) continue;
    double p_km1 = 1.0;
    double p_k = x;
    sum += coefficients[1] * p_k;
    record(1, fx, sum, x);
    for (std::size_t k = 1; k + 1 < static_cast<std::size_t>(n_max); ++k) {
      const double next = detail::legendre_step(static_cast<int>(k), x, p_k, p_km1);
      p_km1 = p_k;
      p_k = next;
      sum += coefficients[k + 1] * p_k;
      record(k + 1, fx, sum, x);
    }
  }
  return results;
}

}  // namespace legbound
