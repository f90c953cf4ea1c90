#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "legbound/legendre.hpp"

namespace legbound {

/// Smoothness order m with the semi-norms V_m and (for the prior bound) V_hat_m.
struct BoundParameters {
  int m = 0;
  double V = 0.0;
  std::optional<double> V_hat;
};

namespace detail {

inline void validate(const BoundParameters& p, const char* where) {
  if (p.m < 0) throw std::domain_error(std::string(where) + ": negative smoothness order");
  if (!(p.V >= 0.0) || !std::isfinite(p.V)) {
    throw std::domain_error(std::string(where) + ": V must be finite and nonnegative");
  }
}

// prod_{k=first}^{last} h_{n-k}, multiplied in increasing k.
inline double h_product(std::int64_t n, int first, int last) {
  double product = 1.0;
  for (int k = first; k <= last; ++k) product *= 1.0 / (static_cast<double>(n - k) + 0.5);
  return product;
}

}  // namespace detail

/// Coefficient bound |a_n| <= 2 V_m / sqrt(pi (2n-2m-1)) * prod_{k=1}^m h_{n-k},
/// valid for n >= m+1.
inline double bound_B1(std::int64_t n, const BoundParameters& p) {
  detail::validate(p, "bound_B1");
  if (n < p.m + 1) throw std::domain_error("bound_B1: requires n >= m+1");
  const double root = std::sqrt(std::numbers::pi * static_cast<double>(2 * n - 2 * p.m - 1));
  return 2.0 * p.V / root * detail::h_product(n, 1, p.m);
}

/// Earlier bound V_hat_m / ((n-1/2)(n-3/2)...(n-m+1/2)) * sqrt(pi / (2(n-m-1))),
/// valid for n >= m+2.
inline double bound_B2(std::int64_t n, const BoundParameters& p) {
  detail::validate(p, "bound_B2");
  if (!p.V_hat) throw std::domain_error("bound_B2: V_hat is required");
  if (n < p.m + 2) throw std::domain_error("bound_B2: requires n >= m+2");
  double denominator = 1.0;
  for (int j = 0; j < p.m; ++j) denominator *= static_cast<double>(n - j) - 0.5;
  return *p.V_hat / denominator *
         std::sqrt(std::numbers::pi / (2.0 * static_cast<double>(n - p.m - 1)));
}

/// B1/B2 for |x - t| in closed form: 2 (1-t^2)^{1/4} / pi * sqrt((2n-4)/(2n-3)).
inline double ratio_B1_B2(std::int64_t n, double t) {
  if (n < 3) throw std::domain_error("ratio_B1_B2: requires n >= 3");
  if (!(t > -1.0 && t < 1.0)) throw std::domain_error("ratio_B1_B2: t must lie in (-1,1)");
  const double nd = static_cast<double>(n);
  return 2.0 * std::pow((1.0 - t) * (1.0 + t), 0.25) / std::numbers::pi *
         std::sqrt((2.0 * nd - 4.0) / (2.0 * nd - 3.0));
}

/// The limit 2 (1-t^2)^{1/4} / pi that ratio_B1_B2 stays strictly below.
inline double ratio_B1_B2_limit(double t) {
  return 2.0 * std::pow((1.0 - t) * (1.0 + t), 0.25) / std::numbers::pi;
}

/// Parameters of |x - t|: m = 1, V_1 = 2 (1-t^2)^{-1/4}, V_hat_1 = 2 (1-t^2)^{-1/2}.
inline BoundParameters abs_kink_parameters(double t) {
  if (!(t > -1.0 && t < 1.0)) throw std::domain_error("abs_kink_parameters: t must lie in (-1,1)");
  const double s = (1.0 - t) * (1.0 + t);
  return BoundParameters{1, 2.0 * std::pow(s, -0.25), 2.0 * std::pow(s, -0.5)};
}

/// Smallest admissible truncation length of uniform_error_bound for order m.
inline std::int64_t uniform_bound_min_N(int m) { return m == 1 ? 3 : m + 1; }

/// ||f - f_N||_inf <= 4 V_1 / sqrt(pi (2N-5)) for m = 1 (N >= 3), and
/// 2 V_m / ((m-1) sqrt(pi (2N-2m-1))) prod_{k=2}^m h_{N-k} for m >= 2 (N >= m+1).
inline double uniform_error_bound(std::int64_t N, const BoundParameters& p) {
  detail::validate(p, "uniform_error_bound");
  if (p.m == 0) {
    throw std::domain_error(
        "uniform_error_bound: unsupported for m = 0 (only the coefficient bound B1 applies)");
  }
  if (N < uniform_bound_min_N(p.m)) {
    throw std::domain_error("uniform_error_bound: N below the admissible minimum " +
                            std::to_string(uniform_bound_min_N(p.m)));
  }
  if (p.m == 1) {
    return 4.0 * p.V / std::sqrt(std::numbers::pi * static_cast<double>(2 * N - 5));
  }
  const double root = std::sqrt(std::numbers::pi * static_cast<double>(2 * N - 2 * p.m - 1));
  return 2.0 * p.V / (static_cast<double>(p.m - 1) * root) * detail::h_product(N, 2, p.m);
}

struct TelescopingTail {
  double partial_sum = 0.0;  // sum_{n=N}^{M} prod_{k=1}^m h_{n-k}
  double closed_form = 0.0;  // (1/(m-1)) prod_{k=2}^m h_{N-k}, the M -> inf limit
};

inline TelescopingTail telescoping_tail(std::int64_t N, int m, std::int64_t M) {
  if (m < 2) throw std::domain_error("telescoping_tail: requires m >= 2");
  if (N < m + 1) throw std::domain_error("telescoping_tail: requires N >= m+1");
  if (M < N) throw std::domain_error("telescoping_tail: requires M >= N");
  TelescopingTail tail;
  for (std::int64_t n = N; n <= M; ++n) tail.partial_sum += detail::h_product(n, 1, m);
  tail.closed_form = detail::h_product(N, 2, m) / static_cast<double>(m - 1);
  return tail;
}

/// Smallest N with uniform_error_bound(N, p) <= eps.
inline std::int64_t min_degree_for_tolerance(double eps, const BoundParameters& p) {
  detail::validate(p, "min_degree_for_tolerance");
  if (!(eps > 0.0)) throw std::domain_error("min_degree_for_tolerance: eps must be positive");
  if (p.m == 0) {
    throw std::domain_error(
        "min_degree_for_tolerance: unsupported for m = 0 (only the coefficient bound B1 applies)");
  }
  const std::int64_t lowest = uniform_bound_min_N(p.m);
  auto fits = [&](std::int64_t N) { return uniform_error_bound(N, p) <= eps; };
  if (fits(lowest)) return lowest;

  constexpr double cap = 4.0e18;
  if (p.m == 1) {
    const double guess = std::ceil((16.0 * p.V * p.V / (std::numbers::pi * eps * eps) + 5.0) / 2.0);
    if (!(guess < cap)) throw std::domain_error("min_degree_for_tolerance: N overflows");
    std::int64_t N = std::max(lowest, static_cast<std::int64_t>(guess));
    while (N > lowest && fits(N - 1)) --N;
    while (!fits(N)) ++N;
    return N;
  }

  std::int64_t lo = lowest;  // !fits(lo)
  std::int64_t hi = 2 * lowest;
  while (!fits(hi)) {
    lo = hi;
    if (static_cast<double>(hi) * 2.0 > cap) {
      throw std::domain_error("min_degree_for_tolerance: N overflows");
    }
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (fits(mid) ? hi : lo) = mid;
  }
  return hi;
}

/// One row of the coefficient/bound comparison.
struct BoundRow {
  std::int64_t n = 0;
  std::optional<double> abs_a_n;
  double B1 = 0.0;
  std::optional<double> B2;
  std::optional<double> B1_over_B2;
};

struct BoundTable {
  std::vector<BoundRow> rows;
};

/// Rows n_min..n_max. Coefficients are optional; B2 and the ratio appear
/// when V_hat is given and n is in the B2 domain.
inline BoundTable make_bound_table(std::int64_t n_min, std::int64_t n_max, const BoundParameters& p,
                                   const std::vector<double>* abs_coefficients = nullptr) {
  if (n_min > n_max) throw std::domain_error("make_bound_table: empty n-range");
  if (n_min < p.m + 1) throw std::domain_error("make_bound_table: n_min must be >= m+1");
  BoundTable table;
  for (std::int64_t n = n_min; n <= n_max; ++n) {
    BoundRow row;
    row.n = n;
    row.B1 = bound_B1(n, p);
    if (abs_coefficients) row.abs_a_n = abs_coefficients->at(static_cast<std::size_t>(n - n_min));
    if (p.V_hat && n >= p.m + 2) {
      row.B2 = bound_B2(n, p);
      row.B1_over_B2 = row.B1 / *row.B2;
    }
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace legbound
