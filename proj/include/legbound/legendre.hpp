#pragma once

#include <cmath>
#include <concepts>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace legbound {

namespace detail {

inline void require_degree(int n, const char* where) {
  if (n < 0) {
    throw std::domain_error(std::string(where) + ": negative degree");
  }
}

inline void require_closed_interval(double x, const char* where) {
  if (!(x >= -1.0 && x <= 1.0)) {
    throw std::domain_error(std::string(where) + ": argument outside [-1,1]");
  }
}

// One step of (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}. Every evaluation path
// in the library goes through this so that results agree bitwise.
template <std::floating_point T>
constexpr T legendre_step(int k, T x, T p_k, T p_km1) {
  return (static_cast<T>(2 * k + 1) * x * p_k - static_cast<T>(k) * p_km1) /
         static_cast<T>(k + 1);
}

}  // namespace detail

/// P_n(x) by the upward three-term recurrence.
template <std::floating_point T>
T eval_legendre(int n, T x) {
  detail::require_degree(n, "eval_legendre");
  detail::require_closed_interval(static_cast<double>(x), "eval_legendre");
  if (n == 0) return T(1);
  T p_km1 = T(1);
  T p_k = x;
  for (int k = 1; k < n; ++k) {
    const T next = detail::legendre_step(k, x, p_k, p_km1);
    p_km1 = p_k;
    p_k = next;
  }
  return p_k;
}

/// P_0(x), ..., P_{n_max}(x) from a single recurrence pass.
template <std::floating_point T>
std::vector<T> eval_legendre_sequence(int n_max, T x) {
  detail::require_degree(n_max, "eval_legendre_sequence");
  detail::require_closed_interval(static_cast<double>(x),
                                  "eval_legendre_sequence");
  std::vector<T> values(static_cast<std::size_t>(n_max) + 1);
  values[0] = T(1);
  if (n_max >= 1) values[1] = x;
  for (int k = 1; k < n_max; ++k) {
    values[k + 1] = detail::legendre_step(k, x, values[k], values[k - 1]);
  }
  return values;
}

namespace detail {

// P_n and P_{n-1} at x, no domain checks. Used by the Newton iteration.
template <std::floating_point T>
constexpr void legendre_pair(int n, T x, T& p_n, T& p_nm1) {
  p_nm1 = T(0);
  p_n = T(1);
  for (int k = 0; k < n; ++k) {
    const T next = (k == 0) ? x : legendre_step(k, x, p_n, p_nm1);
    p_nm1 = p_n;
    p_n = next;
  }
}

}  // namespace detail

/// P_n'(x) on the open interval, from (1-x^2) P_n' = n (P_{n-1} - x P_n).
template <std::floating_point T>
T eval_legendre_derivative(int n, T x) {
  detail::require_degree(n, "eval_legendre_derivative");
  if (!(x > T(-1) && x < T(1))) {
    throw std::domain_error(
        "eval_legendre_derivative: argument outside (-1,1)");
  }
  if (n == 0) return T(0);
  T p_n;
  T p_nm1;
  detail::legendre_pair(n, x, p_n, p_nm1);
  return static_cast<T>(n) * (p_nm1 - x * p_n) / ((T(1) - x) * (T(1) + x));
}

/// h_n = (n + 1/2)^{-1}, the squared L2 norm of P_n.
inline double normalization_h(int n) {
  detail::require_degree(n, "normalization_h");
  return 1.0 / (static_cast<double>(n) + 0.5);
}

/// (1-x^2)^{1/4} |P_n(x)| divided by sqrt(2/pi) (n+1/2)^{-1/2}.
/// Strictly below one on [-1,1]; zero at the endpoints.
inline double bernstein_ratio(int n, double x) {
  const double weight = std::exp(0.25 * std::log1p(-x * x));
  return weight * std::abs(eval_legendre(n, x)) *
         std::sqrt(std::numbers::pi / 2.0) *
         std::sqrt(static_cast<double>(n) + 0.5);
}

/// bernstein_ratio for every degree 0..n_max at one point.
inline std::vector<double> bernstein_ratio_sequence(int n_max, double x) {
  auto values = eval_legendre_sequence(n_max, x);
  const double weight = std::exp(0.25 * std::log1p(-x * x));
  const double scale = std::sqrt(std::numbers::pi / 2.0);
  for (int n = 0; n <= n_max; ++n) {
    values[n] = weight * std::abs(values[n]) * scale *
                std::sqrt(static_cast<double>(n) + 0.5);
  }
  return values;
}

}  // namespace legbound
