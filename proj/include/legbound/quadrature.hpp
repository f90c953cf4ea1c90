#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "legbound/errors.hpp"
#include "legbound/legendre.hpp"

namespace legbound {

/// K-point Gauss-Legendre rule on [-1,1]. Nodes increase strictly and are
/// mirrored exactly about zero.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

struct IntegrationResult {
  double value = 0.0;
  double estimated_error = 0.0;
  std::size_t evaluations = 0;
};

inline constexpr int max_gauss_rule_size = 10000;

/// Roots of P_K by Newton iteration from Tricomi's asymptotic guesses,
/// weights 2 / ((1-x^2) P_K'(x)^2).
inline GaussRule gauss_legendre_rule(int size) {
  if (size < 1 || size > max_gauss_rule_size) {
    throw std::domain_error("gauss_legendre_rule: size must be in [1, 10000]");
  }
  const auto k_size = static_cast<std::size_t>(size);
  GaussRule rule;
  rule.nodes.assign(k_size, 0.0);
  rule.weights.assign(k_size, 0.0);

  const double kd = static_cast<double>(size);
  const double shrink = 1.0 - 1.0 / (8.0 * kd * kd) + 1.0 / (8.0 * kd * kd * kd);
  const int half = size / 2;

  for (int i = 1; i <= half; ++i) {
    // i-th largest root.
    double x = shrink * std::cos(std::numbers::pi * (4.0 * i - 1.0) / (4.0 * kd + 2.0));
    double p_n = 0.0;
    double p_nm1 = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
      detail::legendre_pair(size, x, p_n, p_nm1);
      const double dp = kd * (p_nm1 - x * p_n) / ((1.0 - x) * (1.0 + x));
      const double step = p_n / dp;
      x -= step;
      if (std::abs(step) <= 1e-15) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw numerical_failure("gauss_legendre_rule: Newton failed for K=" +
                              std::to_string(size));
    }
    detail::legendre_pair(size, x, p_n, p_nm1);
    const double dp = kd * (p_nm1 - x * p_n) / ((1.0 - x) * (1.0 + x));
    const double w = 2.0 / ((1.0 - x) * (1.0 + x) * dp * dp);

    const auto hi = k_size - static_cast<std::size_t>(i);
    const auto lo = static_cast<std::size_t>(i - 1);
    rule.nodes[hi] = x;
    rule.nodes[lo] = -x;
    rule.weights[hi] = w;
    rule.weights[lo] = w;
  }

  if (size % 2 == 1) {
    // Middle node is exactly zero: P_K'(0) follows from P_{K-1}(0).
    double p_n = 0.0;
    double p_nm1 = 0.0;
    detail::legendre_pair(size, 0.0, p_n, p_nm1);
    const double dp = kd * p_nm1;
    rule.nodes[k_size / 2] = 0.0;
    rule.weights[k_size / 2] = 2.0 / (dp * dp);
  }
  return rule;
}

/// Affine transplant of the rule to [a,b].
template <class F>
double integrate_smooth(const GaussRule& rule, F&& f, double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::domain_error("integrate_smooth: need finite a < b");
  }
  const double mid = 0.5 * (a + b);
  const double half_width = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    sum += rule.weights[i] * f(mid + half_width * rule.nodes[i]);
  }
  return half_width * sum;
}

namespace detail {

inline void validate_breakpoints(std::span<const double> breakpoints, const char* where) {
  if (breakpoints.size() < 2 || breakpoints.front() != -1.0 || breakpoints.back() != 1.0) {
    throw std::invalid_argument(std::string(where) +
                                ": breakpoints must start at -1 and end at 1");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i - 1] < breakpoints[i])) {
      throw std::invalid_argument(std::string(where) +
                                  ": breakpoints must be strictly increasing");
    }
  }
}

}  // namespace detail

template <class F>
double integrate_piecewise(const GaussRule& rule, F&& f, std::span<const double> breakpoints) {
  detail::validate_breakpoints(breakpoints, "integrate_piecewise");
  double sum = 0.0;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    sum += integrate_smooth(rule, f, breakpoints[i - 1], breakpoints[i]);
  }
  return sum;
}

namespace detail {

inline constexpr double tanh_sinh_t_max = 4.0;
inline constexpr int tanh_sinh_min_level = 3;
inline constexpr int tanh_sinh_max_level = 12;

// Integrand sample at parameter t for the piece [a,b]. The distances to both
// ends are formed without cancellation so that (1-x)(1+x) keeps full relative
// precision next to +-1.
template <class G>
double tanh_sinh_sample(G& g, double exponent, double a, double b, double t) {
  const double half_width = 0.5 * (b - a);
  const double u = 0.5 * std::numbers::pi * std::sinh(t);
  const double cosh_u = std::cosh(u);
  const double jacobian = half_width * 0.5 * std::numbers::pi * std::cosh(t) / (cosh_u * cosh_u);
  const double from_a = 2.0 * half_width / (1.0 + std::exp(-2.0 * u));
  const double from_b = 2.0 * half_width / (1.0 + std::exp(2.0 * u));
  const double x = (t < 0.0) ? a + from_a : b - from_b;
  const double one_plus_x = (1.0 + a) + from_a;
  const double one_minus_x = (1.0 - b) + from_b;
  const double weight = (exponent == 0.0) ? 1.0 : std::pow(one_minus_x * one_plus_x, -exponent);
  return jacobian * weight * g(x);
}

template <class G>
IntegrationResult tanh_sinh_piece(G& g, double exponent, double a, double b, double tolerance) {
  IntegrationResult result;
  double h = 1.0;
  double sum = tanh_sinh_sample(g, exponent, a, b, 0.0);
  result.evaluations = 1;
  for (int k = 1; k <= static_cast<int>(tanh_sinh_t_max); ++k) {
    const double t = static_cast<double>(k);
    sum += tanh_sinh_sample(g, exponent, a, b, t) + tanh_sinh_sample(g, exponent, a, b, -t);
    result.evaluations += 2;
  }
  double previous = h * sum;
  for (int level = 1; level <= tanh_sinh_max_level; ++level) {
    h *= 0.5;
    const int count = static_cast<int>(tanh_sinh_t_max / h);
    for (int k = 1; k <= count; k += 2) {
      const double t = h * static_cast<double>(k);
      sum += tanh_sinh_sample(g, exponent, a, b, t) + tanh_sinh_sample(g, exponent, a, b, -t);
      result.evaluations += 2;
    }
    const double current = h * sum;
    const double diff = std::abs(current - previous);
    previous = current;
    if (!std::isfinite(current)) break;
    if (level >= tanh_sinh_min_level && diff <= tolerance) {
      result.value = current;
      result.estimated_error = diff;
      return result;
    }
  }
  throw numerical_failure("integrate_endpoint_singular: no convergence on [" +
                          std::to_string(a) + ", " + std::to_string(b) + "]");
}

}  // namespace detail

/// Integral of g(x) (1-x^2)^{-exponent} over [-1,1] by tanh-sinh quadrature,
/// applied separately on each interval between consecutive breakpoints (g may
/// jump there). The default exponent 1/4 is the weight of the semi-norm V_m;
/// 1/2 gives the weight of V_hat_m.
template <class G>
IntegrationResult integrate_endpoint_singular(G&& g, double tolerance, double exponent = 0.25,
                                              std::span<const double> breakpoints = {}) {
  if (!(tolerance >= 1e-13)) {
    throw std::domain_error("integrate_endpoint_singular: tolerance must be >= 1e-13");
  }
  if (!(exponent >= 0.0 && exponent < 1.0)) {
    throw std::domain_error("integrate_endpoint_singular: exponent must be in [0,1)");
  }
  static constexpr double whole[] = {-1.0, 1.0};
  if (breakpoints.empty()) breakpoints = whole;
  detail::validate_breakpoints(breakpoints, "integrate_endpoint_singular");

  const double piece_tolerance = tolerance / static_cast<double>(breakpoints.size() - 1);
  IntegrationResult total;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    const auto piece =
        detail::tanh_sinh_piece(g, exponent, breakpoints[i - 1], breakpoints[i], piece_tolerance);
    total.value += piece.value;
    total.estimated_error += piece.estimated_error;
    total.evaluations += piece.evaluations;
  }
  return total;
}

}  // namespace legbound
