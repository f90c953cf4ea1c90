#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "legbound/errors.hpp"
#include "legbound/quadrature.hpp"

namespace legbound {

/// f^{(order)}(x) for one smooth piece.
using DerivativeEvaluator = std::function<double(int order, double x)>;

struct Piece {
  DerivativeEvaluator derivative;
  // Degree when the piece is a polynomial, std::nullopt otherwise.
  std::optional<int> polynomial_degree;
};

/// A continuous function on [-1,1] that is smooth between breakpoints, with
/// analytic derivative evaluators per piece up to order max_order() and the
/// jumps f^{(k)}(x_j+) - f^{(k)}(x_j-) at interior breakpoints.
class PiecewiseSmoothFunction {
 public:
  PiecewiseSmoothFunction(std::vector<double> breakpoints, std::vector<Piece> pieces,
                          int max_order, std::string description = {})
      : breakpoints_(std::move(breakpoints)),
        pieces_(std::move(pieces)),
        max_order_(max_order),
        description_(std::move(description)) {
    detail::validate_breakpoints(breakpoints_, "PiecewiseSmoothFunction");
    if (pieces_.size() + 1 != breakpoints_.size()) {
      throw std::invalid_argument("PiecewiseSmoothFunction: need one piece per interval");
    }
    if (max_order_ < 0) {
      throw std::invalid_argument("PiecewiseSmoothFunction: negative max_order");
    }
    for (const auto& piece : pieces_) {
      if (!piece.derivative) {
        throw std::invalid_argument("PiecewiseSmoothFunction: empty piece evaluator");
      }
    }
    build_jump_table();
  }

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  std::size_t piece_count() const { return pieces_.size(); }
  const Piece& piece(std::size_t i) const { return pieces_.at(i); }
  int max_order() const { return max_order_; }
  const std::string& description() const { return description_; }

  /// Index of the piece containing x; a breakpoint belongs to the piece on
  /// its right (x = 1 to the last piece).
  std::size_t piece_index(double x) const {
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    const auto idx = static_cast<std::size_t>(std::distance(breakpoints_.begin(), it));
    return std::clamp<std::size_t>(idx, 1, pieces_.size()) - 1;
  }

  double derivative(int order, double x) const {
    if (order < 0 || order > max_order_) {
      throw std::domain_error("PiecewiseSmoothFunction: derivative order " +
                              std::to_string(order) + " exceeds max order " +
                              std::to_string(max_order_));
    }
    detail::require_closed_interval(x, "PiecewiseSmoothFunction");
    return pieces_[piece_index(x)].derivative(order, x);
  }

  double operator()(double x) const { return derivative(0, x); }

  std::size_t interior_breakpoint_count() const { return breakpoints_.size() - 2; }

  /// Jump of f^{(order)} at interior breakpoint j, 1 <= j <= breakpoints().size()-2.
  double jump(std::size_t breakpoint_index, int order) const {
    if (breakpoint_index == 0 || breakpoint_index + 1 >= breakpoints_.size()) {
      throw std::out_of_range("PiecewiseSmoothFunction::jump: not an interior breakpoint");
    }
    if (order < 0 || order > max_order_) {
      throw std::domain_error("PiecewiseSmoothFunction::jump: order exceeds max order");
    }
    return jumps_[breakpoint_index - 1][static_cast<std::size_t>(order)];
  }

  /// Highest polynomial degree over the pieces if every piece is polynomial.
  std::optional<int> polynomial_degree() const {
    int degree = 0;
    for (const auto& piece : pieces_) {
      if (!piece.polynomial_degree) return std::nullopt;
      degree = std::max(degree, *piece.polynomial_degree);
    }
    return degree;
  }

 private:
  void build_jump_table() {
    jumps_.clear();
    for (std::size_t j = 1; j + 1 < breakpoints_.size(); ++j) {
      const double x = breakpoints_[j];
      std::vector<double> row(static_cast<std::size_t>(max_order_) + 1);
      for (int k = 0; k <= max_order_; ++k) {
        row[static_cast<std::size_t>(k)] =
            pieces_[j].derivative(k, x) - pieces_[j - 1].derivative(k, x);
      }
      const double scale = std::max(1.0, std::abs(pieces_[j].derivative(0, x)));
      if (std::abs(row[0]) > 1e-10 * scale) {
        throw std::invalid_argument("PiecewiseSmoothFunction: f jumps at x = " +
                                    std::to_string(x) + "; f must be continuous");
      }
      jumps_.push_back(std::move(row));
    }
  }

  std::vector<double> breakpoints_;
  std::vector<Piece> pieces_;
  int max_order_;
  std::string description_;
  std::vector<std::vector<double>> jumps_;
};

inline double eval_derivative(const PiecewiseSmoothFunction& f, int order, double x) {
  return f.derivative(order, x);
}

namespace detail {

// Polynomial pieces answer every derivative order up to this cap.
inline constexpr int polynomial_max_order = 64;

inline Piece polynomial_piece(std::vector<double> coefficients) {
  while (coefficients.size() > 1 && coefficients.back() == 0.0) coefficients.pop_back();
  if (coefficients.empty()) coefficients.push_back(0.0);
  const int degree = static_cast<int>(coefficients.size()) - 1;
  auto evaluator = [c = std::move(coefficients)](int order, double x) {
    const int top = static_cast<int>(c.size()) - 1;
    if (order > top) return 0.0;
    // Horner on the order-th derivative; factor j!/(j-order)!.
    double sum = 0.0;
    for (int j = top; j >= order; --j) {
      double factor = 1.0;
      for (int i = 0; i < order; ++i) factor *= static_cast<double>(j - i);
      sum = sum * x + factor * c[static_cast<std::size_t>(j)];
    }
    return sum;
  };
  return Piece{std::move(evaluator), degree};
}

}  // namespace detail

/// Piecewise polynomial; coefficients[i] holds the monomial coefficients
/// (ascending powers of x) on [breakpoints[i], breakpoints[i+1]].
inline PiecewiseSmoothFunction make_piecewise_polynomial(
    std::vector<double> breakpoints, const std::vector<std::vector<double>>& coefficients,
    std::string description = "polynomial") {
  std::vector<Piece> pieces;
  pieces.reserve(coefficients.size());
  for (const auto& c : coefficients) {
    if (c.empty()) throw std::invalid_argument("make_piecewise_polynomial: empty piece");
    pieces.push_back(detail::polynomial_piece(c));
  }
  return PiecewiseSmoothFunction(std::move(breakpoints), std::move(pieces),
                                 detail::polynomial_max_order, std::move(description));
}

/// |x - t| on [-1,1].
inline PiecewiseSmoothFunction make_abs_kink(double t) {
  if (!(t > -1.0 && t < 1.0)) {
    throw std::domain_error("make_abs_kink: t must lie in (-1,1)");
  }
  return make_piecewise_polynomial({-1.0, t, 1.0}, {{t, -1.0}, {-t, 1.0}},
                                   "abs-kink t=" + std::to_string(t));
}

/// A single smooth piece with user-supplied derivatives 0..max_order.
inline PiecewiseSmoothFunction make_smooth(DerivativeEvaluator derivative, int max_order,
                                           std::string description = "smooth") {
  return PiecewiseSmoothFunction({-1.0, 1.0}, {Piece{std::move(derivative), std::nullopt}},
                                 max_order, std::move(description));
}

enum class Provenance { analytic, numeric };

struct SemiNorm {
  double value = 0.0;
  double estimated_error = 0.0;
  Provenance provenance = Provenance::analytic;
};

/// Order m plus V_m and V_hat_m.
struct SmoothnessData {
  int m = 0;
  double V = 0.0;
  double V_hat = 0.0;
  Provenance provenance = Provenance::analytic;
};

namespace detail {

// Split [a,b] where g changes sign so that |g| is smooth on each part.
template <class G>
std::vector<double> sign_change_partition(const G& g, double a, double b) {
  constexpr int samples = 256;
  std::vector<double> cuts{a};
  double x_prev = a;
  double g_prev = g(a);
  for (int i = 1; i <= samples; ++i) {
    const double x = (i == samples) ? b : a + (b - a) * static_cast<double>(i) / samples;
    const double gx = g(x);
    if ((g_prev < 0.0 && gx > 0.0) || (g_prev > 0.0 && gx < 0.0)) {
      double lo = x_prev;
      double hi = x;
      for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double gm = g(mid);
        if ((gm < 0.0) == (g_prev < 0.0) && gm != 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      const double root = 0.5 * (lo + hi);
      if (root > cuts.back() && root < b) cuts.push_back(root);
    } else if (gx == 0.0 && i < samples && x > cuts.back()) {
      cuts.push_back(x);
    }
    x_prev = x;
    g_prev = gx;
  }
  cuts.push_back(b);
  return cuts;
}

inline SemiNorm weighted_semi_norm(const PiecewiseSmoothFunction& f, int m, double exponent,
                                   double tolerance) {
  if (m < 0) throw std::domain_error("semi-norm: negative order");
  if (m + 1 > f.max_order()) {
    throw std::domain_error("semi-norm: the function provides derivatives only up to order " +
                            std::to_string(f.max_order()) + ", order " +
                            std::to_string(m + 1) + " is required");
  }
  if (!(tolerance >= 1e-13)) throw std::domain_error("semi-norm: tolerance must be >= 1e-13");

  SemiNorm result;
  const auto& bp = f.breakpoints();

  // Atomic part: jumps of f^{(m)} at interior breakpoints.
  for (std::size_t j = 1; j + 1 < bp.size(); ++j) {
    const double jump = std::abs(f.jump(j, m));
    if (jump == 0.0) continue;
    const double x = bp[j];
    result.value += jump * std::pow((1.0 - x) * (1.0 + x), -exponent);
  }

  // Absolutely continuous part, per piece and per sign-definite sub-interval.
  std::vector<std::pair<std::size_t, std::pair<double, double>>> segments;
  for (std::size_t i = 0; i < f.piece_count(); ++i) {
    const auto& piece = f.piece(i);
    if (piece.polynomial_degree && *piece.polynomial_degree <= m) continue;
    auto g = [&piece, m](double x) { return piece.derivative(m + 1, x); };
    const auto cuts = sign_change_partition(g, bp[i], bp[i + 1]);
    for (std::size_t c = 1; c < cuts.size(); ++c) {
      segments.push_back({i, {cuts[c - 1], cuts[c]}});
    }
  }
  if (!segments.empty()) {
    result.provenance = Provenance::numeric;
    const double segment_tolerance = tolerance / static_cast<double>(segments.size());
    for (const auto& [index, range] : segments) {
      const auto& piece = f.piece(index);
      auto abs_g = [&piece, m](double x) { return std::abs(piece.derivative(m + 1, x)); };
      const auto part = tanh_sinh_piece(abs_g, exponent, range.first, range.second,
                                        segment_tolerance);
      result.value += part.value;
      result.estimated_error += part.estimated_error;
    }
  }
  if (!std::isfinite(result.value)) {
    throw numerical_failure("semi-norm: non-finite value");
  }
  return result;
}

}  // namespace detail

/// V_m: integral of |f^{(m+1)}| (1-x^2)^{-1/4} over the pieces plus the
/// jumps |f^{(m)}(x_j+) - f^{(m)}(x_j-)| weighted by (1-x_j^2)^{-1/4}.
inline SemiNorm semi_norm_V(const PiecewiseSmoothFunction& f, int m, double tolerance = 1e-12) {
  return detail::weighted_semi_norm(f, m, 0.25, tolerance);
}

/// V_hat_m: same construction with weight (1-x^2)^{-1/2}.
inline SemiNorm semi_norm_V_hat(const PiecewiseSmoothFunction& f, int m,
                                double tolerance = 1e-12) {
  return detail::weighted_semi_norm(f, m, 0.5, tolerance);
}

inline SmoothnessData smoothness_data(const PiecewiseSmoothFunction& f, int m,
                                      double tolerance = 1e-12) {
  const auto v = semi_norm_V(f, m, tolerance);
  const auto v_hat = semi_norm_V_hat(f, m, tolerance);
  const bool analytic =
      v.provenance == Provenance::analytic && v_hat.provenance == Provenance::analytic;
  return SmoothnessData{m, v.value, v_hat.value,
                        analytic ? Provenance::analytic : Provenance::numeric};
}

/// Largest m for which f, ..., f^{(m-1)} are continuous: the lowest order
/// with a nonzero jump. Jump-free functions get their polynomial degree (at
/// least 1), or max_order()-1 for general smooth pieces.
inline int admissible_smoothness_order(const PiecewiseSmoothFunction& f) {
  const auto& bp = f.breakpoints();
  for (int k = 1; k < f.max_order(); ++k) {
    for (std::size_t j = 1; j + 1 < bp.size(); ++j) {
      if (std::abs(f.jump(j, k)) > 1e-12) return k;
    }
  }
  if (const auto degree = f.polynomial_degree()) return std::max(1, *degree);
  return std::max(1, f.max_order() - 1);
}

}  // namespace legbound
