#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "legbound/piecewise_function.hpp"
#include "oracles.hpp"

using namespace legbound;

namespace {

// Piece list for a piecewise-linear "tent" sum with kinks at the given
// points, built from the monomial form on each interval.
PiecewiseSmoothFunction two_kinks(double s, double t, double cs, double ct) {
  // cs |x - s| + ct |x - t| with s < t
  const std::vector<double> bp{-1.0, s, t, 1.0};
  const std::vector<std::vector<double>> pieces{
      {cs * s + ct * t, -cs - ct},
      {-cs * s + ct * t, cs - ct},
      {-cs * s - ct * t, cs + ct},
  };
  return make_piecewise_polynomial(bp, pieces);
}

}  // namespace

TEST(MakeAbsKink, Examples) {
  const auto f = make_abs_kink(0.0);
  EXPECT_DOUBLE_EQ(f(0.3), 0.3);
  EXPECT_DOUBLE_EQ(f.jump(1, 1), 2.0);
  EXPECT_EQ(f.jump(1, 0), 0.0);
  EXPECT_EQ(f.jump(1, 2), 0.0);
  const auto g = make_abs_kink(6.0 / 7.0);
  EXPECT_DOUBLE_EQ(g.derivative(1, 0.0), -1.0);
  EXPECT_DOUBLE_EQ(g.derivative(1, 0.9), 1.0);
  EXPECT_EQ(g.breakpoints().size(), 3u);
  EXPECT_EQ(g.derivative(2, 0.2), 0.0);
  EXPECT_THROW(make_abs_kink(1.0), std::domain_error);
  EXPECT_THROW(make_abs_kink(-1.0), std::domain_error);
}

TEST(EvalDerivative, Examples) {
  const auto f = make_abs_kink(0.0);
  EXPECT_DOUBLE_EQ(eval_derivative(f, 0, -0.4), 0.4);
  EXPECT_DOUBLE_EQ(eval_derivative(f, 1, 0.5), 1.0);
  // right-piece convention at the kink
  EXPECT_DOUBLE_EQ(eval_derivative(f, 1, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(eval_derivative(make_abs_kink(6.0 / 7.0), 1, 0.9), 1.0);
}

TEST(EvalDerivative, OrderAboveMaxThrows) {
  const auto f = make_smooth([](int, double x) { return std::exp(x); }, 3);
  EXPECT_NO_THROW(f.derivative(3, 0.1));
  EXPECT_THROW(f.derivative(4, 0.1), std::domain_error);
  EXPECT_THROW(semi_norm_V(f, 3), std::domain_error);
}

TEST(PiecewiseSmoothFunction, RejectsDiscontinuousAndMalformed) {
  EXPECT_THROW(make_piecewise_polynomial({-1.0, 0.0, 1.0}, {{0.0}, {1.0}}), std::invalid_argument);
  EXPECT_THROW(make_piecewise_polynomial({-1.0, 0.5, 0.0, 1.0}, {{0.0}, {0.0}, {0.0}}),
               std::invalid_argument);
  EXPECT_THROW(make_piecewise_polynomial({-1.0, 1.0}, {{0.0}, {0.0}}), std::invalid_argument);
  EXPECT_THROW(make_piecewise_polynomial({-0.9, 1.0}, {{0.0}}), std::invalid_argument);
}

TEST(PiecewiseSmoothFunction, JumpTableMatchesOneSidedDifferences) {
  // Cubic spline-like function: x^3 on the left, x^3 + 2(x-0.2)^2 on the right.
  const double c = 0.2;
  const auto f = make_piecewise_polynomial(
      {-1.0, c, 1.0}, {{0.0, 0.0, 0.0, 1.0}, {2.0 * c * c, -4.0 * c, 2.0, 1.0}});
  // One-sided limits approached from each side of the breakpoint.
  const double h = 1e-10;
  for (int k = 0; k <= 3; ++k) {
    const double right = f.piece(1).derivative(k, c + h);
    const double left = f.piece(0).derivative(k, c - h);
    EXPECT_NEAR(f.jump(1, k), right - left, 1e-8) << "k=" << k;
  }
  EXPECT_NEAR(f.jump(1, 2), 4.0, 1e-12);
  EXPECT_EQ(admissible_smoothness_order(f), 2);
}

TEST(SemiNormV, Examples) {
  const auto abs_x = make_abs_kink(0.0);
  const auto v = semi_norm_V(abs_x, 1);
  EXPECT_NEAR(v.value, 2.0, 1e-15);
  EXPECT_EQ(v.provenance, Provenance::analytic);

  const double t = 6.0 / 7.0;
  EXPECT_NEAR(semi_norm_V(make_abs_kink(t), 1).value, 2.0 * std::pow(13.0 / 49.0, -0.25), 1e-14);
  EXPECT_NEAR(2.0 * std::pow(13.0 / 49.0, -0.25), 2.786719, 1e-6);

  // x^2, m = 0: integral of |2x| (1-x^2)^{-1/4} = 8/3 by u = 1 - x^2.
  const auto square = make_piecewise_polynomial({-1.0, 1.0}, {{0.0, 0.0, 1.0}});
  const auto vs = semi_norm_V(square, 0);
  EXPECT_NEAR(vs.value, 8.0 / 3.0, 1e-12);
  EXPECT_EQ(vs.provenance, Provenance::numeric);
  const double brute = oracle::cos_substitution_trapezoid([](double x) { return std::abs(2 * x); }, 1000000);
  EXPECT_NEAR(brute, 8.0 / 3.0, 1e-8);
}

TEST(SemiNormVHat, Examples) {
  EXPECT_NEAR(semi_norm_V_hat(make_abs_kink(0.0), 1).value, 2.0, 1e-15);
  const double t = 6.0 / 7.0;
  EXPECT_NEAR(semi_norm_V_hat(make_abs_kink(t), 1).value, 14.0 / std::sqrt(13.0), 1e-13);
  EXPECT_NEAR(14.0 / std::sqrt(13.0), 3.8829, 1e-4);
  const auto constant = make_piecewise_polynomial({-1.0, 1.0}, {{3.5}});
  for (int m = 0; m <= 4; ++m) {
    EXPECT_EQ(semi_norm_V_hat(constant, m).value, 0.0);
    EXPECT_EQ(semi_norm_V(constant, m).value, 0.0);
  }
}

TEST(SemiNorm, SmoothPieceNumeric) {
  // f = sin(x): V_0 = integral of cos(x)(1-x^2)^{-1/4}; compare with the
  // cos-substitution trapezoid.
  const auto f = make_smooth(
      [](int k, double x) {
        switch (k % 4) {
          case 0: return std::sin(x);
          case 1: return std::cos(x);
          case 2: return -std::sin(x);
          default: return -std::cos(x);
        }
      },
      6, "sin");
  const double brute = oracle::cos_substitution_trapezoid([](double x) { return std::cos(x); }, 1000000);
  EXPECT_NEAR(semi_norm_V(f, 0).value, brute, 1e-8);
  // V_1 has |sin|, which changes sign at 0.
  const double brute1 =
      oracle::cos_substitution_trapezoid([](double x) { return std::abs(std::sin(x)); }, 1000000);
  EXPECT_NEAR(semi_norm_V(f, 1).value, brute1, 1e-8);
}

TEST(SemiNorm, Scaling) {
  const auto base = make_piecewise_polynomial({-1.0, 0.3, 1.0}, {{0.3, -1.0, 0.5}, {-0.3, 1.0, 0.5}});
  for (const double c : {2.0, -3.0, 0.5}) {
    const auto scaled = make_piecewise_polynomial(
        {-1.0, 0.3, 1.0}, {{c * 0.3, -c, c * 0.5}, {-c * 0.3, c, c * 0.5}});
    for (int m : {0, 1}) {
      const double v = semi_norm_V(base, m).value;
      EXPECT_NEAR(semi_norm_V(scaled, m).value, std::abs(c) * v, 1e-12 * std::abs(c) * v)
          << "c=" << c << " m=" << m;
    }
  }
}

TEST(SemiNorm, AtomicPartIsAdditive) {
  const double s = -0.4;
  const double t = 0.7;
  const auto both = two_kinks(s, t, 1.0, 1.0);
  const double v = semi_norm_V(both, 1).value;
  const double sum = semi_norm_V(make_abs_kink(s), 1).value + semi_norm_V(make_abs_kink(t), 1).value;
  EXPECT_NEAR(v, sum, 1e-12 * sum);
  const double vh = semi_norm_V_hat(both, 1).value;
  const double sumh =
      semi_norm_V_hat(make_abs_kink(s), 1).value + semi_norm_V_hat(make_abs_kink(t), 1).value;
  EXPECT_NEAR(vh, sumh, 1e-12 * sumh);
}

TEST(SemiNorm, HatDominatesOnCorpus) {
  std::vector<PiecewiseSmoothFunction> corpus;
  corpus.push_back(make_abs_kink(0.0));
  corpus.push_back(make_abs_kink(6.0 / 7.0));
  corpus.push_back(make_abs_kink(-0.3));
  corpus.push_back(two_kinks(-0.5, 0.25, 2.0, -1.0));
  corpus.push_back(make_piecewise_polynomial({-1.0, 1.0}, {{0.0, 0.0, 1.0}}));
  corpus.push_back(make_piecewise_polynomial({-1.0, 0.1, 1.0}, {{0.0, 1.0, 0.0, 1.0}, {0.0, 1.0, 0.0, 1.0}}));
  for (const auto& f : corpus) {
    for (int m = 0; m <= 2; ++m) {
      const auto data = smoothness_data(f, m);
      EXPECT_GE(data.V, 0.0);
      EXPECT_GE(data.V_hat, data.V - 1e-12) << f.description() << " m=" << m;
      EXPECT_TRUE(std::isfinite(data.V_hat));
    }
  }
}

TEST(AdmissibleOrder, Cases) {
  EXPECT_EQ(admissible_smoothness_order(make_abs_kink(0.2)), 1);
  EXPECT_EQ(admissible_smoothness_order(make_piecewise_polynomial({-1.0, 1.0}, {{0.0, 0.0, 0.0, 1.0}})), 3);
  EXPECT_EQ(admissible_smoothness_order(make_piecewise_polynomial({-1.0, 1.0}, {{2.0}})), 1);
  EXPECT_EQ(admissible_smoothness_order(make_smooth([](int, double x) { return std::exp(x); }, 5)), 4);
}
