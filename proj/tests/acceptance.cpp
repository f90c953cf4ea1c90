// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "legbound/legbound.hpp"
#include "oracles.hpp"

using namespace legbound;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  if (!ok) ++failures;
}

double relative(double a, double b) { return std::abs(a - b) / std::abs(b); }

void criterion_1() {
  const auto p = abs_kink_parameters(0.0);
  const double b1 = bound_B1(400, p);
  const double a400 = std::abs(abs_kink_coefficient(0.0, 400));
  const double a400_quad = std::abs(compute_coefficients(make_abs_kink(0.0), 401).coefficients[400]);
  const bool ok = relative(b1, 0.0002000963242) <= 1e-9 && relative(a400, 0.0001991004306) <= 1e-8 &&
                  relative(a400_quad, 0.0001991004306) <= 1e-8 && a400 <= b1;
  report(1, ok, "worked numbers at n = 400 for |x|",
         "B1=" + format_number(b1) + " |a_400|=" + format_number(a400) +
             " quadrature=" + format_number(a400_quad));
}

void criterion_2() {
  constexpr int grid = 100000;
  constexpr int n_max = 200;
  std::vector<double> best(n_max + 1, 0.0);
  for (int i = 0; i < grid; ++i) {
    const double x = -1.0 + 2.0 * i / (grid - 1.0);
    const auto r = bernstein_ratio_sequence(n_max, x);
    for (int n = 0; n <= n_max; ++n) best[n] = std::max(best[n], r[n]);
  }
  bool below = true;
  for (int n = 0; n <= n_max; ++n) below = below && best[n] < 1.0;
  const bool approach = best[2] > 0.9 && best[6] > 0.9 && best[18] > 0.9;
  report(2, below && approach, "Bernstein ratio < 1 for n <= 200 and > 0.9 somewhere for n = 2, 6, 18",
         "max over n=" + format_number(*std::max_element(best.begin(), best.end())) +
             " n=2:" + format_number(best[2]) + " n=6:" + format_number(best[6]) +
             " n=18:" + format_number(best[18]));
}

void criterion_3() {
  bool ok = true;
  double worst = 0.0;
  for (const double t : {0.0, 6.0 / 7.0}) {
    const auto f = make_abs_kink(t);
    const BoundParameters p{1, semi_norm_V(f, 1).value, std::nullopt};
    const auto series = abs_kink_series(t, 1001);
    for (int n = 2; n <= 1000; ++n) {
      const double ratio = std::abs(series.coefficients[n]) / bound_B1(n, p);
      worst = std::max(worst, ratio);
      ok = ok && ratio <= 1.0;
    }
  }
  report(3, ok, "|a_n| <= B1 for t in {0, 6/7}, 2 <= n <= 1000", "max |a_n|/B1=" + format_number(worst));
}

void criterion_4() {
  bool ok = true;
  double worst_closed = 0.0;
  for (const double t : {0.0, 6.0 / 7.0}) {
    const auto data = smoothness_data(make_abs_kink(t), 1);
    const BoundParameters p{1, data.V, data.V_hat};
    const double limit = ratio_B1_B2_limit(t);
    for (int n = 5; n <= 400; ++n) {
      const double direct = bound_B1(n, p) / bound_B2(n, p);
      const double closed = ratio_B1_B2(n, t);
      worst_closed = std::max(worst_closed, relative(direct, closed));
      ok = ok && direct < 1.0 && closed < limit && relative(direct, closed) <= 1e-12;
    }
  }
  report(4, ok, "B1 < B2 with ratio below its limit, 5 <= n <= 400",
         "max relative gap to closed form=" + format_number(worst_closed));
}

void criteria_5_and_6() {
  const auto f = make_abs_kink(0.0);
  const BoundParameters p{1, semi_norm_V(f, 1).value, std::nullopt};
  const auto study = error_study(f, p, default_error_study_truncations(), default_error_grid);
  std::size_t violations = 0;
  double tightest = std::numeric_limits<double>::infinity();
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& row : study.rows) {
    if (row.N <= 200) {
      violations += row.measured > row.bound ? 1 : 0;
      tightest = std::min(tightest, row.bound / row.measured);
    }
    if (row.N >= 100) {
      xs.push_back(row.N);
      ys.push_back(row.measured);
    }
  }
  report(5, violations == 0, "measured sup error <= uniform bound for |x|, 3 <= N <= 200",
         "violations=" + std::to_string(violations) + " min bound/error=" + format_number(tightest));
  const double slope = log_log_slope(xs, ys);
  report(6, slope >= -1.15 && slope <= -0.85, "log-log slope of the error over 100 <= N <= 800",
         "slope=" + format_number(slope));
}

void criterion_7() {
  bool ok = true;
  std::string detail;
  for (const auto& [N, m] : std::vector<std::pair<int, int>>{{5, 2}, {8, 3}, {12, 5}}) {
    const auto tail = telescoping_tail(N, m, 100000);
    const double gap = relative(tail.partial_sum, tail.closed_form);
    ok = ok && gap <= 1e-3 && tail.partial_sum <= tail.closed_form;
    detail += "(" + std::to_string(N) + "," + std::to_string(m) + ") gap=" + format_number(gap) + " ";
  }
  detail.pop_back();
  report(7, ok, "telescoping tail matches its closed form", detail);
}

void criterion_8() {
  bool exact = true;
  for (int K = 1; K <= 40; ++K) {
    const auto rule = gauss_legendre_rule(K);
    for (int j = 0; j <= 2 * K - 1; ++j) {
      const double v = integrate_smooth(rule, [j](double x) { return std::pow(x, j); }, -1.0, 1.0);
      const double want = j % 2 ? 0.0 : 2.0 / (j + 1);
      exact = exact && std::abs(v - want) <= 1e-12 * std::max(1.0, want);
    }
  }
  bool orthogonal = true;
  const auto rule = gauss_legendre_rule(40);
  for (int n = 0; n <= 30; ++n) {
    for (int k = 0; k <= 30; ++k) {
      const double v = integrate_smooth(
          rule, [n, k](double x) { return eval_legendre(n, x) * eval_legendre(k, x); }, -1.0, 1.0);
      orthogonal = orthogonal && std::abs(v - (n == k ? normalization_h(n) : 0.0)) <= 1e-12;
    }
  }
  bool rodrigues = true;
  for (int n = 0; n <= 10; ++n) {
    for (int i = 0; i <= 200; ++i) {
      const double x = -1.0 + i / 100.0;
      rodrigues = rodrigues && std::abs(eval_legendre(n, x) - oracle::rodrigues(n, x)) <= 1e-13;
    }
  }
  double worst = 0.0;
  for (const double t : {0.0, 6.0 / 7.0}) {
    const auto quad = compute_coefficients(make_abs_kink(t), 61);
    for (int n = 0; n <= 60; ++n) {
      worst = std::max(worst, std::abs(quad.coefficients[n] - abs_kink_coefficient(t, n)));
    }
  }
  report(8, exact && orthogonal && rodrigues && worst <= 1e-11,
         "quadrature exactness, orthogonality, Rodrigues agreement, closed-form coefficients",
         std::string("exact=") + (exact ? "yes" : "no") + " orthogonal=" + (orthogonal ? "yes" : "no") +
             " rodrigues=" + (rodrigues ? "yes" : "no") + " max |a_n - oracle|=" + format_number(worst));
}

void criterion_9() {
  const auto f = make_abs_kink(0.0);
  bool ok = true;
  std::string detail;
  for (const double eps : {0.5, 0.1, 0.32314}) {
    const auto sel = select_degree(f, 1, eps);
    const bool minimal = sel.bound <= eps && (sel.N == uniform_bound_min_N(1) ||
                                              uniform_error_bound(sel.N - 1, sel.params) > eps);
    const bool measured = sel.measured && sel.measured->sup_error <= eps;
    ok = ok && minimal && measured;
    detail += "eps=" + format_number(eps) + ":N=" + std::to_string(sel.N) + " ";
  }
  const auto fine = select_degree(f, 1, 0.01);
  ok = ok && fine.N == 101862 && !fine.measured;
  detail += "eps=0.01:N=" + std::to_string(fine.N);
  report(9, ok, "degree selector returns the minimal N", detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criteria_5_and_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
