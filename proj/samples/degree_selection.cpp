// Pick a truncation length for |x - 0.3| that guarantees a uniform error of
// 1e-2, then confirm it by measurement.

#include <cstdio>

#include "legbound/legbound.hpp"

int main() {
  using namespace legbound;

  const auto f = make_abs_kink(0.3);
  const int m = admissible_smoothness_order(f);
  const auto v = semi_norm_V(f, m);
  const BoundParameters params{m, v.value, std::nullopt};

  const double eps = 1e-2;
  const auto N = min_degree_for_tolerance(eps, params);
  std::printf("m = %d, V = %.6f, N = %lld, bound(N) = %.6g\n", m, v.value,
              static_cast<long long>(N), uniform_error_bound(N, params));

  if (N <= measurement_cap) {
    const auto series = compute_coefficients(f, static_cast<int>(N));
    const auto err = measure_uniform_error(f, series);
    std::printf("measured sup error = %.6g at x = %.6f\n", err.sup_error, err.argmax_location);
  } else {
    // The bound is pessimistic for a kink: the error is O(1/N), so a much
    // smaller N already meets eps. Show the error at a few sizes instead.
    const auto series = compute_coefficients(f, 800);
    const int sizes[] = {100, 200, 400, 800};
    const auto errors = measure_truncation_errors(f, series.coefficients, sizes);
    for (std::size_t i = 0; i < errors.size(); ++i) {
      std::printf("N = %4d: measured sup error = %.6g\n", sizes[i], errors[i].sup_error);
    }
  }
  return 0;
}
