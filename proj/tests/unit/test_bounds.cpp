#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <random>

#include "qkdpp/bounds/entropy.hpp"
#include "qkdpp/bounds/hypergeometric.hpp"
#include "qkdpp/bounds/patterns.hpp"
#include "qkdpp/bounds/sampling.hpp"
#include "qkdpp/errors.hpp"
#include "support/oracles.hpp"

using namespace qkdpp;

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.04) == doctest::Approx(oracle::entropy_ld(0.04L)).epsilon(1e-14));
  CHECK(std::abs(binary_entropy(0.04) - 0.24229) < 1e-5);
  for (double x : {0.01, 0.2, 0.37}) CHECK(binary_entropy(x) == doctest::Approx(binary_entropy(1.0 - x)));
  CHECK_THROWS_AS(binary_entropy(-0.01), DomainError);
  CHECK_THROWS_AS(binary_entropy(1.01), DomainError);
  CHECK_THROWS_AS(binary_entropy(std::nan("")), DomainError);
}

TEST_CASE("xi values and positivity") {
  CHECK(xi(0.04, 0.5, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
  const double v = xi(0.04, 0.5, 0.01);
  CHECK(v > 0.0);
  CHECK(v == doctest::Approx(static_cast<double>(oracle::xi_ld(0.04L, 0.5L, 0.01L))).epsilon(1e-10));

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double e = 0.45 * u(rng);
    const double q = 0.01 + 0.98 * u(rng);
    const double t = 1e-4 + (0.5 - e) * u(rng);
    REQUIRE(xi(e, q, t) > 0.0);
  }
  CHECK_THROWS_AS(xi(0.9, 0.5, 0.2), DomainError);
  CHECK_THROWS_AS(xi(0.1, 0.0, 0.01), DomainError);
}

TEST_CASE("xi second-order expansion") {
  // xi = q(1-q) theta^2 / (2 ln2 e(1-e)) + O(theta^3); the cubic constant
  // over this grid is below 225.
  const double C = 250.0;
  for (double e : {0.02, 0.04, 0.06, 0.1, 0.15, 0.2}) {
    for (double q : {0.1, 0.3, 0.5, 0.7, 0.9, 0.998}) {
      const double coef = q * (1 - q) / (2 * std::log(2.0) * e * (1 - e));
      for (int i = 1; i <= 100; ++i) {
        const double t = i * 1e-4;
        REQUIRE(std::abs(xi(e, q, t) - coef * t * t) <= C * t * t * t);
      }
    }
  }
}

TEST_CASE("sampling bound shape") {
  // At theta = 0 only the prefactor remains. It exceeds 1 only for small
  // samples; at large N it is the height of the point probability near its mode.
  CHECK(phase_sampling_bound_log2(10, 30, 0.1, 0.0) >= 0.0);
  const double at0 = phase_sampling_bound_log2(1000, 3000, 0.05, 0.0);
  CHECK(at0 == doctest::Approx(0.5 * std::log2(4000.0 / (0.05 * 0.95 * 1000 * 3000))));
  double prev = at0;
  for (int i = 1; i <= 200; ++i) {
    const double cur = phase_sampling_bound_log2(1000, 3000, 0.05, i / 3000.0);
    REQUIRE(cur < prev);
    prev = cur;
  }
  CHECK_THROWS_AS(phase_sampling_bound_log2(10, 10, 0.0, 0.1), DomainError);
  CHECK_THROWS_AS(phase_sampling_bound_log2(0, 10, 0.1, 0.1), DomainError);
}

TEST_CASE("hypergeometric point probabilities") {
  CHECK(hypergeometric_tail_exact(4, 2, 1, 2) == doctest::Approx(4.0 / 6.0).epsilon(1e-15));
  CHECK(hypergeometric_tail_exact(4, 2, 0, 2) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(hypergeometric_tail_exact(4, 2, 3, 2) == 0.0);
  CHECK(hypergeometric_tail_exact(4, 5, 0, 2) == 0.0);
  CHECK(hypergeometric_tail_exact(10, 8, 0, 5) == 0.0);  // 8 unmarked needed, 5 exist

  for (std::uint64_t N = 1; N <= 60; ++N) {
    for (std::uint64_t n = 0; n <= N; ++n) {
      for (std::uint64_t m = 0; m <= N; ++m) {
        double s = 0.0;
        for (std::uint64_t k = 0; k <= n; ++k) s += hypergeometric_tail_exact(N, n, k, m);
        REQUIRE(s == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("hypergeometric exact and log-gamma paths agree") {
  for (std::uint64_t k = 0; k <= 40; ++k) {
    const double exact = hypergeometric_tail_exact(199, 80, k, 60);
    const double lg = std::exp2(log2_binomial(60, k) + log2_binomial(139, 80 - k) - log2_binomial(199, 80));
    CHECK(exact == doctest::Approx(lg).epsilon(1e-9));
  }
  double s = 0.0;
  for (std::uint64_t k = 0; k <= 300; ++k) s += hypergeometric_tail_exact(1000, 300, k, 100);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("closed-form bound dominates the exact point probability") {
  // Region where the closed form is derived: N > m > k >= 1, N > n > k, and
  // the unsampled rate (m-k)/(N-n) lies strictly above k/n and at most 1 - k/n.
  long checked = 0;
  for (std::uint64_t N = 3; N <= 30; ++N) {
    for (std::uint64_t n = 2; n < N; ++n) {
      for (std::uint64_t m = 2; m < N; ++m) {
        for (std::uint64_t k = 1; k < n && k < m; ++k) {
          if (m - k > N - n) continue;
          const double e = double(k) / double(n);
          const double ep = double(m - k) / double(N - n);
          if (!(ep > e) || ep > 1.0 - e) continue;
          const double exact = hypergeometric_tail_exact(N, n, k, m);
          REQUIRE(std::exp2(sampling_bound_counts_log2(N, n, k, m)) >= exact);
          ++checked;
        }
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("zero-error substitution") {
  for (std::uint64_t m : {5, 9, 20}) {
    const double a = sampling_bound_counts_log2(100, 40, 0, m);
    const double b = sampling_bound_counts_log2(100, 40, 1, m);
    CHECK(a == b);
    const double theta = double(m - 1) / 60.0 - 1.0 / 40.0;
    CHECK(phase_sampling_bound_log2(40, 60, 1.0 / 40.0, theta) == doctest::Approx(b).epsilon(1e-12));
  }
  CHECK(substitute_zero_error(0.0, 50) == 1.0 / 50.0);
  CHECK(substitute_zero_error(0.2, 50) == 0.2);
}

TEST_CASE("phase failure total") {
  const SamplingInput sym{5000, 5000, 0.03, 0.03, 0.02, 0.02};
  const double single = std::exp2(phase_sampling_bound_log2(5000, 5000, 0.03, 0.02));
  CHECK(phase_failure_total(sym) == doctest::Approx(2.0 * single).epsilon(1e-12));

  const SamplingInput vacuous{20, 20, 0.1, 0.1, 0.0, 0.0};
  CHECK(phase_failure_total_unclamped(vacuous) >= 1.0);
  CHECK(phase_failure_total(vacuous) == 1.0);
  CHECK(phase_failure_total_log2(vacuous) == 0.0);

  // Operating point with 9.216e6 X and 1.6e4 Z bits, deviations 1.07% and
  // 0.84% on their grids: the sum comes out near 1e-7.
  const std::uint64_t nx = 9216000;
  const std::uint64_t nz = 16000;
  const SamplingInput op{nx, nz, 0.04, 0.04, std::ceil(0.0107 * nz) / nz, std::ceil(0.0084 * nx) / nx};
  CHECK(std::abs(phase_failure_total(op) - 1e-7) < 0.1e-7);

  const SamplingInput zero{1000, 1000, 0.0, 0.0, 0.05, 0.05};
  CHECK(phase_failure_total(zero) > 0.0);
  CHECK_THROWS_AS(phase_failure_total(SamplingInput{0, 10, 0.1, 0.1, 0.1, 0.1}), DomainError);
  CHECK_THROWS_AS(phase_failure_total(SamplingInput{10, 10, 0.9, 0.1, 0.2, 0.1}), DomainError);
}

TEST_CASE("gaussian approximation") {
  const double v = gaussian_approx_failure(1000000, 0.04, 0.01);
  const double w = 0.04 * 0.96;
  CHECK(v == doctest::Approx(std::exp(-1e-4 * 1e6 / (4 * w)) / (2 * std::sqrt(2e6 * w))).epsilon(1e-12));
  double prev = 1.0;
  for (int i = 0; i <= 20; ++i) {
    const double cur = gaussian_approx_failure(100000, 0.04, i * 0.001);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK(gaussian_approx_failure(200000, 0.04, 0.005) < gaussian_approx_failure(100000, 0.04, 0.005));
  CHECK(gaussian_approx_failure(1000, 0.04, 0.0) < 1.0);
  CHECK_THROWS_AS(gaussian_approx_failure(1000, 0.0, 0.01), DomainError);
  CHECK_THROWS_AS(gaussian_approx_failure(1000, 1.0, 0.01), DomainError);
}

TEST_CASE("phase pattern counts") {
  CHECK(phase_pattern_count_exact_log2(20, 0.05, 0.0) == 0.0);  // (e+theta) n = 1
  CHECK(phase_pattern_count_exact_log2(20, 0.0, 0.0) == -INFINITY);
  CHECK(phase_pattern_count_log2(300, 0.04, 0.01) == doctest::Approx(300 * binary_entropy(0.05)));
  CHECK(phase_pattern_count_log2(30, 0.3, 0.1) == phase_pattern_count_exact_log2(30, 0.3, 0.1));

  using boost::multiprecision::cpp_int;
  // Claim: sum_{k<m} C(n,k) < C(n,m) for m <= n/3.
  CHECK(oracle::binomial_sum_below(40, 13) < oracle::binomial(40, 13));

  for (std::uint64_t n = 1; n <= 40; ++n) {
    for (int a = 1; a <= 66; ++a) {
      const double rate = a / 200.0;
      const double exact = phase_pattern_count_exact_log2(n, rate, 0.0);
      REQUIRE(static_cast<double>(n) * binary_entropy(rate) >= exact - 1e-12);
      const std::uint64_t m = (static_cast<std::uint64_t>(a) * n + 199) / 200;  // ceil(rate n) in integers
      const cpp_int direct = oracle::binomial_sum_below(n, m);
      if (direct > 0) CHECK(exact == doctest::Approx(std::log2(direct.convert_to<double>())).epsilon(1e-12));
    }
  }
  // log-domain path for large n agrees with the entropy estimate to within log factors
  const double big = phase_pattern_count_exact_log2(20000, 0.3, 0.1);
  CHECK(big < 20000 * binary_entropy(0.4));
  CHECK(big > 20000 * binary_entropy(0.4) - 0.5 * std::log2(8.0 * 20000));
}

TEST_CASE("azuma bound") {
  const auto z = azuma_phase_bound(100, 0.0, 1.0);
  CHECK(z.prob == 4.0);
  CHECK(z.deviation == 0.0);
  const auto a = azuma_phase_bound(200, 0.1, 1.0);
  CHECK(a.prob_single == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-14));
  CHECK(std::abs(a.prob_single - 0.7358) < 1e-4);
  CHECK(a.deviation == doctest::Approx(0.2));
  CHECK(azuma_phase_bound(200, 0.1, 1.5).deviation == doctest::Approx(0.25));

  // BB84: same total deviation theta from both estimators, Azuma is weaker.
  const std::uint64_t n = 100000;
  for (double theta : {0.005, 0.01, 0.02}) {
    const double az = azuma_phase_bound(n, theta / 2.0, 1.0).prob;
    const double rs = std::exp2(phase_sampling_bound_log2(n / 2, n / 2, 0.04, theta));
    CHECK(std::min(1.0, az) >= rs);
  }
  CHECK_THROWS_AS(azuma_phase_bound(10, 0.1, 0.5), DomainError);
}
