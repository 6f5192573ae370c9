#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hahn/core.hpp"
#include "hahn/errors.hpp"

using namespace hahn;

namespace {

// Independent oracles: plain loops in long double.
long double geometric_partial_sum(int k, long double q) {
  long double sum = 0.0L, term = 1.0L;
  for (int j = 0; j < k; ++j) {
    sum += term;
    term *= q;
  }
  return sum;
}

long double brute_product(long double a, long double q, long n) {
  long double p = 1.0L, z = a;
  for (long k = 0; k < n; ++k) {
    p *= 1.0L - z;
    z *= q;
  }
  return p;
}

}  // namespace

TEST_CASE("deformation parameters") {
  const DeformationParams p(0.5, 0.1);
  CHECK(p.w0() == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(p.step(p.w0()) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(DeformationParams(0.3, 0.0).w0() == 0.0);
  CHECK_THROWS_AS(DeformationParams(1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(DeformationParams(0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(DeformationParams(0.5, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(TruncationPolicy({0.0, 10}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(TruncationPolicy({1e-14, 0}).validate(), std::invalid_argument);
}

TEST_CASE("q-numbers") {
  CHECK(q_number(0, 0.5) == 0.0);
  for (double q : {0.1, 0.5, 0.99}) CHECK(q_number(1, q) == 1.0);
  CHECK(q_number(3, 0.5) == doctest::Approx(1.75).epsilon(1e-15));
  // Closed-form branch against the summed oracle.
  for (int k : {65, 100, 400}) {
    CHECK(q_number(k, 0.97) ==
          doctest::Approx(static_cast<double>(geometric_partial_sum(k, 0.97L))).epsilon(1e-14));
  }
  // Near q = 1 the value stays accurate instead of cancelling.
  CHECK(q_number(200, 1.0 - 1e-9) == doctest::Approx(200.0).epsilon(1e-6));
}

TEST_CASE("(q,w)-numbers") {
  const DeformationParams p(0.5, 1.0);
  CHECK(qw_number(0, p) == 0.0);
  CHECK(qw_number(7, DeformationParams(0.5, 0.0)) == 0.0);
  CHECK(qw_number(2, p) == doctest::Approx(1.5));
  double previous = -1.0;
  for (int k = 0; k < 80; ++k) {
    const double value = qw_number(k, p);
    CHECK(value >= previous);
    previous = value;
  }
  CHECK(qw_number(200, p) == doctest::Approx(p.w0()).epsilon(1e-14));
}

TEST_CASE("q-factorials") {
  CHECK(q_factorial(0, 0.5) == 1.0);
  CHECK(q_factorial(1, 0.5) == 1.0);
  CHECK(q_factorial(3, 0.5) == doctest::Approx(2.625).epsilon(1e-15));
  CHECK(q_inv_factorial(0, 0.5) == 1.0);
  CHECK(q_inv_factorial(2, 0.5) == doctest::Approx(3.0).epsilon(1e-15));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pick_q(0.05, 0.95);
  for (int trial = 0; trial < 20; ++trial) {
    const double q = pick_q(rng);
    for (int n = 0; n <= 12; ++n) {
      // Direct product of [j]_{1/q} = (1 - q^{-j}) / (1 - q^{-1}).
      long double direct = 1.0L;
      for (int j = 1; j <= n; ++j) {
        direct *= (1.0L - std::pow(1.0L / q, j)) / (1.0L - 1.0L / q);
      }
      CHECK(q_inv_factorial(n, q) == doctest::Approx(static_cast<double>(direct)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(q_inv_factorial(60, 0.5), Overflow);
}

TEST_CASE("finite q-shifted factorial") {
  CHECK(q_shifted_factorial(3.7, 0.5, 0) == 1.0);
  CHECK(q_shifted_factorial(0.0, 0.5, 9) == 1.0);
  CHECK(q_shifted_factorial(1.0, 0.5, 4) == 0.0);
  CHECK(q_shifted_factorial(0.5, 0.5, 2) == doctest::Approx(0.5 * 0.75));
  CHECK(q_binomial(4, 2, 0.5) == doctest::Approx(1.0 + 0.5 + 2 * 0.25 + 0.125 + 0.0625));
  CHECK(q_binomial(4, 5, 0.5) == 0.0);
}

TEST_CASE("infinite q-shifted factorial") {
  const TruncationPolicy policy;
  CHECK(q_shifted_factorial_inf(0.0, 0.5, policy).value == 1.0);

  SUBCASE("agrees with long finite products") {
    for (double q : {0.3, 0.5, 0.9}) {
      for (double a : {-3.0, -1.0, 0.2, 0.8, 2.5}) {
        // 5000 factors is far past the stopping index for every q here.
        const double oracle = static_cast<double>(brute_product(a, q, 5000));
        const double relative = policy.tol * std::abs(a) / (1.0 - q) + 1e-14;
        CHECK(std::abs(q_shifted_factorial_inf(a, q, policy).value - oracle) <=
              relative * std::abs(oracle));
      }
    }
    const TruncationPolicy fine{1e-15, 10000};
    const double oracle = static_cast<double>(brute_product(-1.0L, 0.5L, 500));
    CHECK(std::abs(q_shifted_factorial_inf(-1.0, 0.5, fine).value - oracle) < 1e-12);
  }

  SUBCASE("q close to one converges within the default budget") {
    for (double a : {2.5e-4, -2.5e-4, 0.3, -0.6}) {
      const auto result = q_shifted_factorial_inf(a, 0.999, policy);
      const double oracle = static_cast<double>(brute_product(a, 0.999L, 100000));
      CHECK(result.terms < 10000);
      CHECK(result.value == doctest::Approx(oracle).epsilon(1e-12));
    }
  }

  SUBCASE("vanishing factor") {
    const auto result = q_shifted_factorial_inf(4.0, 0.5, policy);  // 1 - q^2 * 4 = 0
    CHECK(result.zero_factor);
    CHECK(result.value == 0.0);
  }

  SUBCASE("term budget") {
    CHECK_THROWS_AS(q_shifted_factorial_inf(50.0, 0.999, TruncationPolicy{1e-14, 100}),
                    NonConvergent);
  }
}

TEST_CASE("Hahn derivative") {
  const DeformationParams p(0.5, 0.1);
  for (double t : {-1.0, 0.0, 0.7, 3.0}) {
    CHECK(hahn_derivative([](double) { return 4.2; }, t, p) == 0.0);
    CHECK(hahn_derivative([](double s) { return s; }, t, p) == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(hahn_derivative([](double s) { return s * s; }, 1.0, p) == doctest::Approx(1.6));

  SUBCASE("fixed point falls back to the ordinary derivative") {
    const auto cube = [](double s) { return s * s * s; };
    CHECK(hahn_derivative(cube, p.w0(), p) == doctest::Approx(3 * 0.04).epsilon(1e-9));
    const DeformationParams jackson(0.5, 0.0);
    CHECK(hahn_derivative(cube, 0.0, jackson) == doctest::Approx(0.0).epsilon(1e-9));
  }

  SUBCASE("classical limit") {
    const auto cube = [](double s) { return s * s * s; };
    double previous = INFINITY;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      const DeformationParams near(1.0 - eps, eps * eps);
      const double error = std::abs(hahn_derivative(cube, 1.0, near) - 3.0);
      CHECK(error < previous);
      previous = error;
    }
    CHECK(previous < 1e-3);
  }
}

TEST_CASE("Hahn integral") {
  const TruncationPolicy policy;
  const DeformationParams p(0.5, 0.1);
  CHECK(hahn_integral([](double) { return 0.0; }, 1.3, p, policy) == 0.0);
  CHECK(hahn_integral([](double s) { return s * s; }, p.w0(), p, policy) == 0.0);

  const auto square = [](double s) { return s * s; };
  for (double t : {0.3, 1.0, 2.0}) {
    const double composed =
        hahn_derivative([&](double s) { return hahn_integral(square, s, p, policy); }, t, p);
    CHECK(std::abs(composed - square(t)) < 1e-8);
  }

  // Constant integrand: integral from w0 to t of 1 is t - w0.
  CHECK(hahn_integral([](double) { return 1.0; }, 2.0, p, policy) ==
        doctest::Approx(2.0 - p.w0()).epsilon(1e-13));
  CHECK_THROWS_AS(hahn_integral([](double) { return 1.0; }, 2.0, DeformationParams(0.999, 0.0),
                                TruncationPolicy{1e-14, 50}),
                  NonConvergent);
}

TEST_CASE("(q,w)-polynomials") {
  const DeformationParams p(0.5, 0.1);
  CHECK(qw_polynomial(2.3, 0, p) == 1.0);
  for (int n = 1; n <= 5; ++n) CHECK(qw_polynomial(p.w(), n, p) == 0.0);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pick_t(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double t = pick_t(rng);
    if (std::abs(t - p.w0()) < 0.05) continue;
    for (int n = 1; n <= 6; ++n) {
      const double lhs = hahn_derivative([&](double s) { return qw_polynomial(s, n, p); }, t, p);
      CHECK(std::abs(lhs - q_number(n, 0.5) * qw_polynomial(t, n - 1, p)) < 1e-10);
    }
  }
}

TEST_CASE("lattice advance") {
  const DeformationParams p(0.5, 0.1);
  CHECK(advance(p.w0(), p) == doctest::Approx(p.w0()).epsilon(1e-15));
  CHECK(advance_n(1.7, 0, p) == 1.7);
  CHECK(advance_n(1.0, 3, p) == doctest::Approx(0.3).epsilon(1e-15));

  double t = 4.0;
  for (int n = 1; n <= 40; ++n) {
    t = advance(t, p);
    CHECK(advance_n(4.0, n, p) == doctest::Approx(t).epsilon(1e-14));
    CHECK(std::abs(advance_n(4.0, n, p) - p.w0()) ==
          doctest::Approx(std::pow(0.5, n) * (4.0 - p.w0())).epsilon(1e-13));
  }
}

TEST_CASE("partial sums of q-numbers") {
  for (double q : {0.3, 0.5, 0.9}) {
    long double linear = 0.0L, weighted = 0.0L;
    for (int n = 1; n <= 50; ++n) {
      linear += geometric_partial_sum(n - 1, q);
      weighted += std::pow(static_cast<long double>(q), n - 1) * geometric_partial_sum(n - 1, q);
      CHECK(std::abs(q_number_partial_sum(n, q) - static_cast<double>(linear)) < 1e-12);
      CHECK(std::abs(q_weighted_number_partial_sum(n, q) - static_cast<double>(weighted)) < 1e-12);
    }
  }
  CHECK(q_number_partial_sum(0, 0.5) == 0.0);
  CHECK(q_weighted_number_partial_sum(0, 0.5) == 0.0);
}
