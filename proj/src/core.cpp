#include "hahn/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hahn/compensated.hpp"
#include "hahn/errors.hpp"

namespace hahn {
namespace {

constexpr int kDirectSumLimit = 64;
constexpr double kTailSwitch = 0.25;
constexpr double kFixedPointBand = 1e-12;
constexpr double kCentralStep = 1e-6;

void require_q(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::invalid_argument("q must lie in (0, 1), got " + std::to_string(q));
  }
}

void require_nonnegative(int n, const char* what) {
  if (n < 0) throw std::invalid_argument(std::string(what) + " must be >= 0");
}

// 1 - q^r without cancellation when q is close to 1.
double one_minus_power(double q, double r) { return -std::expm1(r * std::log(q)); }

}  // namespace

double q_number(int k, double q) {
  require_q(q);
  require_nonnegative(k, "k");
  if (k <= kDirectSumLimit) {
    double sum = 0.0;
    for (int j = 0; j < k; ++j) sum = sum * q + 1.0;
    return sum;
  }
  return one_minus_power(q, k) / (1.0 - q);
}

double qw_number(int k, const DeformationParams& params) {
  return params.w() * q_number(k, params.q());
}

double q_factorial(int n, double q) {
  require_nonnegative(n, "n");
  double product = 1.0;
  for (int j = 2; j <= n; ++j) product *= q_number(j, q);
  return product;
}

double q_inv_factorial(int n, double q) {
  require_nonnegative(n, "n");
  const double log_scale = -0.5 * static_cast<double>(n) * (n - 1) * std::log(q);
  const double base = q_factorial(n, q);
  if (log_scale + std::log(base) >= std::log(std::numeric_limits<double>::max())) {
    throw Overflow("[" + std::to_string(n) + "]_{1/q}! overflows double");
  }
  return std::exp(log_scale) * base;
}

double q_shifted_factorial(double a, double q, int n) {
  require_q(q);
  require_nonnegative(n, "N");
  double product = 1.0;
  double z = a;
  for (int k = 0; k < n; ++k) {
    product *= 1.0 - z;
    z *= q;
  }
  return product;
}

double q_binomial(int n, int k, double q) {
  require_nonnegative(n, "n");
  if (k < 0 || k > n) return 0.0;
  return q_shifted_factorial(q, q, n) /
         (q_shifted_factorial(q, q, k) * q_shifted_factorial(q, q, n - k));
}

InfiniteProduct q_shifted_factorial_inf(double a, double q, const TruncationPolicy& policy) {
  require_q(q);
  policy.validate();
  InfiniteProduct result;
  result.min_abs_factor = std::numeric_limits<double>::infinity();

  double product = 1.0;
  double z = a;
  while (std::abs(z) > kTailSwitch) {
    if (result.terms >= policy.max_terms) {
      throw NonConvergent("(a;q)_inf: max_terms reached in explicit factors");
    }
    const double factor = 1.0 - z;
    result.min_abs_factor = std::min(result.min_abs_factor, std::abs(factor));
    ++result.terms;
    if (std::abs(factor) < policy.tol) {
      result.value = 0.0;
      result.zero_factor = true;
      return result;
    }
    product *= factor;
    z *= q;
  }

  // log prod_{j>=0} (1 - q^j z) = -sum_{r>=1} z^r / (r (1 - q^r)), |z| <= 1/4.
  CompensatedSum log_tail;
  double z_power = z;
  for (int r = 1; z_power != 0.0; ++r) {
    if (result.terms >= policy.max_terms) {
      throw NonConvergent("(a;q)_inf: max_terms reached in tail series");
    }
    const double term = z_power / (r * one_minus_power(q, r));
    log_tail += term;
    ++result.terms;
    if (std::abs(term) < policy.tol) break;
    z_power *= z;
  }
  if (z != 0.0) result.min_abs_factor = std::min(result.min_abs_factor, 1.0 - std::abs(z));
  result.value = product * std::exp(-log_tail.value());
  return result;
}

double hahn_derivative(const ScalarFunction& f, double t, const DeformationParams& params) {
  const double w0 = params.w0();
  const double scale = 1.0 + std::abs(w0);
  if (std::abs(t - w0) <= kFixedPointBand * scale) {
    const double h = kCentralStep * scale;
    return (f(t + h) - f(t - h)) / (2.0 * h);
  }
  const double denominator = params.step(t);
  if (denominator == 0.0) {
    throw NearSingular("Hahn quotient denominator vanished away from w0");
  }
  return (f(advance(t, params)) - f(t)) / denominator;
}

double hahn_integral(const ScalarFunction& f, double t, const DeformationParams& params,
                     const TruncationPolicy& policy) {
  policy.validate();
  const double prefactor = -params.step(t);
  if (prefactor == 0.0) return 0.0;

  CompensatedSum sum;
  double point = t;
  double weight = 1.0;
  int quiet = 0;
  for (std::size_t k = 0; k < policy.max_terms; ++k) {
    const double term = weight * f(point);
    sum += term;
    quiet = std::abs(term * prefactor) < policy.tol ? quiet + 1 : 0;
    if (quiet == 3) return prefactor * sum.value();
    point = advance(point, params);
    weight *= params.q();
  }
  throw NonConvergent("Hahn integral: max_terms reached");
}

double qw_polynomial(double t, int n, const DeformationParams& params) {
  require_nonnegative(n, "n");
  double product = 1.0;
  for (int j = 1; j <= n; ++j) product *= t - qw_number(j, params);
  return product;
}

double advance(double t, const DeformationParams& params) { return params.q() * t + params.w(); }

double advance_n(double t, int n, const DeformationParams& params) {
  require_nonnegative(n, "N");
  if (n == 0) return t;
  // q^n t + [n]_{q,w} rewritten around the fixed point.
  return params.w0() + std::pow(params.q(), n) * (t - params.w0());
}

double q_number_partial_sum(int n, double q) {
  require_nonnegative(n, "N");
  return (n - q_number(n, q)) / (1.0 - q);
}

double q_weighted_number_partial_sum(int n, double q) {
  require_nonnegative(n, "N");
  if (n == 0) return 0.0;
  return q / (1.0 + q) * q_number(n, q) * q_number(n - 1, q);
}

}  // namespace hahn
