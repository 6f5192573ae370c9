#include "hahn/resist.hpp"

#include <cmath>
#include <stdexcept>

#include "hahn/compensated.hpp"
#include "hahn/core.hpp"
#include "hahn/errors.hpp"
#include "hahn/qexp.hpp"

namespace hahn {
namespace {

constexpr double kZeroFactorThreshold = 1e-13;

void require_factor(double factor) {
  if (std::abs(factor) < kZeroFactorThreshold) {
    throw ZeroFactor("iteration denominator (1 - q^j kappa s) vanished");
  }
}

double boundary_value(const DragParams& dp, double t, const DeformationParams& params,
                      int iterations, BoundaryDatum datum) {
  if (datum == BoundaryDatum::constant) return dp.v0;
  const double slope = dp.g - 2.0 * kappa(dp, params.q()) * dp.v0;
  return dp.v0 + slope * (advance_n(t, iterations, params) - params.w0());
}

// (-x; q)_N / (x; q)_N
double homogeneous_ratio(double x, double q, int iterations) {
  double ratio = 1.0;
  double z = x;
  for (int j = 0; j < iterations; ++j) {
    require_factor(1.0 - z);
    ratio *= (1.0 + z) / (1.0 - z);
    z *= q;
  }
  return ratio;
}

}  // namespace

void DragParams::validate() const {
  if (!(m > 0.0)) throw std::invalid_argument("mass m must be > 0");
  if (!(k > 0.0)) throw std::invalid_argument("drag coefficient k must be > 0");
}

double kappa(const DragParams& dp, double q) {
  dp.validate();
  return dp.k / (dp.m * (1.0 + q));
}

double drag_velocity(const DragParams& dp, double t, const DeformationParams& params,
                     const TruncationPolicy& policy) {
  const double rate = kappa(dp, params.q());
  return dp.v0 * exp_qw(-rate, t, params, policy) / exp_qw(rate, t, params, policy);
}

double drag_velocity_iterative(const DragParams& dp, double t, const DeformationParams& params,
                               int iterations, BoundaryDatum datum) {
  if (iterations < 0) throw std::invalid_argument("iteration count must be >= 0");
  const DragParams pure{dp.m, dp.k, 0.0, dp.v0};
  const double x = kappa(pure, params.q()) * params.step(t);
  return homogeneous_ratio(x, params.q(), iterations) *
         boundary_value(pure, t, params, iterations, datum);
}

double gravity_drag_velocity(const DragParams& dp, double t, const DeformationParams& params,
                             const TruncationPolicy& policy) {
  const double homogeneous = drag_velocity(dp, t, params, policy);
  if (dp.g == 0.0) return homogeneous;
  const double rate = kappa(dp, params.q());
  const double y = rate * (t - params.w0());
  const double odd = exp_qinv_series(y, params.q(), policy) -
                     exp_qinv_series(-y, params.q(), policy);
  return homogeneous + dp.g / (2.0 * rate) * exp_qw(-rate, t, params, policy) * odd;
}

double gravity_drag_velocity_series(const DragParams& dp, double t,
                                    const DeformationParams& params,
                                    const TruncationPolicy& policy) {
  policy.validate();
  const double homogeneous = drag_velocity(dp, t, params, policy);
  if (dp.g == 0.0) return homogeneous;
  const double q = params.q();
  const double rate = kappa(dp, q);
  const double y = rate * (t - params.w0());

  // term_n / term_{n-1} = q^{4n-1} y^2 / ([2n]_q [2n+1]_q)
  CompensatedSum sum;
  double term = y;
  int quiet = 0;
  std::size_t n = 0;
  for (;; ++n) {
    if (n >= policy.max_terms) throw NonConvergent("odd q-series: max_terms reached");
    if (n > 0) {
      const int m = static_cast<int>(n);
      term *= std::pow(q, 4 * m - 1) * y * y / (q_number(2 * m, q) * q_number(2 * m + 1, q));
    }
    sum += term;
    quiet = std::abs(term) < policy.tol ? quiet + 1 : 0;
    if (quiet == 3) break;
  }
  return homogeneous + dp.g / rate * exp_qw(-rate, t, params, policy) * sum.value();
}

double gravity_drag_series_term(const DragParams& dp, double t, const DeformationParams& params,
                                int n) {
  if (n < 0) throw std::invalid_argument("term index must be >= 0");
  const double q = params.q();
  const double y = kappa(dp, q) * (t - params.w0());
  const int order = 2 * n + 1;
  return std::pow(q, static_cast<double>(n) * order) * std::pow(y, order) / q_factorial(order, q);
}

double gravity_drag_velocity_iterative(const DragParams& dp, double t,
                                       const DeformationParams& params, int iterations,
                                       BoundaryDatum datum) {
  if (iterations < 0) throw std::invalid_argument("iteration count must be >= 0");
  const double rate = kappa(dp, params.q());
  const double x = rate * params.step(t);
  const double homogeneous = homogeneous_ratio(x, params.q(), iterations) *
                             boundary_value(dp, t, params, iterations, datum);
  if (dp.g == 0.0) return homogeneous;
  return homogeneous + dp.g / rate * resummation_direct(x, params.q(), iterations);
}

double classical_drag_velocity(const DragParams& dp, double t) {
  dp.validate();
  const double decay = std::exp(-dp.k * t / dp.m);
  return dp.v0 * decay - dp.m * dp.g / dp.k * std::expm1(-dp.k * t / dp.m);
}

double resummation_direct(double x, double q, int n) {
  if (n < 0) throw std::invalid_argument("N must be >= 0");
  CompensatedSum sum;
  double numerator = 1.0;    // (-x; q)_j
  double denominator = 1.0;  // (x; q)_j
  double z = x;              // q^j x
  double weight = 1.0;       // q^j
  for (int j = 0; j < n; ++j) {
    require_factor(1.0 - z);
    denominator *= 1.0 - z;
    sum += weight * numerator / denominator;
    numerator *= 1.0 + z;
    z *= q;
    weight *= q;
  }
  return -x * sum.value();
}

double resummation_binomial(double x, double q, int n) {
  if (n < 0) throw std::invalid_argument("N must be >= 0");
  const double denominator = q_shifted_factorial(x, q, n);
  require_factor(denominator);
  CompensatedSum sum;
  for (int i = 0; 2 * i + 1 <= n; ++i) {
    const int order = 2 * i + 1;
    sum += q_binomial(n, order, q) * std::pow(q, static_cast<double>(i) * order) *
           std::pow(x, order);
  }
  return -sum.value() / denominator;
}

}  // namespace hahn
