#include "hahn/qexp.hpp"

#include <cmath>
#include <string>

#include "hahn/compensated.hpp"
#include "hahn/core.hpp"
#include "hahn/errors.hpp"

namespace hahn {
namespace {

constexpr double kPoleThreshold = 1e-13;
constexpr double kRadiusMargin = 1e-9;

// Sums terms produced by next(n, previous) starting from term_0 = 1 until three
// consecutive terms fall below policy.tol.
template <typename NextTerm>
double sum_series(const TruncationPolicy& policy, NextTerm next, const char* name) {
  CompensatedSum sum;
  double term = 1.0;
  int quiet = 0;
  for (std::size_t n = 0; n < policy.max_terms; ++n) {
    if (n > 0) term = next(static_cast<int>(n), term);
    sum += term;
    quiet = std::abs(term) < policy.tol ? quiet + 1 : 0;
    if (quiet == 3) return sum.value();
  }
  throw NonConvergent(std::string(name) + ": max_terms reached");
}

}  // namespace

double exp_qw(double a, double t, const DeformationParams& params, const TruncationPolicy& policy) {
  const double argument = -a * params.step(t);
  const InfiniteProduct product = q_shifted_factorial_inf(argument, params.q(), policy);
  if (product.zero_factor || product.min_abs_factor < kPoleThreshold) {
    throw PoleEncountered("e_{q,w}(" + std::to_string(a) + " t) has a pole at t = " +
                          std::to_string(t));
  }
  return 1.0 / product.value;
}

double exp_q_series(double x, double q, const TruncationPolicy& policy) {
  policy.validate();
  if (std::abs(x) * (1.0 - q) >= 1.0 - kRadiusMargin) {
    throw OutOfRadius("e_q(x) diverges for |x| >= 1/(1-q)");
  }
  return sum_series(
      policy, [&](int n, double previous) { return previous * x / q_number(n, q); }, "e_q");
}

double exp_qinv_series(double x, double q, const TruncationPolicy& policy) {
  policy.validate();
  // term_n / term_{n-1} = q^{n-1} x / [n]_q
  double q_power = 1.0;
  return sum_series(
      policy,
      [&](int n, double previous) {
        const double ratio = q_power * x / q_number(n, q);
        q_power *= q;
        return previous * ratio;
      },
      "e_{1/q}");
}

OddPart odd_part_qinv(double a, double q, const TruncationPolicy& policy) {
  policy.validate();
  OddPart result;
  result.lhs = exp_qinv_series(a, q, policy) - exp_qinv_series(-a, q, policy);

  CompensatedSum sum;
  int quiet = 0;
  for (std::size_t n = 0;; ++n) {
    if (n >= policy.max_terms) throw NonConvergent("odd part of e_{1/q}: max_terms reached");
    const int order = 2 * static_cast<int>(n) + 1;
    const double term = std::pow(a, order) / q_inv_factorial(order, q);
    sum += term;
    quiet = std::abs(term) < policy.tol ? quiet + 1 : 0;
    if (quiet == 3) break;
  }
  result.rhs = 2.0 * sum.value();
  return result;
}

}  // namespace hahn
