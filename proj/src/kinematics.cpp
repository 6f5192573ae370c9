#include "hahn/kinematics.hpp"

#include <algorithm>
#include <cmath>

#include "hahn/compensated.hpp"
#include "hahn/core.hpp"
#include "hahn/errors.hpp"

namespace hahn {

double uniform_velocity_position(const KinematicState& state, double t) {
  return state.x0 + state.v0 * t;
}

double uniform_accel_velocity(const KinematicState& state, double t) {
  return state.v0 + state.a * t;
}

double uniform_accel_position(const KinematicState& state, double t,
                              const DeformationParams& params) {
  return state.x0 + state.v0 * t + state.a * t * (t - params.w()) / (1.0 + params.q());
}

double uniform_accel_position_at_w0(const KinematicState& state, const DeformationParams& params) {
  const double w0 = params.w0();
  return state.x0 + state.v0 * w0 + state.a * params.q() * w0 * w0 / (1.0 + params.q());
}

IterationReport iterate_first_order(const ScalarFunction& rhs, double t,
                                    const DeformationParams& params, double x_at_w0,
                                    const TruncationPolicy& policy) {
  policy.validate();
  CompensatedSum increments;
  // Track the gap to w0 rather than iterating qt + w: the rounded map stalls
  // an ulp away from w0 and would keep contributing a constant spurious step.
  const double w0 = params.w0();
  double gap = t - w0;
  int quiet = 0;
  for (std::size_t k = 0; k < policy.max_terms; ++k) {
    const double step = (params.q() - 1.0) * gap;
    // At w0 itself the increment is exactly zero; rhs may not be defined there.
    const double increment = step == 0.0 ? 0.0 : step * rhs(w0 + gap);
    increments += increment;
    gap *= params.q();
    quiet = std::abs(increment) < policy.tol ? quiet + 1 : 0;
    if (quiet == 3) {
      IterationReport report;
      report.value = x_at_w0 - increments.value();
      report.steps = k + 1;
      report.residual = std::abs(gap);
      return report;
    }
  }
  throw NonConvergent("first-order telescoping sum: max_terms reached");
}

double solve_second_order_constant_accel(const KinematicState& state, double t,
                                         const DeformationParams& params,
                                         const TruncationPolicy& policy) {
  policy.validate();
  const double q = params.q();
  const double w = params.w();
  const double w0 = params.w0();

  // Stage 1: h(tau) - h(w0), from h(qt + w) - h(t) = q a ((q-1)t + w)^2.
  // The result is later divided by (tau - w0), so the tolerance shrinks with it.
  auto shifted_h = [&](double tau) {
    TruncationPolicy inner = policy;
    inner.tol = policy.tol * std::min(1.0, std::abs(tau - w0));
    const auto forcing = [&](double s) { return q * state.a * params.step(s); };
    return iterate_first_order(forcing, tau, params, 0.0, inner).value;
  };

  // Stage 2: p(tau) - p(w0) where x(tau) = x(w0) + (tau - w0) p(tau).
  // Increment p(tau_{k+1}) - p(tau_k) = (h(tau_k) - h(w0)) / (q (tau_k - w0)).
  auto p_offset = [&](double tau) {
    const auto forcing = [&](double s) {
      const double gap = s - w0;
      return shifted_h(s) / (q * gap * params.step(s));
    };
    return iterate_first_order(forcing, tau, params, 0.0, policy).value;
  };

  const double offset_at_zero = p_offset(0.0);
  double slope_at_w0 = state.v0;  // w = 0: D_t x(0) = x'(0) = p(0)
  if (w > 0.0) {
    // D_t x(0) = (x(w) - x(0)) / w = C + ((w - w0) P(w) + w0 P(0)) / w
    slope_at_w0 -= ((w - w0) * p_offset(w) + w0 * offset_at_zero) / w;
  }
  const double x_at_w0 = state.x0 + w0 * (slope_at_w0 + offset_at_zero);
  if (t == w0) return x_at_w0;
  return x_at_w0 + (t - w0) * (slope_at_w0 + p_offset(t));
}

}  // namespace hahn
