#pragma once

#include <cstddef>

#include "hahn/params.hpp"

namespace hahn {

/// Initial data at t = 0: position, velocity and the constant acceleration.
struct KinematicState {
  double x0 = 0.0;
  double v0 = 0.0;
  double a = 0.0;
};

/// Result of a telescoping solve anchored at the lattice fixed point.
struct IterationReport {
  double value = 0.0;
  std::size_t steps = 0;
  double residual = 0.0;  // |t_steps - w0| = q^steps |t - w0|
};

/// x0 + v0 t; solves D_t x = v0 with x(0) = x0.
double uniform_velocity_position(const KinematicState& state, double t);

/// v0 + a t; solves D_t v = a with v(0) = v0.
double uniform_accel_velocity(const KinematicState& state, double t);

/// Exact solution of D_t x = v0 + a t with x(0) = x0:
///
///   x(t) = x0 + v0 t + a t (t - w) / [2]_q.
///
/// At w = 0 this is the deformed Galilei parabola x0 + v0 t + a t^2 / [2]_q.
/// For w > 0 the extra -a w t / [2]_q term is required for D_t x = v0 + a t;
/// the plain parabola misses it by a w / [2]_q.
double uniform_accel_position(const KinematicState& state, double t,
                              const DeformationParams& params);

/// x(w0) of the solution above, x0 + v0 w0 + a q w0^2 / [2]_q. This is the
/// boundary datum the fixed-point solvers need when only x(0) is known.
double uniform_accel_position_at_w0(const KinematicState& state, const DeformationParams& params);

/// Solves x(qt + w) - x(t) = ((q - 1)t + w) rhs(t) for x(t) given x(w0):
///
///   x(t) = x(w0) - sum_{k>=0} [x(t_{k+1}) - x(t_k)],   t_k = q^k t + [k]_{q,w}.
///
/// Increments are accumulated in ascending k with compensated summation until
/// three consecutive increments fall below policy.tol. Throws NonConvergent
/// if policy.max_terms is reached first.
IterationReport iterate_first_order(const ScalarFunction& rhs, double t,
                                    const DeformationParams& params, double x_at_w0,
                                    const TruncationPolicy& policy);

/// Solves D_t^2 x = a with x(0) = x0, D_t x(0) = v0 through the second-order
/// difference equation
///
///   x(q^2 t + [2]_q w) - [2]_q x(qt + w) + q x(t) = q a ((q-1)t + w)^2.
///
/// Stage 1 solves h(qt + w) - h(t) = q a ((q-1)t + w)^2 for the shifted
/// variable h(t) = x(qt + w) - q x(t) by telescoping toward w0. Stage 2 solves
/// x(qt + w) - q x(t) = h(t): writing x(t) = x(w0) + (t - w0) p(t) and using
/// h(w0) = (1 - q) x(w0) gives the first-order telescoping equation
///
///   p(qt + w) - p(t) = (h(t) - h(w0)) / (q (t - w0)),
///
/// whose free constant p(w0) is the homogeneous C (t - w0) mode; it is fixed by
/// D_t x(0) = v0, and x(w0) by x(0) = x0. Nothing here uses the closed form.
double solve_second_order_constant_accel(const KinematicState& state, double t,
                                         const DeformationParams& params,
                                         const TruncationPolicy& policy);

}  // namespace hahn
