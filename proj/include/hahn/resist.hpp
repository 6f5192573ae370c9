#pragma once

#include "hahn/params.hpp"

namespace hahn {

/// Body of mass m falling through a medium with retarding force k times the
/// deformed average velocity (v(t) + v(qt + w)) / [2]_q, in a field g
/// (downward positive). v0 is the velocity datum at the lattice fixed point w0.
struct DragParams {
  double m = 1.0;
  double k = 1.0;
  double g = 0.0;
  double v0 = 0.0;

  /// Throws std::invalid_argument unless m > 0 and k > 0.
  void validate() const;
};

/// Boundary value substituted for v(q^N t + [N]_{q,w}) by the iterative solvers.
enum class BoundaryDatum {
  constant,  // v0
  tangent,   // v0 + v'(w0) (t_N - w0), with v'(w0) = g - 2 kappa v0 from the equation of motion
};

inline constexpr int kDefaultDragIterations = 120;
inline constexpr int kDefaultGravityDragIterations = 150;

/// k / (m [2]_q).
double kappa(const DragParams& dp, double q);

/// Pure drag (g ignored): v0 e_{q,w}(-kappa t) / e_{q,w}(kappa t).
/// Throws PoleEncountered at poles of either exponential.
double drag_velocity(const DragParams& dp, double t, const DeformationParams& params,
                     const TruncationPolicy& policy);

/// Pure drag by N-fold iteration of
///   (1 - kappa s) v(t) = (1 + kappa s) v(qt + w),   s = (q-1)t + w,
/// i.e. v(t) = (-kappa s; q)_N / (kappa s; q)_N v(t_N). Throws ZeroFactor if a
/// denominator factor vanishes.
double drag_velocity_iterative(const DragParams& dp, double t, const DeformationParams& params,
                               int iterations = kDefaultDragIterations,
                               BoundaryDatum datum = BoundaryDatum::tangent);

/// Gravity plus drag in closed form:
///   v(t) = v0 e_{q,w}(-kappa t) / e_{q,w}(kappa t)
///        + g / (2 kappa) e_{q,w}(-kappa t) [e_{1/q}(kappa (t - w0)) - e_{1/q}(-kappa (t - w0))].
/// Returns drag_velocity exactly when g == 0.
double gravity_drag_velocity(const DragParams& dp, double t, const DeformationParams& params,
                             const TruncationPolicy& policy);

/// Same solution with the inhomogeneous part summed as
///   g / kappa e_{q,w}(-kappa t) sum_n q^{n(2n+1)} / [2n+1]_q! (kappa (t - w0))^{2n+1}.
double gravity_drag_velocity_series(const DragParams& dp, double t,
                                    const DeformationParams& params,
                                    const TruncationPolicy& policy);

/// n-th term q^{n(2n+1)} (kappa (t - w0))^{2n+1} / [2n+1]_q! of the series above.
double gravity_drag_series_term(const DragParams& dp, double t, const DeformationParams& params,
                                int n);

/// Gravity plus drag by N-fold iteration of
///   (1 - kappa s) v(t) = -g s + (1 + kappa s) v(qt + w),
/// i.e. v(t) = (-kappa s; q)_N / (kappa s; q)_N v(t_N)
///            - g s sum_{j<N} q^j (-kappa s; q)_j / (kappa s; q)_{j+1}.
double gravity_drag_velocity_iterative(const DragParams& dp, double t,
                                       const DeformationParams& params,
                                       int iterations = kDefaultGravityDragIterations,
                                       BoundaryDatum datum = BoundaryDatum::tangent);

/// Undeformed solution v0 e^{-kt/m} + (m g / k)(1 - e^{-kt/m}).
double classical_drag_velocity(const DragParams& dp, double t);

/// -x sum_{j=0}^{N-1} q^j (-x; q)_j / (x; q)_{j+1}: the forcing sum of the
/// iteration, scaled so that the inhomogeneous velocity is (g / kappa) times it.
double resummation_direct(double x, double q, int n);

/// The same quantity regrouped by powers of x:
///   -(1 / (x; q)_N) sum_{n <= (N-1)/2} [N choose 2n+1]_q q^{n(2n+1)} x^{2n+1}.
double resummation_binomial(double x, double q, int n);

}  // namespace hahn
