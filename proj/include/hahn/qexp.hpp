#pragma once

#include "hahn/params.hpp"

namespace hahn {

/// (q,w)-exponential e_{q,w}(a t) = 1 / (-a((q-1)t + w); q)_inf.
///
/// Satisfies D_t e_{q,w}(a t) = a e_{q,w}(a t) and equals 1 at t = w0.
/// Throws PoleEncountered when a product factor has magnitude below 1e-13.
double exp_qw(double a, double t, const DeformationParams& params, const TruncationPolicy& policy);

/// e_q(x) = sum_n x^n / [n]_q!, convergent for |x| < 1/(1-q). Arguments with
/// |x|(1-q) >= 1 - 1e-9 throw OutOfRadius.
double exp_q_series(double x, double q, const TruncationPolicy& policy);

/// e_{1/q}(x) = sum_n q^{n(n-1)/2} x^n / [n]_q!. Entire in x.
double exp_qinv_series(double x, double q, const TruncationPolicy& policy);

struct OddPart {
  double lhs = 0.0;  // e_{1/q}(a) - e_{1/q}(-a)
  double rhs = 0.0;  // 2 sum_n a^{2n+1} / [2n+1]_{1/q}!
};

/// Both sides of the parity decomposition of e_{1/q}, each summed along its own path.
OddPart odd_part_qinv(double a, double q, const TruncationPolicy& policy);

}  // namespace hahn
