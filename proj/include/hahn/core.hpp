#pragma once

#include <cstddef>

#include "hahn/params.hpp"

namespace hahn {

/// Jackson q-number [k]_q = (1 - q^k) / (1 - q) = 1 + q + ... + q^{k-1}.
double q_number(int k, double q);

/// Hahn (q,w)-number [k]_{q,w} = w [k]_q. Increases to w0 as k grows.
double qw_number(int k, const DeformationParams& params);

/// [n]_q! = [n]_q [n-1]_q ... [1]_q, with [0]_q! = 1.
double q_factorial(int n, double q);

/// [n]_{1/q}! evaluated as q^{-n(n-1)/2} [n]_q!. Throws Overflow when the
/// result is not representable.
double q_inv_factorial(int n, double q);

/// Finite q-shifted factorial (a; q)_N = (1 - a)(1 - q a)...(1 - q^{N-1} a).
double q_shifted_factorial(double a, double q, int n);

/// Gaussian binomial coefficient [n choose k]_q = (q;q)_n / ((q;q)_k (q;q)_{n-k}).
double q_binomial(int n, int k, double q);

struct InfiniteProduct {
  double value = 1.0;
  std::size_t terms = 0;           // explicit factors plus tail-series terms
  double min_abs_factor = 1.0;     // smallest |1 - q^k a| among explicit factors
  bool zero_factor = false;        // a factor vanished within policy.tol; value is 0
};

/// (a; q)_inf. Factors are multiplied explicitly while |q^k a| > 1/4; the
/// remaining tail prod_{j>=k} (1 - q^j a) is closed with
/// log(tail) = -sum_{r>=1} (q^k a)^r / (r (1 - q^r)), summed until a term drops
/// below policy.tol. Throws NonConvergent when policy.max_terms is exhausted.
InfiniteProduct q_shifted_factorial_inf(double a, double q, const TruncationPolicy& policy);

/// Hahn difference operator (f(qt + w) - f(t)) / ((q - 1)t + w).
///
/// Within |t - w0| <= 1e-12 (1 + |w0|) the quotient degenerates and the
/// ordinary derivative at t is estimated by a central difference with step
/// h = 1e-6 (1 + |w0|).
double hahn_derivative(const ScalarFunction& f, double t, const DeformationParams& params);

/// Hahn integral from w0 to t:
///   ((1 - q)t - w) sum_{k>=0} q^k f(q^k t + [k]_{q,w}).
/// Stops after three consecutive terms with |q^k f| |(1-q)t - w| < policy.tol.
double hahn_integral(const ScalarFunction& f, double t, const DeformationParams& params,
                     const TruncationPolicy& policy);

/// (t; q, w)_n = prod_{j=1}^n (t - [j]_{q,w}).
double qw_polynomial(double t, int n, const DeformationParams& params);

/// One step of the Hahn lattice, q t + w.
double advance(double t, const DeformationParams& params);

/// n steps of the lattice in closed form, q^n t + [n]_{q,w}.
double advance_n(double t, int n, const DeformationParams& params);

/// sum_{k=0}^{N-1} [k]_q in closed form, (N - [N]_q) / (1 - q).
double q_number_partial_sum(int n, double q);

/// sum_{k=0}^{N-1} q^k [k]_q in closed form, q/(1+q) [N]_q [N-1]_q.
double q_weighted_number_partial_sum(int n, double q);

}  // namespace hahn
