#pragma once

#include <cstddef>
#include <functional>

namespace hahn {

/// Deformation pair (q, w) of the Hahn operator together with the fixed point
/// w0 = w / (1 - q) of the lattice map t -> q t + w.
///
/// Construction validates 0 < q < 1 and w >= 0 (w = 0 is the Jackson case)
/// and throws std::invalid_argument otherwise. Instances are immutable.
class DeformationParams {
 public:
  DeformationParams(double q, double w);

  double q() const { return q_; }
  double w() const { return w_; }
  double w0() const { return w0_; }

  /// (q - 1) t + w, the Hahn difference-quotient denominator. Vanishes only at w0.
  double step(double t) const { return (q_ - 1.0) * t + w_; }

 private:
  double q_;
  double w_;
  double w0_;
};

/// Stopping contract shared by every infinite series and product.
struct TruncationPolicy {
  double tol = 1e-14;
  std::size_t max_terms = 10000;

  /// Throws std::invalid_argument unless tol > 0 and max_terms > 0.
  void validate() const;
};

using ScalarFunction = std::function<double(double)>;

}  // namespace hahn
