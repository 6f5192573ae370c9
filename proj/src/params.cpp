#include "hahn/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hahn {

DeformationParams::DeformationParams(double q, double w) : q_(q), w_(w), w0_(0.0) {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::invalid_argument("q must lie in (0, 1), got " + std::to_string(q));
  }
  if (!(w >= 0.0) || !std::isfinite(w)) {
    throw std::invalid_argument("w must be finite and >= 0, got " + std::to_string(w));
  }
  w0_ = w / (1.0 - q);
}

void TruncationPolicy::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("truncation tol must be > 0");
  if (max_terms == 0) throw std::invalid_argument("truncation max_terms must be > 0");
}

}  // namespace hahn
