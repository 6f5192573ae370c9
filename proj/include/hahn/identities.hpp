#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hahn {

/// Outcome of one randomized identity check at one q.
struct IdentityCheck {
  std::string name;
  double q = 0.0;
  std::size_t cases = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;

  bool passed() const { return max_residual < tolerance; }
};

struct IdentitySuiteConfig {
  std::vector<double> q_grid{0.3, 0.5, 0.9};
  std::vector<double> w_grid{0.0, 0.1, 1.0};
  std::uint64_t seed = 1;
  std::optional<double> tolerance_override;
};

/// Names in suite order.
const std::vector<std::string>& identity_names();

/// Runs one named identity at one q across config.w_grid. Throws
/// std::invalid_argument for an unknown name.
IdentityCheck run_identity(const std::string& name, double q, const IdentitySuiteConfig& config);

/// Every identity at every q of the grid, identity-major.
std::vector<IdentityCheck> run_identity_suite(const IdentitySuiteConfig& config);

}  // namespace hahn
