#include "hahn/identities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

#include "hahn/compensated.hpp"
#include "hahn/core.hpp"
#include "hahn/qexp.hpp"
#include "hahn/resist.hpp"

namespace hahn {
namespace {

constexpr std::size_t kOperatorCases = 200;
constexpr std::size_t kIntegralCases = 50;
constexpr std::size_t kResummationCases = 100;
constexpr int kMaxSumIndex = 50;

struct Polynomial {
  std::vector<double> coefficients;  // ascending powers

  double operator()(double t) const {
    double value = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) value = value * t + *it;
    return value;
  }
};

class CaseSampler {
 public:
  CaseSampler(std::uint64_t seed, const std::string& name, double q) {
    // std::hash is stable within one build, which is all reproducibility needs here.
    const auto tag = static_cast<std::uint32_t>(std::hash<std::string>{}(name));
    const auto q_bits = static_cast<std::uint32_t>(std::llround(q * 1e6));
    std::seed_seq sequence{static_cast<std::uint32_t>(seed),
                           static_cast<std::uint32_t>(seed >> 32), tag, q_bits};
    engine_.seed(sequence);
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

  Polynomial polynomial(int max_degree) {
    Polynomial p;
    p.coefficients.resize(static_cast<std::size_t>(integer(0, max_degree)) + 1);
    for (double& c : p.coefficients) c = uniform(-1.0, 1.0);
    return p;
  }

  // A time in [-2, 2] at least 0.1 away from the fixed point.
  double time(const DeformationParams& params) {
    for (;;) {
      const double t = uniform(-2.0, 2.0);
      if (std::abs(t - params.w0()) >= 0.1) return t;
    }
  }

 private:
  std::mt19937_64 engine_;
};

struct Accumulator {
  std::size_t cases = 0;
  double max_residual = 0.0;

  void add(double residual) {
    ++cases;
    // NaN must register as a failure.
    if (!(residual <= max_residual)) max_residual = std::isnan(residual) ? INFINITY : residual;
  }
};

using Check = std::function<void(double q, const IdentitySuiteConfig&, Accumulator&)>;

void check_leibniz(double q, const IdentitySuiteConfig& config, Accumulator& acc) {
  CaseSampler sampler(config.seed, "leibniz_rule", q);
  for (double w : config.w_grid) {
    const DeformationParams params(q, w);
    for (std::size_t i = 0; i < kOperatorCases; ++i) {
      const Polynomial f = sampler.polynomial(4);
      const Polynomial g = sampler.polynomial(4);
      const double t = sampler.time(params);
      const double lhs = hahn_derivative([&](double s) { return f(s) * g(s); }, t, params);
      const double rhs = hahn_derivative(f, t, params) * g(t) +
                         f(advance(t, params)) * hahn_derivative(g, t, params);
      acc.add(std::abs(lhs - rhs));
    }
  }
}

void check_quotient(double q, const IdentitySuiteConfig& config, Accumulator& acc) {
  CaseSampler sampler(config.seed, "quotient_rule", q);
  for (double w : config.w_grid) {
    const DeformationParams params(q, w);
    for (std::size_t i = 0; i < kOperatorCases;) {
      const Polynomial f = sampler.polynomial(4);
      const Polynomial g = sampler.polynomial(4);
      const double t = sampler.time(params);
      const double shifted = advance(t, params);
      if (std::min(std::abs(g(t)), std::abs(g(shifted))) < 0.5) continue;
      const double lhs = hahn_derivative([&](double s) { return f(s) / g(s); }, t, params);
      const double rhs = (hahn_derivative(f, t, params) * g(t) - f(t) * hahn_derivative(g, t, params)) /
                         (g(t) * g(shifted));
      acc.add(std::abs(lhs - rhs));
      ++i;
    }
  }
}

void check_power_rule(double q, const IdentitySuiteConfig& config, Accumulator& acc) {
  CaseSampler sampler(config.seed, "power_rule", q);
  for (double w : config.w_grid) {
    const DeformationParams params(q, w);
    for (std::size_t i = 0; i < kOperatorCases; ++i) {
      const int n = sampler.integer(0, 8);
      const double t = sampler.time(params);
      const double lhs = hahn_derivative([n](double s) { return std::pow(s, n); }, t, params);
      CompensatedSum rhs;
      for (int k = 0; k < n; ++k) rhs += std::pow(advance(t, params), k) * std::pow(t, n - k - 1);
      acc.add(std::abs(lhs - rhs.value()));
    }
  }
}

void check_shifted_power_rule(double q, const IdentitySuiteConfig& config, Accumulator& acc) {
  CaseSampler sampler(config.seed, "shifted_power_rule", q);
  for (double w : config.w_grid) {
    const DeformationParams params(q, w);
    for (std::size_t i = 0; i < kOperatorCases; ++i) {
      const double a = sampler.uniform(-1.0, 1.0);
      const double b = sampler.uniform(-1.0, 1.0);
      const int n = sampler.integer(1, 6);
      const double t = sampler.time(params);
      const double lhs = hahn_derivative([&](double s) { return std::pow(a * s + b, n); }, t, params);
      CompensatedSum sum;
      for (int k = 0; k < n; ++k) {
        sum += std::pow(a * advance(t, params) + b, k) * std::pow(a * t + b, n - k - 1);
      }
      acc.add(std::abs(lhs - a * sum.value()));
    }
  }
}

void check_polynomial_derivative(double q, const IdentitySuiteConfig& config, Accumulator& acc) {
  CaseSampler sampler(config.seed, "qw_polynomial_derivative", q);
  for (double w : config.w_grid) {
    const DeformationParams params(q, w);
    for (std::size_t i = 0; i < kOperatorCases; ++i) {
      const int n = sampler.integer(1, 6);
      const double t = sampler.time(params);
      const double lhs =
          hahn_derivative([&](double s) { return qw_polynomial(s, n, params); }, t, params);
      const double rhs = q_number(n, q) * qw_polynomial(t, n - 1, params);
      acc.add(std::abs(lhs - rhs));
    }
  }
}

void check_sum_linear(double q, const IdentitySuiteConfig&, Accumulator& acc) {
  CompensatedSum direct;
  for (int n = 1; n <= kMaxSumIndex; ++n) {
    direct += q_number(n - 1, q);
    acc.add(std::abs(direct.value() - q_number_partial_sum(n, q)));
  }
}

void check_sum_weighted(double q, const IdentitySuiteConfig&, Accumulator& acc) {
  CompensatedSum direct;
  for (int n = 1; n <= kMaxSumIndex; ++n) {
    direct += std::pow(q, n - 1) * q_number(n - 1, q);
    acc.add(std::abs(direct.value() - q_weighted_number_partial_sum(n, q)));
  }
}

void check_fundamental_theorem(double q, const IdentitySuiteConfig& config, Accumulator& acc) {
  CaseSampler sampler(config.seed, "fundamental_theorem", q);
  const TruncationPolicy policy;
  for (double w : config.w_grid) {
    const DeformationParams params(q, w);
    for (std::size_t i = 0; i < kIntegralCases; ++i) {
      const Polynomial f = sampler.polynomial(5);
      const double t = sampler.time(params);
      const double lhs = hahn_derivative(
          [&](double s) { return hahn_integral(f, s, params, policy); }, t, params);
      acc.add(std::abs(lhs - f(t)));
    }
  }
}

// w = 1 would put t = 0 on a pole of e_{q,w}(-t), so this check has its own grid.
void check_exp_eigen(double q, const IdentitySuiteConfig&, Accumulator& acc) {
  const TruncationPolicy policy;
  for (double w : {0.0, 0.1, 0.5}) {
    const DeformationParams params(q, w);
    for (double a : {-1.0, 0.7, 1.5}) {
      for (double t : {0.0, 0.5, 2.0}) {
        const auto e = [&](double s) { return exp_qw(a, s, params, policy); };
        acc.add(std::abs(hahn_derivative(e, t, params) - a * e(t)));
      }
    }
  }
}

void check_odd_part(double q, const IdentitySuiteConfig&, Accumulator& acc) {
  const TruncationPolicy policy;
  for (double a : {0.25, 0.5, 1.0, 2.0}) {
    const OddPart sides = odd_part_qinv(a, q, policy);
    acc.add(std::abs(sides.lhs - sides.rhs));
  }
}

void check_resummation(double q, const IdentitySuiteConfig& config, Accumulator& acc) {
  CaseSampler sampler(config.seed, "resummation", q);
  for (std::size_t i = 0; i < kResummationCases; ++i) {
    const int n = sampler.integer(1, 25);
    const double x = sampler.uniform(-0.5, 0.5);
    acc.add(std::abs(resummation_direct(x, q, n) - resummation_binomial(x, q, n)));
  }
}

struct Entry {
  std::string name;
  double tolerance;
  Check check;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {"leibniz_rule", 1e-10, check_leibniz},
      {"quotient_rule", 1e-10, check_quotient},
      {"power_rule", 1e-10, check_power_rule},
      {"shifted_power_rule", 1e-10, check_shifted_power_rule},
      {"qw_polynomial_derivative", 1e-10, check_polynomial_derivative},
      {"sum_identity_linear", 1e-12, check_sum_linear},
      {"sum_identity_weighted", 1e-12, check_sum_weighted},
      {"fundamental_theorem", 1e-8, check_fundamental_theorem},
      {"exp_qw_eigenfunction", 1e-9, check_exp_eigen},
      {"odd_part_qinv", 1e-12, check_odd_part},
      {"resummation", 1e-10, check_resummation},
  };
  return entries;
}

}  // namespace

const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const Entry& e : registry()) out.push_back(e.name);
    return out;
  }();
  return names;
}

IdentityCheck run_identity(const std::string& name, double q, const IdentitySuiteConfig& config) {
  const auto& entries = registry();
  const auto it = std::find_if(entries.begin(), entries.end(),
                               [&](const Entry& e) { return e.name == name; });
  if (it == entries.end()) throw std::invalid_argument("unknown identity: " + name);

  Accumulator acc;
  it->check(q, config, acc);
  IdentityCheck result;
  result.name = name;
  result.q = q;
  result.cases = acc.cases;
  result.max_residual = acc.max_residual;
  result.tolerance = config.tolerance_override.value_or(it->tolerance);
  return result;
}

std::vector<IdentityCheck> run_identity_suite(const IdentitySuiteConfig& config) {
  std::vector<IdentityCheck> results;
  for (const std::string& name : identity_names()) {
    for (double q : config.q_grid) results.push_back(run_identity(name, q, config));
  }
  return results;
}

}  // namespace hahn
