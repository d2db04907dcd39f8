// Numerical verification suites for the identities and inequalities of the
// rigidity argument.  Each suite returns a named pass/fail record with the
// worst defect it measured; run_verify bundles them into one report.
#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cosk {

struct CheckResult {
  std::string name;
  int n = 0;  // 0 when the check is not tied to a dimension
  bool passed = false;
  double max_defect = 0;
  int count = 0;  // number of instances examined
  std::string note;
};

/// Per-trial seed derived from (seed, tag, n, trial) by splitmix64 mixing.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t tag, int n, int trial);

/// θ(4) = 1/2, θ(5) = 2/3, θ(8) = 1/20 and the window 0 < θ(n) < 2(n-1)/(n+2) for n in [lo, hi].
CheckResult check_theta_constants(int lo = 8, int hi = 64);

/// Both coefficient identities at θ = θ(n), exactly, for n in [lo, hi].
CheckResult check_coefficient_identities(int lo = 8, int hi = 64);

/// |R|² = |W|² + 2n(n-1)λ̄², Σλⱼ² = ¾|R|² - (n-1)²λ̄², |W|² = (4/3)Σλⱼ² - (4N/3)λ̄²
/// on random Einstein tensors; worst relative defect.
CheckResult check_einstein_norms(int n, int trials, std::uint64_t seed, double tol = 1e-9);

/// Σⱼ|SʲW|² = (2(n²+n-8)/n)|W|² (canonical basis and an R̊ eigenbasis) and
/// maxⱼ|SʲW|² ≤ ((8n-16)/n)|W|² on random Weyl tensors.
CheckResult check_s_action_norms(int n, int trials, std::uint64_t seed, double tol = 1e-9);

/// Inequality Σλⱼ|SʲW|² ≥ rhs on near-sphere tensors satisfying the cone
/// condition, for each ε in `epsilons`; also 3⟨ΔR,R⟩ ≥ f(λ).
CheckResult check_weighted_inequality(int n, const std::vector<double>& epsilons, int trials, std::uint64_t seed,
                          double tol = 1e-8);

/// ⟨ΔR, R⟩ ≥ -tol for every generated cone-satisfying Einstein tensor.
CheckResult check_chain_soundness(int n, int trials, std::uint64_t seed, double tol = 1e-8);

/// Enumeration minimum, minimizer profiles, and the descent oracle.
CheckResult check_extremal_minimum(int n, int restarts, int grid, std::uint64_t seed);

/// F(Q_m) > 0, the boundary orderings on the a-grid, closed-form/direct
/// agreement, and the infeasible-family errors.
CheckResult check_closed_form_chain(int n, int grid);

/// 2·explicit_low_dim = f(λ) at θ(n) on random spectra with λ̄ > 0, n ∈ {4, 5}.
CheckResult check_low_dim_identity(int n, int samples, std::uint64_t seed, double tol = 1e-9);

/// Largest |general expression - closed form| for ⟨ΔR,R⟩ in n ∈ {4, 5} over
/// near-sphere tensors.  A measurement, not an assertion.
double low_dim_discrepancy(int n, int trials, std::uint64_t seed);

struct VerifyConfig {
  std::vector<int> dims{4, 5, 8, 9, 10};
  int trials = 100;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  int restarts = 200;
  int grid = 2001;
};

struct VerifyReport {
  VerifyConfig config;
  std::vector<CheckResult> checks;
  std::vector<std::pair<int, double>> low_dim_discrepancy;  // (n, measured)

  bool all_passed() const;
  std::optional<std::string> first_failure() const;
};

VerifyReport run_verify(const VerifyConfig& config);

nlohmann::json to_json(const CheckResult& c);
nlohmann::json to_json(const VerifyReport& r);

}  // namespace cosk
