// Pointwise Bochner quantities for Einstein curvature tensors: ⟨ΔR, R⟩ from
// the spectrum of R̊ and the Weyl part, its lower bound f(λ), and the
// classification of a tensor against the two extremal spectral profiles.
#pragma once

#include "cosk/cone.hpp"
#include "cosk/second_kind.hpp"
#include "cosk/tensor.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cosk {

inline constexpr double kEinsteinTol = 1e-8;

/// Everything the Bochner expressions need from one tensor.
struct BochnerTerms {
  int n = 0;
  Spectrumd spectrum;
  std::vector<SymMatrixd> eigen_matrices;  // Sʲ, spectrum order
  CurvatureTensord weyl;
  std::vector<double> sw;  // |SʲW|²
  double weighted_sw = 0;  // Σ λⱼ |SʲW|²
  double sum_sq = 0;       // Σ λⱼ²
  double sum_cube = 0;     // Σ λⱼ³
  double weyl_norm_sq = 0;
  double einstein_defect = 0;
};

BochnerTerms bochner_terms(const CurvatureTensord& r);

/// ⟨ΔR, R⟩ = ⅓[Σλⱼ|SʲW|² - 16N(2N-9n+6)/(3n) λ̄³ + 16(2N-12n+6)/(3n) λ̄Σλⱼ² + 16Σλⱼ³].
/// Throws NotApplicable for non-Einstein input or n < 4.
double delta_r_inner(const CurvatureTensord& r, double einstein_tol = kEinsteinTol);
double delta_r_inner(const BochnerTerms& t);

/// f(λ) = 16[-2Nθλ̄³ + (2θ-1)λ̄Σλⱼ² + Σλⱼ³]
double f_lower(std::span<const double> values, int n, double theta);

/// (16/(3n))[N(N-3)θ - (2N-9n+6)N]λ̄³ + (16/(3n))[(2N-12n+6) - (N-3)θ]λ̄Σλⱼ² + 16Σλⱼ³
double f_lower_unsimplified(std::span<const double> values, int n, double theta);

/// Closed-form ⟨ΔR, R⟩ in dimensions 4 (N = 9) and 5 (N = 14).
double explicit_low_dim(std::span<const double> values, int n);

/// Exact values of (N-3)θ - (2N-9n+6) + 6nθ and (2N-12n+6) - (N-3)θ - (6nθ - 3n)
/// at θ = θ(n); both vanish for n ≥ 8.
std::array<Rational, 2> coefficient_identity_defects(int n);

struct WeightedBoundResult {
  bool checked = false;
  std::string skipped;  // reason when !checked
  double lhs = 0;       // Σ λⱼ |SʲW|²
  double rhs = 0;       // -(16(N-3)/(3n))θλ̄Σλⱼ² + (16N(N-3)/(3n))θλ̄³

  double slack() const { return lhs - rhs; }
};

WeightedBoundResult weighted_bound_check(const CurvatureTensord& r, double theta);
WeightedBoundResult weighted_bound_check(const BochnerTerms& t, double theta);

enum class Verdict { flat, round_sphere_profile, boundary_extremal_profile, inconclusive, not_applicable };

std::string_view to_string(Verdict v);

struct BochnerReport {
  int n = 0;
  double theta = 0;
  double lambda_bar = 0;
  double delta_r_inner = 0;      // authoritative value (closed form for n = 4, 5)
  double delta_r_general = 0;    // general expression, all n ≥ 4
  double f_lower = 0;
  std::optional<double> weighted_sw;  // n ≥ 6 only
  std::optional<double> weighted_bound;
  ConeVerdict cone{ConeStatus::violated, 0};
  double einstein_defect = 0;
};

struct Classification {
  Verdict verdict = Verdict::inconclusive;
  std::string details;
  std::optional<BochnerReport> report;
};

struct ClassifyOptions {
  std::optional<double> theta;  // overrides θ(n) in the cone test and f(λ)
  double einstein_tol = kEinsteinTol;
  double flat_tol = 1e-10;
  double profile_tol = 1e-6;
};

Classification classify_einstein(const CurvatureTensord& r, const ClassifyOptions& opt = {});

}  // namespace cosk
