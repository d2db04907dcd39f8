// The cone condition C(α, θ) on the spectrum of R̊ and the rigidity constants θ(n).
#pragma once

#include "cosk/second_kind.hpp"

#include <boost/rational.hpp>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>

namespace cosk {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& q) { return boost::rational_cast<double>(q); }

/// The rigidity statement does not cover this dimension.
class NotApplicable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// θ(4) = 1/2, θ(5) = 2/3 and θ(n) = (2N - 9n + 6)/(N + 6n - 3) for n ≥ 8.
/// Throws NotApplicable for n < 4 and n ∈ {6, 7}.
Rational theta_of_n(int n);

/// True when θ(n) is defined for n.
bool theta_defined(int n);

/// 0 < θ(n) < 2(n-1)/(n+2), evaluated exactly.
bool theta_window_holds(int n);

struct ConeParams {
  double alpha;
  double theta;

  /// Requires alpha ≥ 1 and theta > -1; the upper bound alpha < N is checked
  /// against the spectrum it is applied to.
  ConeParams(double alpha, double theta);

  /// (2, θ(n))
  static ConeParams for_dimension(int n);
};

/// λ₁ + … + λ_α := Σ_{i ≤ ⌊α⌋} λᵢ + (α - ⌊α⌋) λ_{⌊α⌋+1} over ascending values.
double partial_sum(std::span<const double> sorted_values, double alpha);
double partial_sum(const Spectrumd& s, double alpha);

enum class ConeStatus { strict, boundary, violated };

std::string_view to_string(ConeStatus s);

struct ConeVerdict {
  ConeStatus status;
  double margin;  // α⁻¹(λ₁ + … + λ_α) + θλ̄
};

inline constexpr double kConeTol = 1e-12;

ConeVerdict cone_membership(std::span<const double> sorted_values, const ConeParams& params,
                            double tol = kConeTol);
ConeVerdict cone_membership(const Spectrumd& s, const ConeParams& params, double tol = kConeTol);

}  // namespace cosk
