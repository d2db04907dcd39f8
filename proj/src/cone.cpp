#include "cosk/cone.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace cosk {

bool theta_defined(int n) { return n == 4 || n == 5 || n >= 8; }

Rational theta_of_n(int n) {
  if (!theta_defined(n)) {
    throw NotApplicable("theta(n) is not defined for n = " + std::to_string(n) +
                        " (requires n = 4, 5 or n >= 8)");
  }
  if (n == 4) return Rational(1, 2);
  if (n == 5) return Rational(2, 3);
  const std::int64_t big_n = traceless_dim(n);
  return Rational(2 * big_n - 9 * std::int64_t{n} + 6, big_n + 6 * std::int64_t{n} - 3);
}

bool theta_window_holds(int n) {
  const Rational theta = theta_of_n(n);
  return theta > Rational(0) && theta < Rational(2 * (n - 1), n + 2);
}

ConeParams::ConeParams(double alpha_, double theta_) : alpha(alpha_), theta(theta_) {
  if (!(alpha >= 1.0)) throw std::invalid_argument("cone: alpha must be >= 1");
  if (!(theta > -1.0)) throw std::invalid_argument("cone: theta must be > -1");
}

ConeParams ConeParams::for_dimension(int n) { return ConeParams(2.0, to_double(theta_of_n(n))); }

double partial_sum(std::span<const double> v, double alpha) {
  const auto size = static_cast<double>(v.size());
  if (!(alpha >= 1.0) || !(alpha < size)) {
    throw std::invalid_argument("partial_sum: alpha must lie in [1, N)");
  }
  const double whole = std::floor(alpha);
  const auto m = static_cast<std::size_t>(whole);
  const double head = std::accumulate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m), 0.0);
  return head + (alpha - whole) * v[m];
}

double partial_sum(const Spectrumd& s, double alpha) {
  return partial_sum(std::span<const double>(s.values.data(), static_cast<std::size_t>(s.size())), alpha);
}

std::string_view to_string(ConeStatus s) {
  switch (s) {
    case ConeStatus::strict: return "strict";
    case ConeStatus::boundary: return "boundary";
    case ConeStatus::violated: return "violated";
  }
  return "unknown";
}

ConeVerdict cone_membership(std::span<const double> v, const ConeParams& params, double tol) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  const double margin = partial_sum(v, params.alpha) / params.alpha + params.theta * mean;
  ConeStatus status = ConeStatus::boundary;
  if (margin > tol) status = ConeStatus::strict;
  else if (margin < -tol) status = ConeStatus::violated;
  return {status, margin};
}

ConeVerdict cone_membership(const Spectrumd& s, const ConeParams& params, double tol) {
  return cone_membership(std::span<const double>(s.values.data(), static_cast<std::size_t>(s.size())), params,
                         tol);
}

}  // namespace cosk
