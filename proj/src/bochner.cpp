#include "cosk/bochner.hpp"

#include "cosk/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cosk {
namespace {

struct Moments {
  double mean = 0;
  double sum_sq = 0;
  double sum_cube = 0;
};

Moments moments(std::span<const double> v) {
  Moments m;
  for (double x : v) {
    m.mean += x;
    m.sum_sq += x * x;
    m.sum_cube += x * x * x;
  }
  m.mean /= static_cast<double>(v.size());
  return m;
}

std::span<const double> values_of(const Spectrumd& s) {
  return {s.values.data(), static_cast<std::size_t>(s.size())};
}

void check_length(std::span<const double> v, int n, const char* who) {
  if (static_cast<int>(v.size()) != traceless_dim(n)) {
    throw std::invalid_argument(std::string(who) + ": spectrum length " + std::to_string(v.size()) +
                                " does not match N = " + std::to_string(traceless_dim(n)));
  }
}

double weighted_sw_bound(int n, double theta, double lb, double sum_sq) {
  const double nn = n;
  const double big_n = traceless_dim(n);
  return -16.0 * (big_n - 3) / (3 * nn) * theta * lb * sum_sq + 16.0 * big_n * (big_n - 3) / (3 * nn) * theta * lb * lb * lb;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

BochnerTerms bochner_terms(const CurvatureTensord& r) {
  BochnerTerms t;
  t.n = r.dim();
  t.einstein_defect = einstein_defect(r);
  const SecondKindOperator<double> op = build_second_kind(r);
  t.spectrum = spectrum(op);
  t.eigen_matrices = eigen_matrices(op, t.spectrum);
  t.weyl = weyl_decompose(r).weyl;
  t.weyl_norm_sq = tensor_norm_sq(t.weyl);
  // The Weyl part of a tensor is trace-free up to rounding proportional to its size.
  const double trace_tol = kDefaultTol * std::max(1.0, t.spectrum.values.cwiseAbs().maxCoeff());
  t.sw = sw_norms(t.eigen_matrices, t.weyl, trace_tol);
  const Moments m = moments(values_of(t.spectrum));
  t.sum_sq = m.sum_sq;
  t.sum_cube = m.sum_cube;
  for (int j = 0; j < t.spectrum.size(); ++j) t.weighted_sw += t.spectrum.values(j) * t.sw[j];
  return t;
}

double delta_r_inner(const BochnerTerms& t) {
  const double n = t.n;
  const double big_n = traceless_dim(t.n);
  const double lb = t.spectrum.lambda_bar;
  const double three = t.weighted_sw - 16.0 * big_n * (2 * big_n - 9 * n + 6) / (3 * n) * lb * lb * lb +
                       16.0 * (2 * big_n - 12 * n + 6) / (3 * n) * lb * t.sum_sq + 16.0 * t.sum_cube;
  return three / 3.0;
}

double delta_r_inner(const CurvatureTensord& r, double einstein_tol) {
  if (r.dim() < 4) throw NotApplicable("delta_r_inner: requires n >= 4");
  const double defect = einstein_defect(r);
  if (defect > einstein_tol) {
    throw NotApplicable("delta_r_inner: tensor is not Einstein (defect " + fmt(defect) + ")");
  }
  return delta_r_inner(bochner_terms(r));
}

double f_lower(std::span<const double> v, int n, double theta) {
  check_length(v, n, "f_lower");
  const double big_n = traceless_dim(n);
  const Moments m = moments(v);
  const double lb = m.mean;
  return 16.0 * (-2.0 * big_n * theta * lb * lb * lb + (2 * theta - 1) * lb * m.sum_sq + m.sum_cube);
}

double f_lower_unsimplified(std::span<const double> v, int n, double theta) {
  check_length(v, n, "f_lower_unsimplified");
  const double nn = n;
  const double big_n = traceless_dim(n);
  const Moments m = moments(v);
  const double lb = m.mean;
  return 16.0 / (3 * nn) * (big_n * (big_n - 3) * theta - (2 * big_n - 9 * nn + 6) * big_n) * lb * lb * lb +
         16.0 / (3 * nn) * ((2 * big_n - 12 * nn + 6) - (big_n - 3) * theta) * lb * m.sum_sq + 16.0 * m.sum_cube;
}

double explicit_low_dim(std::span<const double> v, int n) {
  if (n != 4 && n != 5) throw std::invalid_argument("explicit_low_dim: requires n = 4 or 5");
  check_length(v, n, "explicit_low_dim");
  const Moments m = moments(v);
  const double lb = m.mean;
  if (n == 4) return 8.0 * (m.sum_cube - 9.0 * lb * lb * lb);
  return 8.0 * (m.sum_cube + lb * m.sum_sq / 3.0 - 56.0 / 3.0 * lb * lb * lb);
}

std::array<Rational, 2> coefficient_identity_defects(int n) {
  const Rational theta = theta_of_n(n);
  const Rational big_n = traceless_dim(n);
  const Rational nn = n;
  const Rational first = (big_n - 3) * theta - (2 * big_n - 9 * nn + 6) - (-6 * nn * theta);
  const Rational second = (2 * big_n - 12 * nn + 6) - (big_n - 3) * theta - (6 * nn * theta - 3 * nn);
  return {first, second};
}

WeightedBoundResult weighted_bound_check(const BochnerTerms& t, double theta) {
  WeightedBoundResult res;
  if (t.n < 6) {
    res.skipped = "requires n >= 6";
    return res;
  }
  if (t.einstein_defect > kEinsteinTol) {
    res.skipped = "tensor is not Einstein (defect " + fmt(t.einstein_defect) + ")";
    return res;
  }
  if (theta < 0) {
    res.skipped = "requires theta >= 0";
    return res;
  }
  const double lb = t.spectrum.lambda_bar;
  const double pair = t.spectrum.values(0) + t.spectrum.values(1);
  if (pair < -2 * theta * lb - kConeTol) {
    res.skipped = "lambda_1 + lambda_2 < -2 theta lambda_bar";
    return res;
  }
  res.checked = true;
  res.lhs = t.weighted_sw;
  res.rhs = weighted_sw_bound(t.n, theta, lb, t.sum_sq);
  return res;
}

WeightedBoundResult weighted_bound_check(const CurvatureTensord& r, double theta) {
  if (r.dim() < 6) {
    WeightedBoundResult res;
    res.skipped = "requires n >= 6";
    return res;
  }
  return weighted_bound_check(bochner_terms(r), theta);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::flat: return "flat";
    case Verdict::round_sphere_profile: return "round_sphere_profile";
    case Verdict::boundary_extremal_profile: return "boundary_extremal_profile";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::not_applicable: return "not_applicable";
  }
  return "unknown";
}

Classification classify_einstein(const CurvatureTensord& r, const ClassifyOptions& opt) {
  Classification out;
  const int n = r.dim();
  const double defect = einstein_defect(r);
  if (defect > opt.einstein_tol) {
    out.verdict = Verdict::not_applicable;
    out.details = "not Einstein: max |Ric - (Scal/n) g| = " + fmt(defect);
    return out;
  }
  if (n < 2) {
    out.verdict = Verdict::not_applicable;
    out.details = "dimension must be at least 2";
    return out;
  }

  const Spectrumd spec = second_kind_spectrum(r);
  const bool flat = spec.values.cwiseAbs().maxCoeff() < opt.flat_tol;
  const bool applicable = theta_defined(n);

  if (applicable) {
    const double theta = opt.theta ? *opt.theta : to_double(theta_of_n(n));
    const BochnerTerms terms = bochner_terms(r);
    const std::span<const double> values = values_of(terms.spectrum);
    BochnerReport rep;
    rep.n = n;
    rep.theta = theta;
    rep.lambda_bar = terms.spectrum.lambda_bar;
    rep.delta_r_general = delta_r_inner(terms);
    rep.delta_r_inner = (n == 4 || n == 5) ? explicit_low_dim(values, n) : rep.delta_r_general;
    rep.f_lower = f_lower(values, n, theta);
    if (n >= 6) {
      rep.weighted_sw = terms.weighted_sw;
      rep.weighted_bound = weighted_sw_bound(n, theta, rep.lambda_bar, terms.sum_sq);
    }
    rep.cone = cone_membership(terms.spectrum, ConeParams(2.0, theta));
    rep.einstein_defect = defect;
    out.report = rep;
  }

  if (flat) {
    out.verdict = Verdict::flat;
    out.details = "all eigenvalues of the second-kind operator vanish";
    return out;
  }
  if (!applicable) {
    out.verdict = Verdict::not_applicable;
    out.details = "rigidity constant theta(n) is not available for n = " + std::to_string(n);
    return out;
  }

  const BochnerReport& rep = *out.report;
  if (rep.cone.status == ConeStatus::violated) {
    out.verdict = Verdict::inconclusive;
    out.details = "cone condition C(2, theta) violated (margin " + fmt(rep.cone.margin) + ")";
    return out;
  }
  if (rep.lambda_bar <= opt.flat_tol) {
    out.verdict = Verdict::inconclusive;
    out.details = "mean eigenvalue vanishes but the spectrum does not";
    return out;
  }

  const int big_n = traceless_dim(n);
  const Eigen::VectorXd normalized = spec.values / spec.lambda_bar;
  auto near = [&](const Eigen::VectorXd& profile) {
    return (normalized - profile).cwiseAbs().maxCoeff() < opt.profile_tol;
  };
  if (near(round_profile(big_n))) {
    out.verdict = Verdict::round_sphere_profile;
    out.details = "spectrum equals (1, ..., 1) lambda_bar";
  } else if (near(boundary_minimizer(big_n, 1.0 + rep.theta))) {
    out.verdict = Verdict::boundary_extremal_profile;
    out.details = "spectrum equals the boundary extremal profile";
  } else {
    out.verdict = Verdict::inconclusive;
    out.details = "cone condition holds and <Delta R, R> = " + fmt(rep.delta_r_inner) +
                  "; spectrum matches neither extremal profile";
  }
  return out;
}

}  // namespace cosk
