#include "cosk/verify.hpp"

#include "cosk/bochner.hpp"
#include "cosk/cone.hpp"
#include "cosk/extremal.hpp"
#include "cosk/models.hpp"
#include "cosk/second_kind.hpp"
#include "cosk/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace cosk {
namespace {

enum SeedTag : std::uint64_t {
  kEinsteinNorms = 1,
  kSActionNorms = 2,
  kWeighted = 3,
  kChain = 4,
  kLowDim = 5,
  kDiscrepancy = 6,
  kExtremal = 7,
};

double rel(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

std::span<const double> values_of(const Spectrumd& s) {
  return {s.values.data(), static_cast<std::size_t>(s.size())};
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t tag, int n, int trial) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(seed);
  h = mix(h ^ tag);
  h = mix(h ^ static_cast<std::uint64_t>(n));
  return mix(h ^ static_cast<std::uint64_t>(trial));
}

CheckResult check_theta_constants(int lo, int hi) {
  CheckResult c{"theta_constants", 0, true, 0, 0, ""};
  c.passed = theta_of_n(4) == Rational(1, 2) && theta_of_n(5) == Rational(2, 3) && theta_of_n(8) == Rational(1, 20);
  for (int n = lo; n <= hi; ++n, ++c.count) {
    if (!theta_window_holds(n)) {
      c.passed = false;
      c.note = "window fails at n = " + std::to_string(n);
    }
  }
  return c;
}

CheckResult check_coefficient_identities(int lo, int hi) {
  CheckResult c{"coefficient_identities", 0, true, 0, 0, ""};
  for (int n = lo; n <= hi; ++n, ++c.count) {
    const auto d = coefficient_identity_defects(n);
    if (d[0] != Rational(0) || d[1] != Rational(0)) {
      c.passed = false;
      c.max_defect = std::max({c.max_defect, std::abs(to_double(d[0])), std::abs(to_double(d[1]))});
      if (c.note.empty()) c.note = "identity fails at n = " + std::to_string(n);
    }
  }
  return c;
}

CheckResult check_einstein_norms(int n, int trials, std::uint64_t seed, double tol) {
  CheckResult c{"einstein_norm_identities", n, true, 0, 0, ""};
  const double big_n = traceless_dim(n);
  for (int t = 0; t < trials; ++t, ++c.count) {
    const std::uint64_t s = trial_seed(seed, kEinsteinNorms, n, t);
    std::mt19937_64 rng(s);
    const double weyl_scale = std::uniform_real_distribution<double>(0.1, 1.0)(rng);
    const double scal = n * (n - 1) * std::uniform_real_distribution<double>(-1.0, 2.0)(rng);
    const CurvatureTensord r = random_einstein<double>(n, s, weyl_scale, scal);
    const Spectrumd spec = second_kind_spectrum(r);
    const double lb = spec.lambda_bar;
    const double sum_sq = spec.values.squaredNorm();
    const double r2 = tensor_norm_sq(r);
    const double w2 = tensor_norm_sq(weyl_decompose(r).weyl);
    c.max_defect = std::max({c.max_defect, rel(r2, w2 + 2.0 * n * (n - 1) * lb * lb),
                             rel(sum_sq, 0.75 * r2 - double(n - 1) * (n - 1) * lb * lb),
                             rel(w2, 4.0 / 3.0 * sum_sq - 4.0 * big_n / 3.0 * lb * lb)});
  }
  c.passed = c.max_defect <= tol;
  return c;
}

CheckResult check_s_action_norms(int n, int trials, std::uint64_t seed, double tol) {
  CheckResult c{"s_action_norm_identities", n, true, 0, 0, ""};
  const double sum_coef = 2.0 * (n * n + n - 8) / n;
  const double max_coef = (8.0 * n - 16.0) / n;
  const S20Basis<double> basis = s20_basis<double>(n);
  double worst_ratio = 0;
  for (int t = 0; t < trials; ++t, ++c.count) {
    const CurvatureTensord w = random_weyl<double>(n, trial_seed(seed, kSActionNorms, n, t));
    const double w2 = tensor_norm_sq(w);

    const std::vector<double> canonical = sw_norms(basis.elements, w);
    const auto op = build_second_kind(sphere_tensor<double>(n) + w);
    const std::vector<double> eigen = sw_norms(eigen_matrices(op, spectrum(op)), w);

    double sum_c = 0;
    double sum_e = 0;
    double biggest = 0;
    for (double v : canonical) {
      sum_c += v;
      biggest = std::max(biggest, v);
    }
    for (double v : eigen) {
      sum_e += v;
      biggest = std::max(biggest, v);
    }
    worst_ratio = std::max(worst_ratio, biggest / w2);
    c.max_defect = std::max({c.max_defect, rel(sum_c, sum_coef * w2), rel(sum_e, sum_coef * w2)});
    if (biggest > max_coef * w2 + 1e-9) c.passed = false;
  }
  c.passed = c.passed && c.max_defect <= tol;
  c.note = "max_j |S^j W|^2 / |W|^2 = " + fmt(worst_ratio) + " (bound " + fmt(max_coef) + ")";
  return c;
}

CheckResult check_weighted_inequality(int n, const std::vector<double>& epsilons, int trials, std::uint64_t seed, double tol) {
  CheckResult c{"weighted_s_action_inequality", n, true, 0, 0, ""};
  const double theta = to_double(theta_of_n(n));
  double min_slack = std::numeric_limits<double>::infinity();
  int examined = 0;
  for (double eps : epsilons) {
    for (int t = 0; t < trials; ++t, ++examined) {
      const BochnerTerms terms = bochner_terms(near_sphere(n, trial_seed(seed, kWeighted, n, t), eps));
      const WeightedBoundResult res = weighted_bound_check(terms, theta);
      if (!res.checked) continue;
      ++c.count;
      const double chain = 3.0 * delta_r_inner(terms) - f_lower(values_of(terms.spectrum), n, theta);
      min_slack = std::min({min_slack, res.slack(), chain});
    }
  }
  c.max_defect = std::isfinite(min_slack) ? std::max(0.0, -min_slack) : 0.0;
  c.passed = c.count > 0 && min_slack >= -tol;
  c.note = std::to_string(c.count) + " of " + std::to_string(examined) + " tensors satisfy the cone condition; min slack " +
           fmt(min_slack);
  return c;
}

CheckResult check_chain_soundness(int n, int trials, std::uint64_t seed, double tol) {
  CheckResult c{"bochner_nonnegativity", n, true, 0, 0, ""};
  if (!theta_defined(n)) {
    c.note = "theta(n) undefined; skipped";
    return c;
  }
  const double theta = to_double(theta_of_n(n));
  const ConeParams params(2.0, theta);
  constexpr double kEps[] = {0.05, 0.1, 0.2, 0.3, 0.4, 0.6, 1.0, 1.5};
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const CurvatureTensord r = near_sphere(n, trial_seed(seed, kChain, n, t), kEps[t % 8]);
    const Spectrumd spec = second_kind_spectrum(r);
    if (cone_membership(spec, params).status == ConeStatus::violated) continue;
    double delta = 0;
    if (n == 4 || n == 5) {
      delta = explicit_low_dim(values_of(spec), n);
    } else {
      const BochnerTerms terms = bochner_terms(r);
      delta = delta_r_inner(terms);
      worst = std::min(worst, 3.0 * delta - f_lower(values_of(terms.spectrum), n, theta));
    }
    ++c.count;
    worst = std::min(worst, delta);
  }
  c.max_defect = std::isfinite(worst) ? std::max(0.0, -worst) : 0.0;
  c.passed = c.count > 0 && worst >= -tol;
  c.note = std::to_string(c.count) + " of " + std::to_string(trials) + " tensors satisfy the cone condition";
  return c;
}

CheckResult check_extremal_minimum(int n, int restarts, int grid, std::uint64_t seed) {
  CheckResult c{"extremal_minimum", n, true, 0, 1, ""};
  const int big_n = traceless_dim(n);
  const double beta = 1.0 + to_double(theta_of_n(n));
  EnumerateOptions opt;
  opt.grid = grid;
  opt.restarts = restarts;
  opt.seed = trial_seed(seed, kExtremal, n, 0);
  const ExtremalReport rep = enumerate_minimum(big_n, beta, opt);
  c.max_defect = std::max({std::abs(rep.global_min), rep.agreement, rep.closed_form_defect});
  c.passed = std::abs(rep.global_min) <= 1e-8 && rep.profiles_match && rep.agreement <= 1e-6 &&
             rep.oracle_min >= -1e-6 && rep.closed_form_defect <= 1e-9;
  c.note = "global_min " + fmt(rep.global_min) + ", oracle_min " + fmt(rep.oracle_min) + ", " +
           std::to_string(rep.minimizers.size()) + " minimizer profiles" +
           (rep.profiles_match ? "" : " (profile mismatch)");
  return c;
}

CheckResult check_closed_form_chain(int n, int grid) {
  CheckResult c{"closed_form_chain", n, true, 0, 0, ""};
  const int big_n = traceless_dim(n);
  const double beta = 1.0 + to_double(theta_of_n(n));
  const double coef = (3.0 - 2.0 * beta) / 3.0;
  std::vector<std::string> failures;
  auto fail = [&](std::string what) {
    c.passed = false;
    if (failures.size() < 3) failures.push_back(std::move(what));
  };

  for (int m = 1; 2 * m < big_n; ++m, ++c.count) {
    const CriticalPoint q = interior_critical(big_n, beta, m);
    c.max_defect = std::max(c.max_defect, rel(q.value, q.closed_form));
    if (!(q.closed_form > 0) || !(q.value > 0)) fail("F(Q_" + std::to_string(m) + ") <= 0");
  }

  const auto [lo, hi] = boundary_a_interval(big_n, beta);
  for (int i = 0; i < grid; ++i) {
    const double a = i + 1 == grid ? hi : lo + (hi - lo) * i / (grid - 1);
    const bool endpoint = i + 1 == grid;
    const double edge = boundary_profile(big_n, beta, a);
    if (endpoint ? std::abs(edge) > 1e-9 : !(edge > 0)) fail("boundary profile at a = " + fmt(a));
    if (i % 100 == 0 || endpoint) {
      const CriticalPoint p = boundary_critical(big_n, beta, big_n - 2, 0, a);
      c.max_defect = std::max(c.max_defect, std::abs(p.value - edge) / std::max(1.0, std::abs(p.value)));
    }
    for (int k = 1; k <= big_n - 2; ++k) {
      const double b = big_n - 2 + 2 * beta - (big_n - 2 - k) * a;
      if (!(b - k * coef >= 2.0 * k * beta * (big_n + 1) / (3.0 * (big_n - 2)) - 1e-9)) fail("B - kA bound");
      const double d = big_n - 2 + 2 * beta - (big_n - 2) * a;
      if (!(2 * d / k + (3 * a - 3 + 2 * beta) >= (big_n + 2) * beta / (big_n - 2) - 1e-12)) fail("g'(1/k) bound");

      const double base = boundary_value(big_n, beta, k, 0, a);
      const double family = boundary_family_value(big_n, beta, k, a);
      c.max_defect = std::max(c.max_defect, std::abs(base - family) / std::max(1.0, std::abs(base)));
      if (k <= big_n - 3) {
        if (endpoint ? std::abs(base - edge) > 1e-9 : !(base > edge)) fail("P_{k,0} ordering, k = " + std::to_string(k));
      }
      for (int l = 1; 2 * l < k; ++l, ++c.count) {
        if (!(boundary_value(big_n, beta, k, l, a) > base)) fail("P_{k,l} ordering, k = " + std::to_string(k));
      }
      if (i % 250 == 0) {
        for (int l = 0; 2 * l < k; ++l) {
          const CriticalPoint p = boundary_critical(big_n, beta, k, l, a);
          c.max_defect = std::max(c.max_defect, std::abs(p.value - p.closed_form) / std::max(1.0, std::abs(p.value)));
        }
      }
    }
  }
  if (c.max_defect > 1e-9) fail("closed form disagrees with direct evaluation");

  if (big_n % 2 == 0) {
    try {
      (void)interior_critical(big_n, beta, big_n / 2);
      fail("m = N/2 accepted");
    } catch (const InfeasibleFamily&) {
    }
  }
  try {
    (void)boundary_critical(big_n, beta, 2, 1, hi);
    fail("l = k/2 accepted");
  } catch (const InfeasibleFamily&) {
  }

  for (const auto& f : failures) c.note += (c.note.empty() ? "" : "; ") + f;
  return c;
}

CheckResult check_low_dim_identity(int n, int samples, std::uint64_t seed, double tol) {
  CheckResult c{"low_dim_identity", n, true, 0, 0, ""};
  const int big_n = traceless_dim(n);
  const double theta = to_double(theta_of_n(n));
  std::mt19937_64 rng(trial_seed(seed, kLowDim, n, 0));
  std::uniform_real_distribution<double> uni(-2.0, 3.0);
  std::vector<double> v(static_cast<std::size_t>(big_n));
  for (int s = 0; s < samples; ++s, ++c.count) {
    double mean = 0;
    for (double& x : v) {
      x = uni(rng);
      mean += x;
    }
    mean /= big_n;
    if (mean <= 0) {
      for (double& x : v) x += 0.5 - mean;
    }
    std::sort(v.begin(), v.end());
    c.max_defect = std::max(c.max_defect, std::abs(2.0 * explicit_low_dim(v, n) - f_lower(v, n, theta)));
  }
  c.passed = c.max_defect <= tol;
  return c;
}

double low_dim_discrepancy(int n, int trials, std::uint64_t seed) {
  double worst = 0;
  for (int t = 0; t < trials; ++t) {
    const BochnerTerms terms = bochner_terms(near_sphere(n, trial_seed(seed, kDiscrepancy, n, t), 0.05));
    worst = std::max(worst, std::abs(delta_r_inner(terms) - explicit_low_dim(values_of(terms.spectrum), n)));
  }
  return worst;
}

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::optional<std::string> VerifyReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return c.n > 0 ? c.name + " (n = " + std::to_string(c.n) + ")" : c.name;
  }
  return std::nullopt;
}

VerifyReport run_verify(const VerifyConfig& config) {
  VerifyReport rep;
  rep.config = config;
  rep.checks.push_back(check_theta_constants());
  rep.checks.push_back(check_coefficient_identities());
  for (int n : config.dims) {
    if (n < 3) throw std::invalid_argument("verify: dimensions must be >= 3");
    rep.checks.push_back(check_einstein_norms(n, config.trials, config.seed, config.tol));
    rep.checks.push_back(check_s_action_norms(n, config.trials, config.seed, config.tol));
    if (!theta_defined(n)) continue;
    rep.checks.push_back(check_chain_soundness(n, config.trials, config.seed));
    if (n >= 8) {
      rep.checks.push_back(check_weighted_inequality(n, {0.01, 0.05, 0.1}, config.trials, config.seed));
      rep.checks.push_back(check_closed_form_chain(n, config.grid));
    }
    rep.checks.push_back(check_extremal_minimum(n, config.restarts, config.grid, config.seed));
    if (n == 4 || n == 5) {
      rep.checks.push_back(check_low_dim_identity(n, 10 * config.trials, config.seed, config.tol));
      rep.low_dim_discrepancy.emplace_back(n, low_dim_discrepancy(n, std::min(config.trials, 20), config.seed));
    }
  }
  return rep;
}

nlohmann::json to_json(const CheckResult& c) {
  return {{"name", c.name}, {"n", c.n},         {"passed", c.passed},
          {"max_defect", c.max_defect}, {"count", c.count}, {"note", c.note}};
}

nlohmann::json to_json(const VerifyReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  nlohmann::json disc = nlohmann::json::array();
  for (const auto& [n, v] : r.low_dim_discrepancy) disc.push_back({{"n", n}, {"max_abs_difference", v}});
  return {{"config",
           {{"dims", r.config.dims},
            {"trials", r.config.trials},
            {"seed", r.config.seed},
            {"tol", r.config.tol},
            {"restarts", r.config.restarts},
            {"grid", r.config.grid}}},
          {"checks", std::move(checks)},
          {"low_dim_discrepancy", std::move(disc)},
          {"all_passed", r.all_passed()}};
}

}  // namespace cosk
