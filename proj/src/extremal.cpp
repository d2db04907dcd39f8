#include "cosk/extremal.hpp"

#include "cosk/cone.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace cosk {
namespace {

double coefficient_a(double beta) { return (3.0 - 2.0 * beta) / 3.0; }

/// Sum of the two smallest entries of a multiset given as (value, multiplicity).
double min_pair_sum(std::vector<std::pair<double, int>> groups) {
  std::erase_if(groups, [](const auto& g) { return g.second <= 0; });
  std::sort(groups.begin(), groups.end());
  if (groups.front().second >= 2) return 2.0 * groups.front().first;
  return groups[0].first + groups[1].first;
}

/// Indices of the two smallest coordinates.
std::pair<Eigen::Index, Eigen::Index> two_smallest(const Eigen::VectorXd& x) {
  Eigen::Index i = 0;
  Eigen::Index j = 1;
  if (x(j) < x(i)) std::swap(i, j);
  for (Eigen::Index t = 2; t < x.size(); ++t) {
    if (x(t) < x(i)) {
      j = i;
      i = t;
    } else if (x(t) < x(j)) {
      j = t;
    }
  }
  return {i, j};
}

struct Penalty {
  double value = 0;
  Eigen::VectorXd gradient;
};

/// Σ_{i<j} max(0, bound - xᵢ - xⱼ)² and its gradient.  Only pairs among the
/// smallest coordinates can be active, so the scan stops at the first
/// satisfied pair in sorted order.
Penalty pair_penalty(const Eigen::VectorXd& x, double bound, std::vector<Eigen::Index>& order) {
  const Eigen::Index size = x.size();
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  std::sort(order.begin(), order.end(), [&](Eigen::Index p, Eigen::Index q) { return x(p) < x(q); });
  Penalty pen;
  pen.gradient = Eigen::VectorXd::Zero(size);
  for (Eigen::Index a = 0; a + 1 < size; ++a) {
    Eigen::Index b = a + 1;
    for (; b < size; ++b) {
      const double gap = bound - x(order[a]) - x(order[b]);
      if (gap <= 0) break;
      pen.value += gap * gap;
      pen.gradient(order[a]) -= 2.0 * gap;
      pen.gradient(order[b]) -= 2.0 * gap;
    }
    if (b == a + 1) break;
  }
  return pen;
}

std::mt19937_64 restart_rng(std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  return std::mt19937_64(seq);
}

bool is_certified(int N, double beta) {
  for (int n = 4; traceless_dim(n) <= N; ++n) {
    if (traceless_dim(n) == N && theta_defined(n)) {
      return std::abs(beta - (1.0 + to_double(theta_of_n(n)))) <= 1e-14;
    }
  }
  return false;
}

bool same_profile(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double tol) {
  return x.size() == y.size() && (x - y).cwiseAbs().maxCoeff() < tol;
}

}  // namespace

FeasibleSet::FeasibleSet(int N_, double beta_) : N(N_), beta(beta_) {
  if (N < 3) throw std::invalid_argument("feasible set: N must be >= 3");
  if (!(beta >= 1.0)) throw std::invalid_argument("feasible set: beta must be >= 1");
}

double FeasibleSet::pair_slack(const Eigen::VectorXd& x) const {
  const auto [i, j] = two_smallest(x);
  return x(i) + x(j) - pair_bound();
}

bool FeasibleSet::contains(const Eigen::VectorXd& x, double sum_tol, double pair_tol) const {
  if (x.size() != N) return false;
  return std::abs(x.sum() - N) <= sum_tol && pair_slack(x) >= -pair_tol;
}

double big_f(const Eigen::VectorXd& x, double beta) {
  const auto size = static_cast<double>(x.size());
  return x.array().cube().sum() - (3.0 - 2.0 * beta) * x.squaredNorm() + 2.0 * size * (1.0 - beta);
}

Eigen::VectorXd big_f_gradient(const Eigen::VectorXd& x, double beta) {
  return (3.0 * x.array().square() - 2.0 * (3.0 - 2.0 * beta) * x.array()).matrix();
}

Eigen::VectorXd round_profile(int N) { return Eigen::VectorXd::Ones(N); }

Eigen::VectorXd boundary_minimizer(int N, double beta) {
  Eigen::VectorXd x = Eigen::VectorXd::Constant(N, (N - 2 + 2 * beta) / (N - 2));
  x(0) = -(2.0 * (N - 1) * (beta - 1) + N) / (N - 2);
  return x;
}

double interior_value(int N, double beta, int m) {
  const double a = coefficient_a(beta);
  const double rest = N - N * a;
  const double denom = N - 2.0 * m;
  return -2.0 * N * a * a * a - 3.0 * a * a * rest + rest * rest * rest / (denom * denom) +
         2.0 * N * (1.0 - beta);
}

CriticalPoint interior_critical(int N, double beta, int m) {
  const FeasibleSet set(N, beta);
  if (2 * m == N) {
    throw InfeasibleFamily("interior family m = N/2 has no solution for beta > 0");
  }
  if (m < 0 || 2 * m > N) throw std::out_of_range("interior family index m must satisfy 0 <= m < N/2");
  const double a = coefficient_a(beta);
  const double shift = (N - N * a) / (N - 2.0 * m);
  CriticalPoint cp;
  cp.kind = CriticalKind::interior;
  cp.m = m;
  cp.x = Eigen::VectorXd::Constant(N, a + shift);
  cp.x.head(m).setConstant(a - shift);
  cp.value = big_f(cp.x, beta);
  cp.closed_form = interior_value(N, beta, m);
  cp.feasible = set.contains(cp.x);
  return cp;
}

std::pair<double, double> boundary_a_interval(int N, double beta) {
  return {-(beta - 1.0), (N - 2 + 2 * beta) / (N - 2)};
}

namespace {

struct BoundarySolution {
  double x1, c, d, excess;  // excess = B - kA
};

BoundarySolution solve_boundary(int N, double beta, int k, int l, double a) {
  const double coef = coefficient_a(beta);
  const double b = N - 2 + 2 * beta - (N - 2 - k) * a;
  const double excess = b - k * coef;
  const double shift = excess / (k - 2.0 * l);
  return {2.0 - 2.0 * beta - a, coef - shift, coef + shift, excess};
}

void check_boundary_indices(int N, double beta, int k, int l, double a) {
  if (k < 1 || k > N - 2) throw std::out_of_range("boundary family index k must satisfy 1 <= k <= N-2");
  if (2 * l == k) throw InfeasibleFamily("boundary family l = k/2 has no solution (B - kA > 0)");
  if (l < 0 || 2 * l > k) throw std::out_of_range("boundary family index l must satisfy 0 <= l < k/2");
  const auto [lo, hi] = boundary_a_interval(N, beta);
  const double slack = 1e-12 * std::max(1.0, std::abs(hi));
  if (!(a >= lo - slack && a <= hi + slack)) {
    throw std::out_of_range("boundary parameter a = " + std::to_string(a) + " outside [" + std::to_string(lo) +
                            ", " + std::to_string(hi) + "]");
  }
}

double boundary_value_unchecked(int N, double beta, int k, int l, double a) {
  const double coef = coefficient_a(beta);
  const BoundarySolution s = solve_boundary(N, beta, k, l, a);
  const double ones = N - 1.0 - k;
  const double w = k - 2.0 * l;
  return s.x1 * s.x1 * s.x1 + ones * a * a * a - 3.0 * coef * (s.x1 * s.x1 + ones * a * a) +
         2.0 * N * (1.0 - beta) - 2.0 * k * coef * coef * coef - 3.0 * coef * coef * s.excess +
         s.excess * s.excess * s.excess / (w * w);
}

bool boundary_feasible(int N, double beta, int k, int l, double a) {
  const BoundarySolution s = solve_boundary(N, beta, k, l, a);
  const double pair = min_pair_sum({{s.x1, 1}, {a, N - 1 - k}, {s.c, l}, {s.d, k - l}});
  return pair - (-2.0 * (beta - 1.0)) >= -1e-12;
}

}  // namespace

double boundary_value(int N, double beta, int k, int l, double a) {
  check_boundary_indices(N, beta, k, l, a);
  return boundary_value_unchecked(N, beta, k, l, a);
}

CriticalPoint boundary_critical(int N, double beta, int k, int l, double a) {
  const FeasibleSet set(N, beta);
  check_boundary_indices(N, beta, k, l, a);
  const BoundarySolution s = solve_boundary(N, beta, k, l, a);
  CriticalPoint cp;
  cp.kind = CriticalKind::boundary;
  cp.k = k;
  cp.l = l;
  cp.a = a;
  cp.x.resize(N);
  Eigen::Index pos = 0;
  cp.x(pos++) = s.x1;
  for (int i = 0; i < N - 1 - k; ++i) cp.x(pos++) = a;
  for (int i = 0; i < l; ++i) cp.x(pos++) = s.c;
  for (int i = 0; i < k - l; ++i) cp.x(pos++) = s.d;
  cp.value = big_f(cp.x, beta);
  cp.closed_form = boundary_value_unchecked(N, beta, k, l, a);
  cp.feasible = set.contains(cp.x);
  return cp;
}

double boundary_family_value(int N, double beta, int k, double a) {
  check_boundary_indices(N, beta, k, 0, a);
  const double d = N - 2 + 2 * beta - (N - 2) * a;
  return 2.0 * (a - 1.0) * (a + beta - 1.0) * d + d * d * (d / (double(k) * k) + (3 * a - 3 + 2 * beta) / k);
}

double boundary_profile(int N, double beta, double a) {
  check_boundary_indices(N, beta, N - 2, 0, a);
  const double c = 2.0 * N * (beta - 1) + 2 * beta * (2 * beta - 1) +
                   8 * beta * beta * beta * (N - 1) / (double(N - 2) * (N - 2));
  // c is the constant of the cubic part alone; F also carries 2N(1-β).
  return -2 * beta * a * a + 4 * beta * (1 - beta) * a + c + 2.0 * N * (1 - beta);
}

Eigen::VectorXd repair_feasible(Eigen::VectorXd x, double beta) {
  const Eigen::Index size = x.size();
  const FeasibleSet set(static_cast<int>(size), beta);
  const double bound = set.pair_bound();
  for (int it = 0; it < 200; ++it) {
    const auto [i, j] = two_smallest(x);
    const double gap = bound - x(i) - x(j);
    if (gap <= 0) return x;
    x.array() -= gap / static_cast<double>(size - 2);
    x(i) += gap / 2 + gap / static_cast<double>(size - 2);
    x(j) += gap / 2 + gap / static_cast<double>(size - 2);
  }
  // (1, …, 1) is strictly feasible and the set is convex.
  const Eigen::VectorXd center = Eigen::VectorXd::Ones(size);
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (set.pair_slack((1 - mid) * x + mid * center) >= 0) hi = mid;
    else lo = mid;
  }
  return (1 - hi) * x + hi * center;
}

DescentRun descend_from(const Eigen::VectorXd& start, double beta, const DescentOptions& opt) {
  const Eigen::Index size = start.size();
  const FeasibleSet set(static_cast<int>(size), beta);
  const double bound = set.pair_bound();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(size));

  Eigen::VectorXd x = start;
  x.array() += (set.N - x.sum()) / static_cast<double>(size);

  DescentRun run;
  const int per_stage = std::max(1, opt.max_iterations / std::max(1, opt.penalty_stages));
  double rho = opt.penalty_start;
  bool stage_converged = false;
  for (int stage = 0; stage < opt.penalty_stages; ++stage, rho *= opt.penalty_growth) {
    auto objective = [&](const Eigen::VectorXd& y, Eigen::VectorXd* grad) {
      Penalty pen = pair_penalty(y, bound, order);
      if (grad != nullptr) {
        *grad = big_f_gradient(y, beta) + rho * pen.gradient;
        grad->array() -= grad->mean();
      }
      return big_f(y, beta) + rho * pen.value;
    };
    stage_converged = false;
    double step = 1e-2;
    Eigen::VectorXd grad;
    double current = objective(x, &grad);
    for (int it = 0; it < per_stage; ++it, ++run.iterations) {
      const double gnorm2 = grad.squaredNorm();
      if (std::sqrt(gnorm2) < opt.gradient_tol) {
        stage_converged = true;
        break;
      }
      step = std::min(step * 2.0, 1.0);
      Eigen::VectorXd trial = x - step * grad;
      double next = objective(trial, nullptr);
      while (next > current - 1e-4 * step * gnorm2 && step > 1e-20) {
        step *= 0.5;
        trial = x - step * grad;
        next = objective(trial, nullptr);
      }
      if (step <= 1e-20) {
        // No representable descent left along the projected gradient.
        stage_converged = true;
        break;
      }
      x = std::move(trial);
      current = objective(x, &grad);
    }
  }
  run.converged = stage_converged;
  run.x = repair_feasible(std::move(x), beta);
  run.value = big_f(run.x, beta);
  return run;
}

DescentResult multistart_descent(int N, double beta, std::uint64_t seed, int restarts, const DescentOptions& opt) {
  const FeasibleSet set(N, beta);
  if (restarts < 1) throw std::invalid_argument("multistart_descent: restarts must be >= 1");
  DescentResult result;
  result.runs.reserve(static_cast<std::size_t>(restarts));
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng = restart_rng(seed, r);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::uniform_real_distribution<double> spread(0.0, opt.start_spread);
    Eigen::VectorXd u(N);
    for (int i = 0; i < N; ++i) u(i) = uni(rng);
    const double s = spread(rng);
    Eigen::VectorXd start = Eigen::VectorXd::Ones(N) + s * (u.array() - u.mean()).matrix();
    start = repair_feasible(std::move(start), set.beta);

    DescentRun run = descend_from(start, beta, opt);
    if (!run.converged) ++result.nonconverged;
    if (run.value < result.min_value) {
      result.min_value = run.value;
      result.argmin = run.x;
    }
    result.runs.push_back(std::move(run));
  }
  return result;
}

ExtremalReport enumerate_minimum(int N, double beta, const EnumerateOptions& opt) {
  if (N < 3) throw std::invalid_argument("enumerate_minimum: N must be >= 3");
  if (!(beta >= 1.0)) throw std::invalid_argument("enumerate_minimum: beta must be >= 1");
  if (opt.grid < 2) throw std::invalid_argument("enumerate_minimum: grid needs both endpoints");

  ExtremalReport rep;
  rep.N = N;
  rep.beta = beta;
  rep.grid = opt.grid;
  rep.certified = is_certified(N, beta);

  auto track = [&rep](const CriticalPoint& cp) {
    rep.closed_form_defect =
        std::max(rep.closed_form_defect, std::abs(cp.closed_form - cp.value) / std::max(1.0, std::abs(cp.value)));
  };

  for (int m = 0; 2 * m < N; ++m) {
    const CriticalPoint cp = interior_critical(N, beta, m);
    track(cp);
    rep.critical_table.push_back({CriticalKind::interior, m, -1, -1, std::nan(""), cp.value, cp.feasible});
  }

  const auto [lo, hi] = boundary_a_interval(N, beta);
  std::vector<double> grid(static_cast<std::size_t>(opt.grid));
  for (int i = 0; i < opt.grid; ++i) grid[i] = lo + (hi - lo) * i / (opt.grid - 1);
  grid.front() = lo;
  grid.back() = hi;

  for (int k = 1; k <= N - 2; ++k) {
    for (int l = 0; 2 * l < k; ++l) {
      double best_feasible = std::numeric_limits<double>::infinity();
      double best_a_feasible = lo;
      double best_any = std::numeric_limits<double>::infinity();
      double best_a_any = lo;
      for (double a : grid) {
        const double v = boundary_value_unchecked(N, beta, k, l, a);
        if (v < best_any) {
          best_any = v;
          best_a_any = a;
        }
        if (v < best_feasible && boundary_feasible(N, beta, k, l, a)) {
          best_feasible = v;
          best_a_feasible = a;
        }
      }
      const bool any_feasible = std::isfinite(best_feasible);
      const double a = any_feasible ? best_a_feasible : best_a_any;
      const CriticalPoint cp = boundary_critical(N, beta, k, l, a);
      track(cp);
      rep.critical_table.push_back({CriticalKind::boundary, -1, k, l, a, cp.closed_form, any_feasible});
    }
  }

  rep.global_min = std::numeric_limits<double>::infinity();
  for (const auto& e : rep.critical_table)
    if (e.feasible) rep.global_min = std::min(rep.global_min, e.value);

  for (const auto& e : rep.critical_table) {
    if (!e.feasible || e.value > rep.global_min + opt.minimizer_tol) continue;
    CriticalPoint cp = e.kind == CriticalKind::interior ? interior_critical(N, beta, e.m)
                                                        : boundary_critical(N, beta, e.k, e.l, e.a);
    std::sort(cp.x.begin(), cp.x.end());
    const bool seen = std::any_of(rep.minimizers.begin(), rep.minimizers.end(),
                                  [&](const Eigen::VectorXd& y) { return same_profile(y, cp.x, 1e-9); });
    if (!seen) rep.minimizers.push_back(std::move(cp.x));
  }

  const Eigen::VectorXd round = round_profile(N);
  const Eigen::VectorXd edge = boundary_minimizer(N, beta);
  auto matches = [&](const Eigen::VectorXd& p) {
    return std::any_of(rep.minimizers.begin(), rep.minimizers.end(),
                       [&](const Eigen::VectorXd& y) { return same_profile(y, p, opt.profile_tol); });
  };
  rep.profiles_match = rep.minimizers.size() == 2 && matches(round) && matches(edge);

  if (opt.run_oracle) {
    const DescentResult oracle = multistart_descent(N, beta, opt.seed, opt.restarts);
    rep.oracle_min = oracle.min_value;
    rep.agreement = std::abs(rep.global_min - rep.oracle_min);
  }
  return rep;
}

}  // namespace cosk
