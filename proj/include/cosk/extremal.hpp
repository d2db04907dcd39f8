// Minimization of the cubic
//
//   F(x) = Σ xᵢ³ - (3 - 2β) Σ xᵢ² + 2N(1 - β)
//
// over { Σ xᵢ = N, xᵢ + xⱼ ≥ -2(β - 1) for i ≠ j }, by enumerating the
// Lagrange critical families in closed form and, independently, by
// multistart penalized projected-gradient descent.
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cosk {

/// A critical family whose defining linear system has no solution.
class InfeasibleFamily : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct FeasibleSet {
  int N;
  double beta;

  FeasibleSet(int N, double beta);

  double pair_bound() const { return -2.0 * (beta - 1.0); }
  bool contains(const Eigen::VectorXd& x, double sum_tol = 1e-10, double pair_tol = 1e-12) const;
  /// x_(1) + x_(2) - pair_bound(): nonnegative on the feasible side.
  double pair_slack(const Eigen::VectorXd& x) const;
};

double big_f(const Eigen::VectorXd& x, double beta);

/// Gradient of F in ambient coordinates: 3xᵢ² - 2(3 - 2β)xᵢ.
Eigen::VectorXd big_f_gradient(const Eigen::VectorXd& x, double beta);

/// (1, …, 1)
Eigen::VectorXd round_profile(int N);

/// (-(2(N-1)(β-1) + N)/(N-2), (N-2+2β)/(N-2), …): the boundary minimizer, ascending.
Eigen::VectorXd boundary_minimizer(int N, double beta);

enum class CriticalKind { interior, boundary };

struct CriticalPoint {
  CriticalKind kind;
  int m = -1;  // interior family index
  int k = -1;  // boundary family indices
  int l = -1;
  double a = std::numeric_limits<double>::quiet_NaN();
  Eigen::VectorXd x;
  double value = 0;        // big_f(x)
  double closed_form = 0;  // family closed-form value
  bool feasible = false;
};

/// Q_m = (r×m, s×(N-m)) with r + s = 2(3-2β)/3 and mr + (N-m)s = N.
/// m = N/2 throws InfeasibleFamily; m outside [0, N/2] throws std::out_of_range.
CriticalPoint interior_critical(int N, double beta, int m);

/// Closed form of F(Q_m).
double interior_value(int N, double beta, int m);

/// [-(β-1), (N-2+2β)/(N-2)]: admissible values of the second-smallest
/// coordinate on the active pair face.
std::pair<double, double> boundary_a_interval(int N, double beta);

/// P_{k,l}(a) = (2-2β-a, a×(N-1-k), c×l, d×(k-l)) with c + d = 2(3-2β)/3 and
/// lc + (k-l)d = N-2+2β-(N-2-k)a.  l = k/2 throws InfeasibleFamily; other
/// out-of-range indices and a outside boundary_a_interval throw std::out_of_range.
CriticalPoint boundary_critical(int N, double beta, int k, int l, double a);

/// Closed form of F(P_{k,l}(a)).
double boundary_value(int N, double beta, int k, int l, double a);

/// F(P_{k,0}(a)) = 2(a-1)(a+β-1)D + D²(D/k² + (3a-3+2β)/k), D = N-2+2β-(N-2)a.
double boundary_family_value(int N, double beta, int k, double a);

/// F(P_{N-2,0}(a)) = -2βa² + 4β(1-β)a + C + 2N(1-β) with
/// C = 2N(β-1) + 2β(2β-1) + 8β³(N-1)/(N-2)².
double boundary_profile(int N, double beta, double a);

struct CriticalEntry {
  CriticalKind kind;
  int m = -1;
  int k = -1;
  int l = -1;
  double a = std::numeric_limits<double>::quiet_NaN();
  double value = 0;
  bool feasible = false;
};

struct DescentOptions {
  int max_iterations = 10000;  // per restart, across all penalty stages
  double penalty_start = 1e2;
  double penalty_growth = 10.0;
  int penalty_stages = 5;
  double gradient_tol = 1e-10;
  double start_spread = 3.0;  // random starts: 1 + s(u - ū), s ~ U(0, spread), u ~ U(-1, 1)^N
};

struct DescentRun {
  double value = 0;
  Eigen::VectorXd x;
  int iterations = 0;
  bool converged = false;
};

struct DescentResult {
  double min_value = std::numeric_limits<double>::infinity();
  Eigen::VectorXd argmin;
  std::vector<DescentRun> runs;
  int nonconverged = 0;
};

/// Moves a point on Σx = N into the feasible set: raises the two smallest
/// coordinates and lowers the rest along the hyperplane until the pair bound
/// holds, falling back to bisection toward (1, …, 1).
Eigen::VectorXd repair_feasible(Eigen::VectorXd x, double beta);

/// One penalized projected-gradient descent from `start`, finished by repair.
DescentRun descend_from(const Eigen::VectorXd& start, double beta, const DescentOptions& opt = {});

/// Minimum of F found from `restarts` seeded random feasible starts.
DescentResult multistart_descent(int N, double beta, std::uint64_t seed, int restarts,
                                 const DescentOptions& opt = {});

struct EnumerateOptions {
  int grid = 2001;
  int restarts = 200;
  std::uint64_t seed = 0;
  bool run_oracle = true;
  double minimizer_tol = 1e-9;  // value gap for membership in the argmin set
  double profile_tol = 1e-6;    // per-coordinate distance to the closed-form minimizers
};

struct ExtremalReport {
  int N = 0;
  double beta = 0;
  double global_min = 0;
  std::vector<Eigen::VectorXd> minimizers;  // sorted ascending, deduplicated
  std::vector<CriticalEntry> critical_table;
  double oracle_min = std::numeric_limits<double>::quiet_NaN();
  double agreement = std::numeric_limits<double>::quiet_NaN();  // |global_min - oracle_min|
  double closed_form_defect = 0;  // max |closed form - big_f| / max(1, |big_f|), table points
  bool profiles_match = false;    // minimizers == {round, boundary} within profile_tol
  bool certified = false;         // beta == 1 + θ(n) with N = dim S²₀ for an applicable n
  int grid = 0;
};

/// Enumerates every interior family Q_m and, for each boundary family (k, l),
/// the a-grid (endpoints included); the table keeps each boundary family's
/// best grid point.  β < 1 is rejected.
ExtremalReport enumerate_minimum(int N, double beta, const EnumerateOptions& opt = {});

}  // namespace cosk
