#pragma once

// Backward Euler evolution of
//   u_t - div( A(x) grad u |grad u|^{p-2} ) = gamma |grad u|^q + f,  u|_boundary = 0
// with damped Newton on the implicit diffusion, optional Picard fallback,
// eps-continuation for the singular range p < 2, adaptive time steps, and
// blow-up detection against a sup-norm cap.  The gradient source is explicit
// by default (evaluated at the previous time level) or lagged inside the
// nonlinear iteration.

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "splb/field.hpp"
#include "splb/operators.hpp"

namespace splb {

enum class SourceTreatment { Explicit, SemiImplicitLagged };

struct SolverConfig {
  double dt_init = 1e-3;
  double dt_min = 1e-12;
  double dt_max = 0.1;
  double dt_growth = 1.2;      // growth factor after easy steps
  double cap = 0.0;            // blow-up cap; 0 resolves to 1e8 * ||u0||_inf + 1
  double newton_tol = 1e-10;
  int newton_max_iters = 12;
  bool picard_fallback = true;
  double eps = 0.0;            // flux regularization; 0 resolves to 1e-8 * data scale
  SourceTreatment source_treatment = SourceTreatment::Explicit;
  double truncation_level = std::numeric_limits<double>::infinity();
  double growth_fraction = 0.25;  // max relative sup-norm change per accepted step
  double steady_stop = 0.0;    // >0: stop once ||du||_inf / dt drops below this
  double sigma_diag = 2.0;     // sigma for the per-step L^sigma diagnostic
  double beta_diag = 1.0;      // beta for the running gradient-energy diagnostic
};

using ForcingFn = std::function<Eigen::ArrayXd(const Grid&, double t)>;

struct ProblemSetup {
  double p = 2.0;
  double q = 1.5;
  double gamma = 0.0;
  std::shared_ptr<const CoefficientField> A;  // null: identity
  ForcingFn forcing;                          // null: zero
};

struct NewtonStats {
  int iterations = 0;
  bool converged = false;
  bool used_picard = false;
  double residual = 0.0;
};

class Stepper {
 public:
  Stepper(std::shared_ptr<const Grid> grid, const ProblemSetup& setup, const SolverConfig& cfg);

  // one backward Euler step from (u_old, t_old) to t_old + dt
  NewtonStats step(const Field& u_old, double t_old, double dt, Field& u_new);

  // the truncated source T_n(gamma |grad u|^q + f(t)) the scheme applies
  Eigen::ArrayXd source_value(const Field& u_grad_state, double t_new) const;

  const PFluxOperator& flux_operator() const { return op_; }
  double resolved_eps() const { return op_.eps(); }

 private:
  NewtonStats newton_solve(const Field& u_old, double t_old, double dt, Field& u,
                           double eps_level);
  NewtonStats picard_solve(const Field& u_old, double t_old, double dt, Field& u);
  Eigen::ArrayXd residual(const Field& u, const Field& u_old, double t_old, double dt,
                          const Eigen::ArrayXd& source) const;

  std::shared_ptr<const Grid> grid_;
  ProblemSetup setup_;
  SolverConfig cfg_;
  mutable PFluxOperator op_;
  // factorization cache for the linear case p = 2 (Jacobian independent of u)
  struct LinearCache;
  std::shared_ptr<LinearCache> lin_cache_;
};

Trajectory solve(std::shared_ptr<const Grid> grid, const Field& u0, const ProblemSetup& setup,
                 SolverConfig cfg);

// replays a prescribed dt schedule (no adaptivity); used by comparison runs
Trajectory solve_prescribed(std::shared_ptr<const Grid> grid, const Field& u0,
                            const ProblemSetup& setup, SolverConfig cfg,
                            const std::vector<double>& dts);

struct ApproximationSequence {
  std::vector<double> levels;
  std::vector<Trajectory> runs;
  std::vector<double> distances;  // L^p(Q) distance between consecutive runs
  bool stabilized = false;
};

// Solves the approximating problems with datum T_n(u0) and source T_n(H) for
// each truncation level n; distances use linear interpolation in time.
ApproximationSequence approximation_sequence(std::shared_ptr<const Grid> grid, const Field& u0,
                                             const ProblemSetup& setup, const SolverConfig& cfg,
                                             const std::vector<double>& levels,
                                             double stabilize_rel_tol = 0.01);

struct ComparisonResult {
  Trajectory with_source;
  Trajectory source_free;
  double min_gap = 0.0;     // min over shared slices and cells of u - U
  bool bitwise_equal = false;
};

// Runs the full problem, then the source-free flow from the same datum on the
// identical dt schedule, and reports the minimum of u - U (ordering check).
ComparisonResult comparison_run(std::shared_ptr<const Grid> grid, const Field& u0,
                                const ProblemSetup& setup, const SolverConfig& cfg);

using TestFn = std::function<double(double t, const std::array<double, 3>& x)>;

// Discrete weak-form residual of a computed trajectory against a family of
// test functions sampled on the scheme's own mesh; exact solutions of the
// scheme give residuals at the Newton tolerance.
double weak_residual(const Trajectory& traj, const ProblemSetup& setup, const SolverConfig& cfg,
                     const std::vector<TestFn>& family);

// smooth tensor bumps vanishing at the final time, for weak_residual probes
std::vector<TestFn> default_test_family(const Grid& grid, int count, std::uint64_t seed);

// L^p(Q) distance between two trajectories (linear interpolation in time over
// the shared time range)
double trajectory_distance(const Trajectory& a, const Trajectory& b, double p);

}  // namespace splb
