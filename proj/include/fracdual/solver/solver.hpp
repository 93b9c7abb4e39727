#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "fracdual/core/field.hpp"
#include "fracdual/frac_space/frac_laplacian.hpp"
#include "fracdual/frac_time/marchaud.hpp"
#include "fracdual/solver/reaction.hpp"

namespace fracdual {

struct SolveConfig {
  double dt = 0.1;
  int n_steps = 100;
  TimeQuadratureConfig time_quadrature;
  SpaceQuadratureConfig space_quadrature;
  double linear_solver_tol = 1e-10;
  int residual_every = 0;  // 0 disables in-run residual diagnostics

  void validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("SolveConfig: dt > 0");
    if (n_steps < 1) throw std::invalid_argument("SolveConfig: n_steps >= 1");
  }
};

/// Time marcher for the dual-nonlocal evolution on a truncated domain:
/// singular-kernel time weights on the left, implicit dense spatial operator,
/// explicit reaction. The leading weight a0 is step-independent (full
/// prehistory keeps the kernel mass constant), so the system matrix is
/// factorized once.
class Solver {
 public:
  /// `fold_lambda`: when set, the field is antisymmetric across {x1=lambda}
  /// (lambda must be the grid's right edge) and the operator is folded
  /// accordingly. `c_field`: optional per-node coefficient for the linear
  /// reaction c(x) * u added to (or replacing) the reaction family.
  Solver(HistoryField state, ReactionSpec reaction, FracParams params,
         SolveConfig cfg,
         std::function<double(const Point&, double)> forcing = nullptr,
         std::optional<double> fold_lambda = std::nullopt,
         std::optional<std::vector<double>> c_field = std::nullopt);

  void step();
  void run(int n_steps);

  const HistoryField& state() const { return state_; }
  HistoryField take_state() { return std::move(state_); }
  const std::vector<double>& level_min() const { return min_u_; }
  const std::vector<double>& level_max() const { return max_u_; }
  const std::vector<std::pair<int, double>>& residual_norms() const {
    return residual_norms_;
  }
  double a0() const { return a0_; }
  const OperatorMatrix& op() const { return op_; }

  /// Largest |u^{l+1} - u^l| over the last `window` level pairs.
  double late_increment(std::size_t window = 1) const;

 private:
  HistoryField state_;
  ReactionSpec reaction_;
  FracParams params_;
  SolveConfig cfg_;
  std::function<double(const Point&, double)> forcing_;
  std::optional<std::vector<double>> c_field_;

  OperatorMatrix op_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  double a0_ = 0.0;
  Eigen::VectorXd ext_space_load_;   // spatial part of the exterior load
  std::vector<double> pre_space_;    // prehistory space factor at interior nodes
  std::vector<double> history_m_;    // m_k kernel increments, grows with the run
  double g1_calpha_ = 0.0;           // c_alpha * G_1 (newest-level history weight)

  std::vector<double> min_u_, max_u_;
  std::vector<std::pair<int, double>> residual_norms_;

  void extend_history_weights(std::size_t n);
  double history_weight(std::size_t k) const;  // weight of level N-k, k>=1
};

/// One semi-implicit update appended to a copy of the state (convenience
/// wrapper over the marcher; reuses nothing between calls).
HistoryField step(const HistoryField& state, const ReactionSpec& reaction,
                  const FracParams& params, const SolveConfig& cfg);

struct IvpResult {
  HistoryField traj;
  std::vector<double> min_u, max_u;
  std::vector<std::pair<int, double>> residual_norms;
  double a0 = 0.0;
};

struct IvpProblem {
  SpaceGrid grid;
  FracParams params = FracParams::make(0.5, 0.5);
  ReactionSpec reaction;
  SpaceTimeFn prehistory = SpaceTimeFn::zero();
  SpaceTimeFn exterior = SpaceTimeFn::zero();
  double t_start = 0.0;
  SolveConfig cfg;
  std::function<double(const Point&, double)> forcing;
  std::optional<double> fold_lambda;
  std::optional<std::vector<double>> c_field;
};

IvpResult run_ivp(const IvpProblem& problem);

/// Independent-evaluator consistency residual
///   r(x,t) = marchaud(u(x,.), t) + frac_laplacian(u(.,t), x) - f(u(x,t))
/// at interior nodes and levels >= 1, via the standalone evaluators rather
/// than the marcher's internal weights. `forcing` must match the run.
struct ResidualField {
  std::vector<std::vector<double>> values;  // [level-1][interior index]
  double max_abs = 0.0;
};
ResidualField residual(const HistoryField& traj, const ReactionSpec& reaction,
                       const FracParams& params, const SolveConfig& cfg,
                       std::function<double(const Point&, double)> forcing =
                           nullptr,
                       std::size_t level_stride = 1,
                       std::size_t level_begin = 1);

}  // namespace fracdual
