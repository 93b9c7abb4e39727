#include "fracdual/solver/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace fracdual {

namespace {

double weight_A(std::size_t k, double dt, double alpha) {
  const double km1 = static_cast<double>(k - 1), kk = static_cast<double>(k);
  return std::pow(dt, -alpha) * (std::pow(km1, -alpha) - std::pow(kk, -alpha)) /
         alpha;
}

double weight_G(std::size_t k, double dt, double alpha) {
  const double km1 = static_cast<double>(k - 1), kk = static_cast<double>(k);
  double g = std::pow(dt, -alpha) *
             (std::pow(kk, 1.0 - alpha) - std::pow(km1, 1.0 - alpha)) /
             (1.0 - alpha);
  if (k >= 2) g -= km1 * weight_A(k, dt, alpha);
  return g;
}

}  // namespace

Solver::Solver(HistoryField state, ReactionSpec reaction, FracParams params,
               SolveConfig cfg, std::function<double(const Point&, double)> forcing,
               std::optional<double> fold_lambda,
               std::optional<std::vector<double>> c_field)
    : state_(std::move(state)), reaction_(reaction), params_(params),
      cfg_(cfg), forcing_(std::move(forcing)), c_field_(std::move(c_field)) {
  cfg_.validate();
  if (std::abs(state_.dt - cfg_.dt) > 1e-12 * cfg_.dt)
    state_.dt = cfg_.dt;
  if (state_.levels.empty()) state_.seed_initial_level();

  op_ = assemble_operator_matrix(state_.grid, params_, cfg_.space_quadrature,
                                 fold_lambda);
  const auto n_int = op_.interior.rows();
  if (c_field_ && c_field_->size() != op_.interior_ids.size())
    throw std::invalid_argument("Solver: c_field size != interior node count");

  // Leading weight of the time discretization; the full-prehistory kernel
  // mass makes it independent of the step index.
  a0_ = params_.c_alpha * std::pow(cfg_.dt, -params_.alpha) /
        (params_.alpha * (1.0 - params_.alpha));
  Eigen::MatrixXd system = op_.interior;
  system.diagonal().array() += a0_;
  lu_.compute(system);

  ext_space_load_ = op_.exterior_load(state_.exterior.space);
  Eigen::VectorXd ext_nodes(static_cast<Eigen::Index>(op_.exterior_ids.size()));
  for (std::size_t c = 0; c < op_.exterior_ids.size(); ++c)
    ext_nodes[static_cast<Eigen::Index>(c)] =
        state_.exterior.space.at_point(state_.grid.node(op_.exterior_ids[c]));
  ext_space_load_ += op_.exterior_nodes * ext_nodes;

  pre_space_.resize(static_cast<std::size_t>(n_int));
  for (std::size_t r = 0; r < pre_space_.size(); ++r)
    pre_space_[r] =
        state_.prehistory.space.at_point(state_.grid.node(op_.interior_ids[r]));

  g1_calpha_ = params_.c_alpha * weight_G(1, cfg_.dt, params_.alpha);

  min_u_.reserve(1024);
  max_u_.reserve(1024);
  for (std::size_t l = 0; l < state_.level_count(); ++l) {
    min_u_.push_back(state_.min_interior(l, l + 1));
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < state_.grid.node_count(); ++i)
      if (state_.grid.is_interior(i)) mx = std::max(mx, state_.levels[l][i]);
    max_u_.push_back(mx);
  }
}

void Solver::extend_history_weights(std::size_t n) {
  while (history_m_.size() < n) {
    const std::size_t k = history_m_.size() + 1;
    const double m = params_.c_alpha *
                     (weight_G(k, cfg_.dt, params_.alpha) -
                      weight_G(k + 1, cfg_.dt, params_.alpha) +
                      weight_A(k + 1, cfg_.dt, params_.alpha));
    history_m_.push_back(m);
  }
}

double Solver::history_weight(std::size_t k) const { return history_m_[k - 1]; }

void Solver::step() {
  const std::size_t n_new = state_.level_count();  // index of the new level
  if (n_new == 0) throw std::logic_error("Solver::step: no seed level");
  const double t_new = state_.time_of(n_new);
  const auto n_int = op_.interior.rows();
  extend_history_weights(n_new);

  Eigen::VectorXd rhs(n_int);
  const double i_time = prehistory_data_integral(
      state_.prehistory.time, state_.t_start, t_new, params_,
      cfg_.time_quadrature);
  const double ext_time = state_.exterior.time.at_time(t_new);
  const double b0 = params_.c_alpha * weight_G(n_new, cfg_.dt, params_.alpha);
  const double t_prev = state_.time_of(n_new - 1);

  for (Eigen::Index r = 0; r < n_int; ++r) {
    const std::size_t node = op_.interior_ids[static_cast<std::size_t>(r)];
    double hist = b0 * state_.levels[0][node];
    for (std::size_t j = 1; j < n_new; ++j)
      hist += history_weight(n_new - j) * state_.levels[j][node];

    const double u_prev = state_.levels[n_new - 1][node];
    double react = reaction_(u_prev);
    if (c_field_) react += (*c_field_)[static_cast<std::size_t>(r)] * u_prev;
    if (forcing_) react += forcing_(state_.grid.node(node), t_prev);
    if (!std::isfinite(react))
      throw std::domain_error("Solver::step: non-finite reaction value");

    rhs[r] = hist + pre_space_[static_cast<std::size_t>(r)] * i_time + react -
             ext_space_load_[r] * ext_time;
  }

  Eigen::VectorXd u_new = lu_.solve(rhs);
  const double solve_err = (op_.interior * u_new + a0_ * u_new - rhs).norm() /
                           std::max(1.0, rhs.norm());
  if (!(solve_err < std::max(cfg_.linear_solver_tol, 1e-8)))
    throw std::runtime_error("Solver::step: linear solve residual " +
                             std::to_string(solve_err));

  std::vector<double> level(state_.grid.node_count());
  for (std::size_t i = 0; i < level.size(); ++i)
    level[i] = state_.exterior(state_.grid.node(i), t_new);
  for (Eigen::Index r = 0; r < n_int; ++r)
    level[op_.interior_ids[static_cast<std::size_t>(r)]] = u_new[r];
  state_.push_level(std::move(level));

  min_u_.push_back(u_new.minCoeff());
  max_u_.push_back(u_new.maxCoeff());
  if (cfg_.residual_every > 0 &&
      (n_new % static_cast<std::size_t>(cfg_.residual_every)) == 0) {
    // Probe the newest level only.
    ResidualField rf = residual(state_, reaction_, params_, cfg_, forcing_,
                                state_.level_count(), state_.level_count() - 1);
    residual_norms_.emplace_back(static_cast<int>(n_new), rf.max_abs);
  }
}

void Solver::run(int n_steps) {
  for (int i = 0; i < n_steps; ++i) step();
}

double Solver::late_increment(std::size_t window) const {
  const std::size_t n = state_.level_count();
  if (n < 2) return std::numeric_limits<double>::infinity();
  const std::size_t first = n - 1 - std::min(window, n - 1);
  double inc = 0.0;
  for (std::size_t l = std::max<std::size_t>(first, 1); l < n; ++l) {
    for (std::size_t i = 0; i < state_.grid.node_count(); ++i)
      if (state_.grid.is_interior(i))
        inc = std::max(inc,
                       std::abs(state_.levels[l][i] - state_.levels[l - 1][i]));
  }
  return inc;
}

HistoryField step(const HistoryField& state, const ReactionSpec& reaction,
                  const FracParams& params, const SolveConfig& cfg) {
  Solver s(state, reaction, params, cfg);
  s.step();
  return s.take_state();
}

IvpResult run_ivp(const IvpProblem& problem) {
  problem.cfg.validate();
  HistoryField state(problem.grid, problem.t_start, problem.cfg.dt,
                     problem.prehistory, problem.exterior);
  state.seed_initial_level();
  Solver s(std::move(state), problem.reaction, problem.params, problem.cfg,
           problem.forcing, problem.fold_lambda, problem.c_field);
  s.run(problem.cfg.n_steps);
  IvpResult res;
  res.a0 = s.a0();
  res.min_u = s.level_min();
  res.max_u = s.level_max();
  res.residual_norms = s.residual_norms();
  res.traj = s.take_state();
  return res;
}

ResidualField residual(const HistoryField& traj, const ReactionSpec& reaction,
                       const FracParams& params, const SolveConfig& cfg,
                       std::function<double(const Point&, double)> forcing,
                       std::size_t level_stride, std::size_t level_begin) {
  if (traj.level_count() < 2)
    throw std::invalid_argument("residual: need >= 2 levels");
  ResidualField rf;
  const SpaceGrid& g = traj.grid;
  for (std::size_t l = std::max<std::size_t>(1, level_begin);
       l < traj.level_count(); l += level_stride) {
    const double t = traj.time_of(l);
    std::vector<double> row;
    GridField gf{&g, &traj.levels[l], &traj.exterior.space,
                 traj.exterior.time.at_time(t)};
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      if (!g.is_interior(i)) continue;
      TimeTrace tr;
      tr.t_start = traj.t_start;
      tr.dt = traj.dt;
      tr.values.resize(l + 1);
      for (std::size_t j = 0; j <= l; ++j) tr.values[j] = traj.levels[j][i];
      tr.prehistory = traj.prehistory.time;
      tr.prehistory_scale = traj.prehistory.space.at_point(g.node(i));

      const double dtau = marchaud(tr, t, params, cfg.time_quadrature);
      const double lap = frac_laplacian(gf, i, params, cfg.space_quadrature);
      double f = reaction(traj.levels[l][i]);
      if (forcing) f += forcing(g.node(i), t);
      const double r = dtau + lap - f;
      row.push_back(r);
      rf.max_abs = std::max(rf.max_abs, std::abs(r));
    }
    rf.values.push_back(std::move(row));
  }
  return rf;
}

}  // namespace fracdual
