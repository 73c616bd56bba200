#include "polyedge/condat.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "polyedge/errors.hpp"

namespace polyedge {

ProblemSpec::ProblemSpec(Image y, const SynthesisOperator& synthesis, double lambda, double delta)
    : y_(std::move(y)), p_(&synthesis), lambda_(lambda), delta_(delta) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be positive");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw ConfigError("delta must be nonnegative");
  if (y_.rows() != synthesis.rows() || y_.cols() != synthesis.cols()) {
    throw ShapeError("observation does not match the synthesis basis");
  }
  if (y_.rows() < 2 || y_.cols() < 2) throw ShapeError("image must be at least 2x2");
}

double operator_norm_bound(const SynthesisOperator& p) {
  const double g = static_cast<double>((p.degree() + 1) * (p.degree() + 1));
  return p.max_diag_ppt() + 8.0 * g;
}

SolverConfig default_config(const SynthesisOperator& p, double step_ratio) {
  if (!(step_ratio > 0.0) || !std::isfinite(step_ratio)) {
    throw ConfigError("step ratio must be positive");
  }
  SolverConfig cfg;
  const double base = 1.0 / std::sqrt(operator_norm_bound(p));
  if (step_ratio == 1.0) {
    cfg.xi = cfg.sigma = base;
  } else {
    const double r = std::sqrt(step_ratio);
    cfg.xi = base * r;
    cfg.sigma = base / r;
  }
  return cfg;
}

void validate_config(const SolverConfig& cfg, const SynthesisOperator& p) {
  if (!(cfg.xi > 0.0) || !(cfg.sigma > 0.0)) throw ConfigError("step sizes must be positive");
  if (!(cfg.rho > 0.0 && cfg.rho < 2.0)) throw ConfigError("rho must lie in (0, 2)");
  if (cfg.max_iters <= 0) throw ConfigError("max_iters must be positive");
  if (!(cfg.fixed_point_tol >= 0.0)) throw ConfigError("fixed_point_tol must be nonnegative");
  const double product = cfg.xi * cfg.sigma * operator_norm_bound(p);
  if (product > 1.0 + 1e-12) {
    throw ConfigError(fmt::format("step sizes violate xi*sigma*bound <= 1 (got {:.6g})", product));
  }
}

SolverState initial_state(const ProblemSpec& spec, const std::optional<CoefficientField>& x0) {
  const auto& p = spec.synthesis();
  SolverState s;
  if (x0) {
    if (x0->degree() != p.degree() || x0->rows() != p.rows() || x0->cols() != p.cols()) {
      throw ShapeError("initial point does not match the synthesis basis");
    }
    s.x = *x0;
  } else {
    s.x = CoefficientField(p.degree(), p.rows(), p.cols());
  }
  s.u1 = DiffField(Direction::Vertical, p.degree(), p.rows(), p.cols());
  s.u2 = DiffField(Direction::Horizontal, p.degree(), p.rows(), p.cols());
  s.u3 = Image::Zero(p.rows(), p.cols());
  return s;
}

double objective(const ProblemSpec& spec, const CoefficientField& x) {
  return norm_l21(diff_vertical(x)) + spec.lambda() * norm_l21(diff_horizontal(x));
}

double feasibility_gap(const ProblemSpec& spec, const CoefficientField& x) {
  const double r = (spec.observation() - spec.synthesis().apply(x)).norm();
  return std::max(0.0, r - spec.delta());
}

CondatSolver::CondatSolver(const ProblemSpec& spec, SolverConfig cfg)
    : spec_(spec), cfg_(cfg) {
  const auto& p = spec.synthesis();
  validate_config(cfg_, p);
  grad_ = CoefficientField(p.degree(), p.rows(), p.cols());
  extrap_ = grad_;
  dv_ = DiffField(Direction::Vertical, p.degree(), p.rows(), p.cols());
  dh_ = DiffField(Direction::Horizontal, p.degree(), p.rows(), p.cols());
  img_ = Image::Zero(p.rows(), p.cols());
}

namespace {

// u <- rho * proj_radius(u + sigma * L extrap) + (1 - rho) * u, with L the
// forward difference matching u's direction. `scratch` has u's shape.
void dual_group_update(const CoefficientField& extrap, double sigma, double radius, double rho,
                       DiffField& u, DiffField& scratch) {
  const Eigen::Index m = extrap.rows();
  const Eigen::Index n = extrap.cols();
  const bool vertical = u.direction() == Direction::Vertical;
  Eigen::ArrayXd sq = Eigen::ArrayXd::Zero(scratch.groups().rows());
  for (int g = 0; g < u.num_maps(); ++g) {
    const auto e = extrap.map(g);
    auto dst = scratch.map(g);
    if (vertical) {
      dst = u.map(g) + sigma * (e.bottomRows(m - 1) - e.topRows(m - 1));
    } else {
      dst = u.map(g) + sigma * (e.rightCols(n - 1) - e.leftCols(n - 1));
    }
    sq += scratch.groups().col(g).array().square();
  }
  const Eigen::ArrayXd norms = sq.sqrt();
  const Eigen::ArrayXd factor = (norms > radius).select(radius / norms, 1.0);
  if (rho == 1.0) {
    u.groups().array() = scratch.groups().array().colwise() * factor;
  } else {
    u.groups().array() =
        rho * (scratch.groups().array().colwise() * factor) + (1.0 - rho) * u.groups().array();
  }
}

void check_finite(bool ok, const char* name, long iter) {
  if (!ok) {
    throw DivergenceError(fmt::format("non-finite values in {} at iteration {}", name, iter), name,
                          iter);
  }
}

}  // namespace

void CondatSolver::step(SolverState& s) {
  const auto& p = spec_.synthesis();
  const double xi = cfg_.xi;
  const double sigma = cfg_.sigma;
  const double rho = cfg_.rho;
  const long iter = s.iter + 1;

  // grad = Lv^T u1 + reshape^T Lh^T u2 + P^T u3
  p.adjoint_into(s.u3, grad_);
  accumulate_diff_adjoint(s.u1, grad_);
  accumulate_diff_adjoint(s.u2, grad_);

  auto& x = s.x.stacked();
  // xbar = x - xi*grad, extrap = 2*xbar - x
  grad_.stacked() = x - xi * grad_.stacked();
  extrap_.stacked() = 2.0 * grad_.stacked() - x;
  const double step_norm = rho * (grad_.stacked() - x).norm();
  x = rho * grad_.stacked() + (1.0 - rho) * x;
  check_finite(x.allFinite(), "x", iter);

  // u1 <- p1 - soft_1(p1) is the projection of p1 onto unit-radius groups;
  // likewise u2 with radius lambda.
  dual_group_update(extrap_, sigma, 1.0, rho, s.u1, dv_);
  check_finite(s.u1.groups().allFinite(), "u1", iter);
  dual_group_update(extrap_, sigma, spec_.lambda(), rho, s.u2, dh_);
  check_finite(s.u2.groups().allFinite(), "u2", iter);

  img_ = s.u3 + sigma * p.apply(extrap_);
  const Image ubar3 = img_ - sigma * project_l2_ball(img_ / sigma, spec_.observation(), spec_.delta());
  s.u3 = rho * ubar3 + (1.0 - rho) * s.u3;
  check_finite(s.u3.allFinite(), "u3", iter);

  s.iter = iter;
  IterationRecord rec;
  rec.iter = iter;
  diff_into(s.x, dv_);
  diff_into(s.x, dh_);
  rec.objective = norm_l21(dv_) + spec_.lambda() * norm_l21(dh_);
  rec.feasibility_gap =
      std::max(0.0, (spec_.observation() - p.apply(s.x)).norm() - spec_.delta());
  rec.fixed_point_residual = step_norm;
  s.history.push_back(rec);
}

SolverState condat_step(SolverState state, const ProblemSpec& spec, const SolverConfig& cfg) {
  CondatSolver solver(spec, cfg);
  solver.step(state);
  return state;
}

SolveResult solve(const ProblemSpec& spec, const SolverConfig& cfg,
                  const std::optional<CoefficientField>& x0) {
  CondatSolver solver(spec, cfg);
  SolverState state = initial_state(spec, x0);
  state.history.reserve(static_cast<std::size_t>(cfg.max_iters));
  for (int i = 0; i < cfg.max_iters; ++i) {
    const double prev_norm = state.x.norm();
    solver.step(state);
    if (cfg.fixed_point_tol > 0.0 && prev_norm > 0.0 &&
        state.history.back().fixed_point_residual <= cfg.fixed_point_tol * prev_norm) {
      break;
    }
  }
  return {state.x, std::move(state)};
}

void write_history_csv(std::ostream& os, const std::vector<IterationRecord>& history) {
  os << "iter,objective,feasibility_gap,fixed_point_residual\n";
  for (const auto& r : history) {
    os << fmt::format("{},{:.17g},{:.17g},{:.17g}\n", r.iter, r.objective, r.feasibility_gap,
                      r.fixed_point_residual);
  }
}

}  // namespace polyedge
