#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "polyedge/coefficients.hpp"
#include "polyedge/image.hpp"
#include "polyedge/prox.hpp"
#include "polyedge/synthesis.hpp"

namespace polyedge {

/// min ||L_v x||_21 + lambda ||L_h reshape(x)||_21  s.t.  ||y - P x||_2 <= delta.
/// Holds a non-owning reference to the synthesis operator.
class ProblemSpec {
 public:
  ProblemSpec(Image y, const SynthesisOperator& synthesis, double lambda, double delta);

  const Image& observation() const { return y_; }
  const SynthesisOperator& synthesis() const { return *p_; }
  double lambda() const { return lambda_; }
  double delta() const { return delta_; }
  int degree() const { return p_->degree(); }

 private:
  Image y_;
  const SynthesisOperator* p_;
  double lambda_;
  double delta_;
};

struct SolverConfig {
  double xi = 1.0;     ///< primal step
  double sigma = 1.0;  ///< dual step
  double rho = 1.0;    ///< relaxation, in (0,2)
  int max_iters = 500;
  /// Stop once ||x_{i+1} - x_i|| / ||x_i|| falls to this value; 0 disables.
  double fixed_point_tol = 0.0;
};

/// max diag(P P^T) + 8 (K+1)^2, the bound on ||L_v^T L_v + L_h^T L_h + P^T P||.
double operator_norm_bound(const SynthesisOperator& p);

/// Steps saturating xi*sigma*bound = 1 with xi/sigma = step_ratio (so the
/// default is xi = sigma = 1/sqrt(bound)); rho = 1, 500 iterations, no early
/// stop. Ratios well above 1 speed up convergence when the image intensities
/// are large compared with the unit-radius duals.
SolverConfig default_config(const SynthesisOperator& p, double step_ratio = 1.0);

/// Throws ConfigError unless xi, sigma > 0, rho in (0,2), max_iters > 0,
/// fixed_point_tol >= 0 and xi*sigma*bound <= 1 (up to rounding).
void validate_config(const SolverConfig& cfg, const SynthesisOperator& p);

struct IterationRecord {
  long iter = 0;
  double objective = 0.0;
  double feasibility_gap = 0.0;
  double fixed_point_residual = 0.0;
};

struct SolverState {
  CoefficientField x;
  DiffField u1;  ///< dual of the vertical penalty
  DiffField u2;  ///< dual of the horizontal penalty
  Image u3;      ///< dual of the data constraint
  long iter = 0;
  std::vector<IterationRecord> history;
};

/// Zero duals; primal from x0 or zero.
SolverState initial_state(const ProblemSpec& spec,
                          const std::optional<CoefficientField>& x0 = std::nullopt);

double objective(const ProblemSpec& spec, const CoefficientField& x);
/// max(0, ||y - P x||_2 - delta)
double feasibility_gap(const ProblemSpec& spec, const CoefficientField& x);

/// Runs Condat iterations with preallocated scratch buffers.
class CondatSolver {
 public:
  /// Validates `cfg` against the problem's synthesis operator.
  CondatSolver(const ProblemSpec& spec, SolverConfig cfg);

  /// One full primal-dual update. Appends to the history. Throws
  /// DivergenceError if an iterate becomes non-finite.
  void step(SolverState& state);

  const SolverConfig& config() const { return cfg_; }

 private:
  const ProblemSpec& spec_;
  SolverConfig cfg_;
  CoefficientField grad_;
  CoefficientField extrap_;
  DiffField dv_;
  DiffField dh_;
  Image img_;
};

SolverState condat_step(SolverState state, const ProblemSpec& spec, const SolverConfig& cfg);

struct SolveResult {
  CoefficientField xhat;
  SolverState state;
};

SolveResult solve(const ProblemSpec& spec, const SolverConfig& cfg,
                  const std::optional<CoefficientField>& x0 = std::nullopt);

/// CSV with header `iter,objective,feasibility_gap,fixed_point_residual`.
void write_history_csv(std::ostream& os, const std::vector<IterationRecord>& history);

}  // namespace polyedge
