#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyedge/basis.hpp"
#include "polyedge/condat.hpp"
#include "polyedge/edges.hpp"
#include "polyedge/evaluation.hpp"

namespace polyedge {

struct Thresholds {
  double gt = 0.15;
  double sobel = 0.24;
  double synth = 0.14;
  double parmap = 0.12;
};

struct EmitFlags {
  bool denoised = true;
  bool mosaic = true;
  bool gradmaps = true;
  bool edges = true;
  bool csv = true;
};

/// Parses a comma-separated subset of {denoised,mosaic,gradmaps,edges,csv}
/// (or "all" / "none").
EmitFlags parse_emit(const std::string& list);

struct RunConfig {
  std::string input;
  std::string out_dir = "out";
  int degree = 2;
  BasisKind basis = BasisKind::Standard;
  double sigma = 20.0;
  std::uint64_t seed = 0;
  double delta = 4000.0;
  double lambda = 1.0;
  int iters = 500;
  double step_ratio = 1.0;  ///< primal/dual step ratio xi/sigma
  Thresholds thresholds;
  EmitFlags emit;
  int tolerance_px = 1;
  std::string sweep_grid = "0:0.01:1";
};

/// Throws ConfigError for out-of-range values, IoError for a missing input.
void validate(const RunConfig& cfg);

/// Everything a run produces, in memory.
struct RunResult {
  Image clean;
  Image noisy;
  Image denoised;
  CoefficientField xhat;
  std::vector<IterationRecord> history;

  GradMap grad_truth;
  GradMap grad_sobel;
  GradMap grad_synth;
  GradMap grad_parmap;

  EdgeMap truth;
  EdgeMap edges_sobel;
  EdgeMap edges_synth;
  EdgeMap edges_parmap;

  std::vector<ScoreRow> scores;  ///< sobel, synth, parmap against truth
  double solve_seconds = 0.0;
};

/// Ground truth, noise, solve, the three detectors and scoring on an image
/// already in memory. Writes nothing.
RunResult run_pipeline(const Image& clean, const RunConfig& cfg);

/// Loads cfg.input, runs the pipeline and writes the requested artifacts into
/// cfg.out_dir (created if missing).
RunResult cmd_run(const RunConfig& cfg);

struct MethodSweep {
  std::string method;
  SweepResult sweep;
};

/// One sweep per detector (sobel, synth, parmap) over the same grid.
std::vector<MethodSweep> sweep_methods(const RunResult& run, const RunConfig& cfg);

/// CSV: kScoreCsvHeader plus a trailing `best` column (1 on the best-F1 row of
/// each method).
std::string format_sweep_csv(const std::vector<MethodSweep>& sweeps, const RunConfig& cfg);
std::string format_scores_csv(const std::vector<ScoreRow>& rows);

/// cmd_run followed by the sweep; writes sweep.csv next to the run artifacts.
std::vector<MethodSweep> cmd_sweep(const RunConfig& cfg);

}  // namespace polyedge
