#include "polyedge/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "polyedge/errors.hpp"
#include "polyedge/pnm_io.hpp"

namespace polyedge {

namespace fs = std::filesystem;

EmitFlags parse_emit(const std::string& list) {
  EmitFlags f{false, false, false, false, false};
  if (list == "all") return EmitFlags{};
  if (list == "none" || list.empty()) return f;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "denoised") f.denoised = true;
    else if (item == "mosaic") f.mosaic = true;
    else if (item == "gradmaps") f.gradmaps = true;
    else if (item == "edges") f.edges = true;
    else if (item == "csv") f.csv = true;
    else throw ConfigError("unknown emit item '" + item + "'");
  }
  return f;
}

void validate(const RunConfig& cfg) {
  if (cfg.degree < 0) throw ConfigError("degree must be nonnegative");
  if (!(cfg.sigma >= 0.0)) throw ConfigError("sigma must be nonnegative");
  if (!(cfg.delta >= 0.0)) throw ConfigError("delta must be nonnegative");
  if (!(cfg.lambda > 0.0)) throw ConfigError("lambda must be positive");
  if (cfg.iters <= 0) throw ConfigError("iters must be positive");
  if (!(cfg.step_ratio > 0.0)) throw ConfigError("step ratio must be positive");
  if (cfg.tolerance_px < 0) throw ConfigError("tolerance must be nonnegative");
  for (double t : {cfg.thresholds.gt, cfg.thresholds.sobel, cfg.thresholds.synth,
                   cfg.thresholds.parmap}) {
    if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("thresholds must lie in [0, 1]");
  }
  parse_threshold_grid(cfg.sweep_grid);
}

RunResult run_pipeline(const Image& clean, const RunConfig& cfg) {
  validate(cfg);
  RunResult r;
  r.clean = clean;
  r.grad_truth = sobel_magnitude(clean);
  r.truth = threshold_map(r.grad_truth, cfg.thresholds.gt);

  r.noisy = add_gaussian_noise(clean, {cfg.sigma, cfg.seed});
  r.grad_sobel = sobel_magnitude(r.noisy);
  r.edges_sobel = threshold_map(r.grad_sobel, cfg.thresholds.sobel);

  const SynthesisOperator p(make_basis2d(make_basis(cfg.basis, cfg.degree, clean.rows()),
                                         make_basis(cfg.basis, cfg.degree, clean.cols())));
  const ProblemSpec spec(r.noisy, p, cfg.lambda, cfg.delta);
  SolverConfig scfg = default_config(p, cfg.step_ratio);
  scfg.max_iters = cfg.iters;

  const auto t0 = std::chrono::steady_clock::now();
  SolveResult sol = solve(spec, scfg);
  r.solve_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  r.xhat = std::move(sol.xhat);
  r.history = std::move(sol.state.history);
  r.denoised = p.apply(r.xhat);
  r.grad_synth = sobel_magnitude(r.denoised);
  r.edges_synth = threshold_map(r.grad_synth, cfg.thresholds.synth);
  r.grad_parmap = parameter_map_gradient(r.xhat);
  r.edges_parmap = threshold_map(r.grad_parmap, cfg.thresholds.parmap);

  auto row = [&](const char* method, const EdgeMap& e) {
    return ScoreRow{method, cfg.sigma, cfg.delta, e.threshold_used,
                    score_edges(e, r.truth, cfg.tolerance_px), cfg.seed};
  };
  r.scores = {row("sobel", r.edges_sobel), row("synth", r.edges_synth),
              row("parmap", r.edges_parmap)};
  return r;
}

std::string format_scores_csv(const std::vector<ScoreRow>& rows) {
  std::string out = std::string(kScoreCsvHeader) + "\n";
  for (const auto& row : rows) out += format_score_row(row) + "\n";
  return out;
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

fs::path prepare_out_dir(const RunConfig& cfg) {
  const fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + cfg.out_dir + "': " + ec.message());
  return dir;
}

}  // namespace

RunResult cmd_run(const RunConfig& cfg) {
  validate(cfg);
  if (cfg.input.empty()) throw ConfigError("no input image given");
  if (!fs::exists(cfg.input)) throw IoError("input '" + cfg.input + "' does not exist");
  const Image clean = read_image(cfg.input);
  RunResult r = run_pipeline(clean, cfg);

  const fs::path dir = prepare_out_dir(cfg);
  if (cfg.emit.denoised) {
    write_image((dir / "noisy.pgm").string(), r.noisy);
    write_image((dir / "denoised.pgm").string(), r.denoised);
  }
  if (cfg.emit.mosaic) write_mosaic((dir / "mosaic.pgm").string(), r.xhat);
  if (cfg.emit.gradmaps) {
    write_gradmap((dir / "grad_truth.pgm").string(), r.grad_truth);
    write_gradmap((dir / "grad_sobel.pgm").string(), r.grad_sobel);
    write_gradmap((dir / "grad_synth.pgm").string(), r.grad_synth);
    write_gradmap((dir / "grad_parmap.pgm").string(), r.grad_parmap);
  }
  if (cfg.emit.edges) {
    write_mask((dir / "edges_truth.pgm").string(), r.truth);
    write_mask((dir / "edges_sobel.pgm").string(), r.edges_sobel);
    write_mask((dir / "edges_synth.pgm").string(), r.edges_synth);
    write_mask((dir / "edges_parmap.pgm").string(), r.edges_parmap);
  }
  if (cfg.emit.csv) {
    write_text(dir / "scores.csv", format_scores_csv(r.scores));
    std::ostringstream hist;
    write_history_csv(hist, r.history);
    write_text(dir / "history.csv", hist.str());
  }
  return r;
}

std::vector<MethodSweep> sweep_methods(const RunResult& run, const RunConfig& cfg) {
  const std::vector<double> grid = parse_threshold_grid(cfg.sweep_grid);
  return {
      {"sobel", sweep_thresholds(run.grad_sobel, run.truth, grid, cfg.tolerance_px)},
      {"synth", sweep_thresholds(run.grad_synth, run.truth, grid, cfg.tolerance_px)},
      {"parmap", sweep_thresholds(run.grad_parmap, run.truth, grid, cfg.tolerance_px)},
  };
}

std::string format_sweep_csv(const std::vector<MethodSweep>& sweeps, const RunConfig& cfg) {
  std::string out = std::string(kScoreCsvHeader) + ",best\n";
  for (const auto& ms : sweeps) {
    for (std::size_t i = 0; i < ms.sweep.points.size(); ++i) {
      const auto& pt = ms.sweep.points[i];
      out += format_score_row({ms.method, cfg.sigma, cfg.delta, pt.threshold, pt.score, cfg.seed});
      out += i == ms.sweep.best_index ? ",1\n" : ",0\n";
    }
  }
  return out;
}

std::vector<MethodSweep> cmd_sweep(const RunConfig& cfg) {
  const RunResult run = cmd_run(cfg);
  auto sweeps = sweep_methods(run, cfg);
  write_text(prepare_out_dir(cfg) / "sweep.csv", format_sweep_csv(sweeps, cfg));
  return sweeps;
}

}  // namespace polyedge
