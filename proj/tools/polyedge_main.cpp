// polyedge: batch front end for the group-sparse piecewise-polynomial edge
// detector. Subcommands `run` and `sweep` share all options; a key=value
// config file (same keys as the long flags) can be passed with --config.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "polyedge/errors.hpp"
#include "polyedge/pipeline.hpp"

namespace {

void error_line(const std::string& kind, const std::string& message) {
  nlohmann::json j{{"error", kind}, {"message", message}};
  std::cerr << j.dump() << std::endl;
}

void add_run_options(CLI::App& app, polyedge::RunConfig& cfg, std::string& basis,
                     std::string& emit) {
  app.set_config("--config", "", "key=value config file; flags override it");
  app.add_option("--input", cfg.input, "Clean input image (PGM P2/P5)")->required();
  app.add_option("--out-dir", cfg.out_dir, "Artifact directory")->capture_default_str();
  app.add_option("--degree", cfg.degree, "Polynomial degree K")->capture_default_str();
  app.add_option("--basis", basis, "standard|orthonormal")
      ->check(CLI::IsMember({"standard", "orthonormal"}))
      ->capture_default_str();
  app.add_option("--sigma", cfg.sigma, "Noise std. dev.")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Noise seed")->capture_default_str();
  app.add_option("--delta", cfg.delta, "Data-fidelity radius")->capture_default_str();
  app.add_option("--lambda", cfg.lambda, "Horizontal penalty weight")->capture_default_str();
  app.add_option("--iters", cfg.iters, "Solver iterations")->capture_default_str();
  app.add_option("--step-ratio", cfg.step_ratio, "Primal/dual step ratio xi/sigma")
      ->capture_default_str();
  app.add_option("--thresh-gt", cfg.thresholds.gt, "Ground-truth threshold")
      ->capture_default_str();
  app.add_option("--thresh-sobel", cfg.thresholds.sobel, "Noisy-Sobel threshold")
      ->capture_default_str();
  app.add_option("--thresh-synth", cfg.thresholds.synth, "Synthesized-image threshold")
      ->capture_default_str();
  app.add_option("--thresh-parmap", cfg.thresholds.parmap, "Parameter-map threshold")
      ->capture_default_str();
  app.add_option("--tolerance", cfg.tolerance_px, "Scoring tolerance in pixels")
      ->capture_default_str();
  app.add_option("--emit", emit, "Comma list of denoised,mosaic,gradmaps,edges,csv (or all/none)")
      ->capture_default_str();
  app.add_option("--sweep-grid", cfg.sweep_grid, "start:step:stop or comma list")
      ->capture_default_str();
}

void print_summary(const polyedge::RunResult& r) {
  const auto& last = r.history.back();
  std::cout << fmt::format("iterations {}  objective {:.6g}  feasibility_gap {:.3g}  solve {:.1f}s\n",
                           last.iter, last.objective, last.feasibility_gap, r.solve_seconds);
  std::cout << fmt::format("{:<8} {:>9} {:>9} {:>9} {:>9} {:>8}\n", "method", "threshold",
                           "precision", "recall", "f1", "pixels");
  const std::map<std::string, const polyedge::EdgeMap*> maps{
      {"sobel", &r.edges_sobel}, {"synth", &r.edges_synth}, {"parmap", &r.edges_parmap}};
  for (const auto& s : r.scores) {
    std::cout << fmt::format("{:<8} {:>9.3f} {:>9.4f} {:>9.4f} {:>9.4f} {:>8}\n", s.method,
                             s.threshold, s.score.precision, s.score.recall, s.score.f1,
                             maps.at(s.method)->count());
  }
  std::cout << fmt::format("{:<8} {:>9.3f} {:>39}\n", "truth", r.truth.threshold_used,
                           r.truth.count());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge detection via group-sparse piecewise-polynomial modelling"};
  app.require_subcommand(1);

  polyedge::RunConfig cfg;
  std::string basis = "standard";
  std::string emit = "all";

  // Options live on the top-level app so one config file serves both
  // subcommands; flags given after the subcommand fall through to it.
  add_run_options(app, cfg, basis, emit);
  auto* run = app.add_subcommand("run", "Noise, solve, detect and score one image")->fallthrough();
  app.add_subcommand("sweep", "Like run, then sweep thresholds per method")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    error_line("usage", e.what());
    return 2;
  }

  try {
    cfg.basis = basis == "orthonormal" ? polyedge::BasisKind::Orthonormal
                                       : polyedge::BasisKind::Standard;
    cfg.emit = polyedge::parse_emit(emit);
    if (run->parsed()) {
      print_summary(polyedge::cmd_run(cfg));
    } else {
      const auto sweeps = polyedge::cmd_sweep(cfg);
      for (const auto& ms : sweeps) {
        const auto& b = ms.sweep.best();
        std::cout << fmt::format("{:<8} best threshold {:.3f}  f1 {:.4f}\n", ms.method,
                                 b.threshold, b.score.f1);
      }
    }
  } catch (const polyedge::Error& e) {
    error_line(e.kind(), e.what());
    return 1;
  } catch (const std::exception& e) {
    error_line("internal", e.what());
    return 1;
  }
  return 0;
}
