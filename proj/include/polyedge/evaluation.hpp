#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "polyedge/edges.hpp"
#include "polyedge/image.hpp"

namespace polyedge {

/// xoshiro256** 1.0 seeded through splitmix64. Output is fully specified, so
/// a given seed yields the same stream on every platform.
class Xoshiro256StarStar {
 public:
  explicit Xoshiro256StarStar(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform double in [0,1) from the top 53 bits.
  double uniform();

 private:
  std::array<std::uint64_t, 4> s_{};
};

struct NoiseSpec {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

/// img + sigma * g with g i.i.d. standard normal (Box-Muller over
/// Xoshiro256StarStar), filled in column-major order. No clipping.
Image add_gaussian_noise(const Image& img, const NoiseSpec& spec);

struct EdgeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  int tolerance_px = 1;
};

/// Chebyshev dilation of a mask by `radius` pixels.
Mask dilate(const Mask& m, int radius);

/// Precision: fraction of predicted pixels within `tolerance_px` (Chebyshev)
/// of a truth pixel. Recall: fraction of truth pixels within `tolerance_px`
/// of a predicted pixel. Empty prediction gives precision 0, empty truth
/// gives recall 0; both empty scores 1 across the board.
EdgeScore score_edges(const EdgeMap& pred, const EdgeMap& truth, int tolerance_px = 1);

struct SweepPoint {
  double threshold = 0.0;
  EdgeScore score;
  Eigen::Index edge_pixels = 0;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::size_t best_index = 0;  ///< first point attaining the maximum F1

  const SweepPoint& best() const { return points.at(best_index); }
};

SweepResult sweep_thresholds(const GradMap& g, const EdgeMap& truth,
                             const std::vector<double>& grid, int tolerance_px = 1);

/// Parses "start:step:stop" (inclusive, rounded to the nearest grid count) or
/// a comma-separated list. Throws ConfigError on malformed input.
std::vector<double> parse_threshold_grid(const std::string& spec);

/// One row of a score report.
struct ScoreRow {
  std::string method;
  double sigma = 0.0;
  double delta = 0.0;
  double threshold = 0.0;
  EdgeScore score;
  std::uint64_t seed = 0;
};

inline constexpr const char* kScoreCsvHeader =
    "method,sigma,delta,threshold,precision,recall,f1,tolerance_px,seed";

/// Single CSV line (no newline) in kScoreCsvHeader column order.
std::string format_score_row(const ScoreRow& row);

}  // namespace polyedge
