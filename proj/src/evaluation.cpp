#include "polyedge/evaluation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "polyedge/errors.hpp"

namespace polyedge {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256StarStar::Xoshiro256StarStar(std::uint64_t seed) {
  std::uint64_t st = seed;
  for (auto& w : s_) w = splitmix64(st);
}

std::uint64_t Xoshiro256StarStar::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256StarStar::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

Image add_gaussian_noise(const Image& img, const NoiseSpec& spec) {
  if (!(spec.sigma >= 0.0)) throw ConfigError("noise sigma must be nonnegative");
  Image out = img;
  if (spec.sigma == 0.0) return out;
  Xoshiro256StarStar rng(spec.seed);
  double* data = out.data();
  const Eigen::Index total = out.size();
  for (Eigen::Index i = 0; i < total; i += 2) {
    // 1 - u keeps the log argument in (0,1].
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    data[i] += spec.sigma * r * std::cos(a);
    if (i + 1 < total) data[i + 1] += spec.sigma * r * std::sin(a);
  }
  return out;
}

Mask dilate(const Mask& m, int radius) {
  if (radius <= 0) return m;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  // Separable: max over columns, then over rows.
  Mask tmp = Mask::Zero(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (!m(r, c)) continue;
      const Eigen::Index c0 = std::max<Eigen::Index>(0, c - radius);
      const Eigen::Index c1 = std::min<Eigen::Index>(cols - 1, c + radius);
      for (Eigen::Index cc = c0; cc <= c1; ++cc) tmp(r, cc) = 1;
    }
  }
  Mask out = Mask::Zero(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (!tmp(r, c)) continue;
      const Eigen::Index r0 = std::max<Eigen::Index>(0, r - radius);
      const Eigen::Index r1 = std::min<Eigen::Index>(rows - 1, r + radius);
      for (Eigen::Index rr = r0; rr <= r1; ++rr) out(rr, c) = 1;
    }
  }
  return out;
}

namespace {

EdgeScore score_masks(const Mask& pred, const Mask& truth, const Mask& truth_dilated,
                      int tolerance_px) {
  const Mask pred_dilated = dilate(pred, tolerance_px);
  const auto count = [](const auto& expr) { return expr.template cast<long>().sum(); };
  const long n_pred = count(pred);
  const long n_truth = count(truth);
  EdgeScore s;
  s.tolerance_px = tolerance_px;
  if (n_pred == 0 && n_truth == 0) {
    s.precision = s.recall = s.f1 = 1.0;
    return s;
  }
  const long tp_pred = count((pred.array() * truth_dilated.array()).matrix());
  const long tp_truth = count((truth.array() * pred_dilated.array()).matrix());
  s.precision = n_pred ? static_cast<double>(tp_pred) / static_cast<double>(n_pred) : 0.0;
  s.recall = n_truth ? static_cast<double>(tp_truth) / static_cast<double>(n_truth) : 0.0;
  const double pr = s.precision + s.recall;
  s.f1 = pr > 0.0 ? 2.0 * s.precision * s.recall / pr : 0.0;
  return s;
}

}  // namespace

EdgeScore score_edges(const EdgeMap& pred, const EdgeMap& truth, int tolerance_px) {
  if (pred.mask.rows() != truth.mask.rows() || pred.mask.cols() != truth.mask.cols()) {
    throw ShapeError("edge maps differ in size");
  }
  if (tolerance_px < 0) throw ConfigError("tolerance must be nonnegative");
  return score_masks(pred.mask, truth.mask, dilate(truth.mask, tolerance_px), tolerance_px);
}

SweepResult sweep_thresholds(const GradMap& g, const EdgeMap& truth,
                             const std::vector<double>& grid, int tolerance_px) {
  if (grid.empty()) throw ConfigError("threshold grid is empty");
  if (g.values.rows() != truth.mask.rows() || g.values.cols() != truth.mask.cols()) {
    throw ShapeError("gradient map and truth differ in size");
  }
  const Mask truth_dilated = dilate(truth.mask, tolerance_px);
  SweepResult res;
  res.points.reserve(grid.size());
  for (double t : grid) {
    const EdgeMap e = threshold_map(g, t);
    SweepPoint pt;
    pt.threshold = t;
    pt.score = score_masks(e.mask, truth.mask, truth_dilated, tolerance_px);
    pt.edge_pixels = e.count();
    res.points.push_back(pt);
  }
  for (std::size_t i = 1; i < res.points.size(); ++i) {
    if (res.points[i].score.f1 > res.points[res.best_index].score.f1) res.best_index = i;
  }
  return res;
}

std::vector<double> parse_threshold_grid(const std::string& spec) {
  auto to_double = [&](const std::string& s) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw ConfigError("");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("malformed threshold grid: '" + spec + "'");
    }
  };
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw ConfigError("threshold grid must be start:step:stop");
    const double start = to_double(parts[0]);
    const double step = to_double(parts[1]);
    const double stop = to_double(parts[2]);
    if (!(step > 0.0) || stop < start) throw ConfigError("threshold grid must be increasing");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
  } else {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(item));
  }
  if (out.empty()) throw ConfigError("threshold grid is empty");
  for (double& t : out) {
    // Snap roundoff like 0.30000000000000004 so thresholds print cleanly.
    t = std::round(t * 1e12) / 1e12;
    if (t < 0.0 || t > 1.0) throw ConfigError("threshold grid values must lie in [0, 1]");
  }
  return out;
}

std::string format_score_row(const ScoreRow& r) {
  return fmt::format("{},{:g},{:g},{:g},{:.6f},{:.6f},{:.6f},{},{}", r.method, r.sigma, r.delta,
                     r.threshold, r.score.precision, r.score.recall, r.score.f1,
                     r.score.tolerance_px, r.seed);
}

}  // namespace polyedge
