#include "polyedge/edges.hpp"

#include <algorithm>
#include <cmath>

#include "polyedge/errors.hpp"

namespace polyedge {

Image sobel_response(const Image& img) {
  const Eigen::Index m = img.rows();
  const Eigen::Index n = img.cols();
  if (m < 3 || n < 3) throw ShapeError("Sobel needs an image of at least 3x3");
  auto at = [&](Eigen::Index r, Eigen::Index c) {
    return img(std::clamp<Eigen::Index>(r, 0, m - 1), std::clamp<Eigen::Index>(c, 0, n - 1));
  };
  Image out(m, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < m; ++r) {
      const double gx = (at(r - 1, c + 1) + 2.0 * at(r, c + 1) + at(r + 1, c + 1)) -
                        (at(r - 1, c - 1) + 2.0 * at(r, c - 1) + at(r + 1, c - 1));
      const double gy = (at(r + 1, c - 1) + 2.0 * at(r + 1, c) + at(r + 1, c + 1)) -
                        (at(r - 1, c - 1) + 2.0 * at(r - 1, c) + at(r - 1, c + 1));
      out(r, c) = std::sqrt(gx * gx + gy * gy);
    }
  }
  return out;
}

GradMap normalize(Image values) {
  const double mx = values.size() ? values.maxCoeff() : 0.0;
  if (mx > 0.0) values /= mx;
  return {std::move(values), true};
}

GradMap sobel_magnitude(const Image& img) { return normalize(sobel_response(img)); }

EdgeMap threshold_map(const GradMap& g, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("threshold must lie in [0, 1]");
  if (!g.normalized) throw ConfigError("threshold_map expects a normalized gradient map");
  EdgeMap e;
  e.mask = (g.values.array() >= t).cast<unsigned char>();
  e.threshold_used = t;
  return e;
}

GradMap synthesis_gradient(const CoefficientField& xhat, const SynthesisOperator& p) {
  return sobel_magnitude(p.apply(xhat));
}

GradMap parameter_map_gradient(const CoefficientField& xhat) {
  Image acc = Image::Zero(xhat.rows(), xhat.cols());
  for (int g = 0; g < xhat.num_maps(); ++g) {
    acc += sobel_response(xhat.map(g)).array().square().matrix();
  }
  return normalize(acc.cwiseSqrt());
}

EdgeMap edges_from_synthesis(const CoefficientField& xhat, const SynthesisOperator& p, double t) {
  return threshold_map(synthesis_gradient(xhat, p), t);
}

EdgeMap edges_from_parameter_maps(const CoefficientField& xhat, double t) {
  return threshold_map(parameter_map_gradient(xhat), t);
}

}  // namespace polyedge
