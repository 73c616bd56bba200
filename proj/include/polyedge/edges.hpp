#pragma once

#include "polyedge/coefficients.hpp"
#include "polyedge/image.hpp"
#include "polyedge/synthesis.hpp"

namespace polyedge {

/// Nonnegative gradient magnitudes. When `normalized` is set the maximum is 1
/// (or the map is identically zero).
struct GradMap {
  Image values;
  bool normalized = false;
};

struct EdgeMap {
  Mask mask;
  double threshold_used = 0.0;

  Eigen::Index count() const { return mask.cast<Eigen::Index>().sum(); }
};

/// Raw Sobel magnitude sqrt(gx^2 + gy^2) with replicate padding, kernel
/// gx = [[-1,0,1],[-2,0,2],[-1,0,1]] (x runs along columns), gy = gx^T.
/// Requires at least 3x3.
Image sobel_response(const Image& img);

/// Divides by the maximum; an all-zero map stays zero.
GradMap normalize(Image values);

/// Normalized Sobel magnitude.
GradMap sobel_magnitude(const Image& img);

/// mask = values >= t. Throws ConfigError if t is outside [0,1] or the map is
/// not normalized.
EdgeMap threshold_map(const GradMap& g, double t);

/// Sobel of the synthesized image P xhat, normalized.
GradMap synthesis_gradient(const CoefficientField& xhat, const SynthesisOperator& p);
/// Pixelwise l2 norm across the raw Sobel magnitudes of every parameter map,
/// normalized.
GradMap parameter_map_gradient(const CoefficientField& xhat);

EdgeMap edges_from_synthesis(const CoefficientField& xhat, const SynthesisOperator& p, double t);
EdgeMap edges_from_parameter_maps(const CoefficientField& xhat, double t);

}  // namespace polyedge
