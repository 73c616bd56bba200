#pragma once

#include <string>

#include "polyedge/coefficients.hpp"
#include "polyedge/edges.hpp"
#include "polyedge/image.hpp"

namespace polyedge {

/// Reads a P2 (ASCII) or P5 (binary) PGM with maxval 255 into reals 0-255.
/// Throws IoError on malformed headers, other maxvals or oversized images.
Image read_image(const std::string& path);
Image parse_pgm(const std::string& bytes);

/// Binary P5; values are clamped to [0,255] and rounded half away from zero.
void write_image(const std::string& path, const Image& img);
std::string encode_pgm(const Image& img, bool ascii = false);

/// Edge pixels white (255), background black.
void write_mask(const std::string& path, const EdgeMap& edges);
/// Gradient map scaled so that 1 maps to 255.
void write_gradmap(const std::string& path, const GradMap& g);

/// |x_kl| tiled as a (K+1) x (K+1) grid (row k, column l) with one min-max
/// scaling shared across all tiles.
Image mosaic(const CoefficientField& x);
void write_mosaic(const std::string& path, const CoefficientField& x);

}  // namespace polyedge
