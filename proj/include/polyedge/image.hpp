#pragma once

#include <Eigen/Core>

namespace polyedge {

/// Dense grayscale intensity field, M rows by N columns, nominal range 0-255.
/// Column-major storage, so `Image::data()` is exactly vec(y).
using Image = Eigen::MatrixXd;

/// Binary mask stored as bytes (0 or 1), same layout as Image.
using Mask = Eigen::Matrix<unsigned char, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace polyedge
