#include "polyedge/basis.hpp"

#include <cmath>
#include <string>

#include "polyedge/errors.hpp"

namespace polyedge {

Eigen::VectorXd sample_grid(Eigen::Index length) {
  if (length == 1) return Eigen::VectorXd::Zero(1);
  Eigen::VectorXd t(length);
  const double step = 1.0 / static_cast<double>(length - 1);
  for (Eigen::Index n = 0; n < length; ++n) t(n) = static_cast<double>(n) * step;
  t(length - 1) = 1.0;
  return t;
}

namespace {

void check_shape(int degree, Eigen::Index length) {
  if (degree < 0) throw DegenerateBasisError("polynomial degree must be nonnegative");
  if (length < degree + 1) {
    throw DegenerateBasisError("basis length " + std::to_string(length) +
                               " is shorter than K+1 = " + std::to_string(degree + 1));
  }
}

}  // namespace

Basis1D make_standard_basis(int degree, Eigen::Index length) {
  check_shape(degree, length);
  const Eigen::VectorXd t = sample_grid(length);
  Basis1D b;
  b.degree = degree;
  b.kind = BasisKind::Standard;
  b.vectors.resize(length, degree + 1);
  b.vectors.col(0).setOnes();
  for (int k = 1; k <= degree; ++k) b.vectors.col(k) = b.vectors.col(k - 1).cwiseProduct(t);
  return b;
}

Basis1D make_orthonormal_basis(int degree, Eigen::Index length) {
  Basis1D b = make_standard_basis(degree, length);
  b.kind = BasisKind::Orthonormal;
  Eigen::MatrixXd& q = b.vectors;
  for (int k = 0; k <= degree; ++k) {
    const double original = q.col(k).norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < k; ++j) q.col(k) -= q.col(j).dot(q.col(k)) * q.col(j);
    }
    const double residual = q.col(k).norm();
    if (!(residual > 1e-10 * original)) {
      throw DegenerateBasisError("orthonormalization lost rank at degree " + std::to_string(k));
    }
    q.col(k) /= residual;
  }
  return b;
}

Basis1D make_basis(BasisKind kind, int degree, Eigen::Index length) {
  return kind == BasisKind::Orthonormal ? make_orthonormal_basis(degree, length)
                                        : make_standard_basis(degree, length);
}

Basis2D::Basis2D(Basis1D vertical, Basis1D horizontal)
    : vertical_(std::move(vertical)), horizontal_(std::move(horizontal)) {
  if (vertical_.degree != horizontal_.degree) {
    throw ConfigError("vertical degree " + std::to_string(vertical_.degree) +
                      " differs from horizontal degree " + std::to_string(horizontal_.degree));
  }
  const int d = degree();
  const Eigen::Index m = rows();
  const Eigen::Index n = cols();
  images_.resize(m * n, num_maps());
  for (int k = 0; k <= d; ++k) {
    for (int l = 0; l <= d; ++l) {
      Eigen::Map<Eigen::MatrixXd> img(images_.col(map_index(k, l, d)).data(), m, n);
      img.noalias() = vertical_.vectors.col(k) * horizontal_.vectors.col(l).transpose();
    }
  }
}

Eigen::MatrixXd Basis2D::image(int k, int l) const {
  return Eigen::Map<const Eigen::MatrixXd>(images_.col(map_index(k, l, degree())).data(), rows(),
                                           cols());
}

Basis2D make_basis2d(Basis1D vertical, Basis1D horizontal) {
  return Basis2D(std::move(vertical), std::move(horizontal));
}

}  // namespace polyedge
