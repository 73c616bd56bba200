#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace polyedge {

enum class BasisKind { Standard, Orthonormal };

/// K+1 sampled polynomials of common length, stored as the columns of
/// `vectors` (length x (K+1)). Column k spans degree k.
struct Basis1D {
  int degree = 0;
  BasisKind kind = BasisKind::Standard;
  Eigen::MatrixXd vectors;

  Eigen::Index length() const { return vectors.rows(); }
};

/// Sample grid t_n = (n-1)/(length-1) on [0,1]; length 1 gives {0}.
Eigen::VectorXd sample_grid(Eigen::Index length);

/// Monomials t^k on the [0,1] sample grid. Throws DegenerateBasisError when
/// length < K+1.
Basis1D make_standard_basis(int degree, Eigen::Index length);

/// Modified Gram-Schmidt (two passes) over the monomials in increasing degree.
/// Deterministic. Throws DegenerateBasisError on numerical rank loss.
Basis1D make_orthonormal_basis(int degree, Eigen::Index length);

Basis1D make_basis(BasisKind kind, int degree, Eigen::Index length);

/// Separable 2D basis p_{kl} = p_{k,v} * p_{l,h}^T, (K+1)^2 images of size
/// M x N. Images are stored flattened: column g = k*(K+1)+l of `images` holds
/// vec(p_{kl}) (column-major).
class Basis2D {
 public:
  Basis2D(Basis1D vertical, Basis1D horizontal);

  int degree() const { return vertical_.degree; }
  Eigen::Index rows() const { return vertical_.length(); }
  Eigen::Index cols() const { return horizontal_.length(); }
  int num_maps() const { return (degree() + 1) * (degree() + 1); }

  const Basis1D& vertical() const { return vertical_; }
  const Basis1D& horizontal() const { return horizontal_; }

  /// (M*N) x (K+1)^2, one flattened image per column in (k,l) order.
  const Eigen::MatrixXd& flat() const { return images_; }

  /// p_{kl} as an M x N matrix (copy).
  Eigen::MatrixXd image(int k, int l) const;

  static int map_index(int k, int l, int degree) { return k * (degree + 1) + l; }

 private:
  Basis1D vertical_;
  Basis1D horizontal_;
  Eigen::MatrixXd images_;
};

/// Throws ConfigError on degree mismatch.
Basis2D make_basis2d(Basis1D vertical, Basis1D horizontal);

}  // namespace polyedge
