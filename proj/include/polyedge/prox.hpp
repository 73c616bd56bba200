#pragma once

#include <Eigen/Core>

#include "polyedge/coefficients.hpp"
#include "polyedge/image.hpp"

namespace polyedge {

enum class Direction { Vertical, Horizontal };

/// Forward differences of every parameter map along one direction.
///
/// Vertical fields live on an (M-1) x N lattice, horizontal ones on
/// M x (N-1). `groups()` is a (lattice pixels) x (K+1)^2 matrix: row r is the
/// group of differenced parameters at lattice pixel r (column-major), column g
/// is the vectorized difference map of parameter map g.
class DiffField {
 public:
  DiffField() = default;
  DiffField(Direction dir, int degree, Eigen::Index image_rows, Eigen::Index image_cols);

  Direction direction() const { return dir_; }
  int degree() const { return degree_; }
  Eigen::Index image_rows() const { return image_rows_; }
  Eigen::Index image_cols() const { return image_cols_; }
  Eigen::Index rows() const { return dir_ == Direction::Vertical ? image_rows_ - 1 : image_rows_; }
  Eigen::Index cols() const { return dir_ == Direction::Vertical ? image_cols_ : image_cols_ - 1; }
  int num_maps() const { return (degree_ + 1) * (degree_ + 1); }

  Eigen::MatrixXd& groups() { return data_; }
  const Eigen::MatrixXd& groups() const { return data_; }

  Eigen::Map<const Eigen::MatrixXd> map(int g) const { return {data_.col(g).data(), rows(), cols()}; }
  Eigen::Map<Eigen::MatrixXd> map(int g) { return {data_.col(g).data(), rows(), cols()}; }

  bool same_shape(const DiffField& o) const {
    return dir_ == o.dir_ && degree_ == o.degree_ && image_rows_ == o.image_rows_ &&
           image_cols_ == o.image_cols_;
  }

 private:
  Direction dir_ = Direction::Vertical;
  int degree_ = 0;
  Eigen::Index image_rows_ = 0;
  Eigen::Index image_cols_ = 0;
  Eigen::MatrixXd data_;
};

/// Nonnegative group threshold.
class GroupThreshold {
 public:
  explicit GroupThreshold(double tau);
  double tau() const { return tau_; }

 private:
  double tau_;
};

/// L_v x: out[m,n] = x[m+1,n] - x[m,n] per map. Requires M >= 2.
DiffField diff_vertical(const CoefficientField& x);
/// L_h reshape(x): out[m,n] = x[m,n+1] - x[m,n] per map. Requires N >= 2.
/// The reshape is a permutation of pixels, so it is folded into the indexing.
DiffField diff_horizontal(const CoefficientField& x);

CoefficientField diff_vertical_adjoint(const DiffField& d);
CoefficientField diff_horizontal_adjoint(const DiffField& d);

/// Adds the adjoint of `d` into `acc` without allocating.
void accumulate_diff_adjoint(const DiffField& d, CoefficientField& acc, double scale = 1.0);
/// Writes the forward difference of `x` into `out`, which must already have
/// the right shape.
void diff_into(const CoefficientField& x, DiffField& out);

/// Sum over lattice pixels of the l2 norm of the group at that pixel.
double norm_l21(const DiffField& d);

/// Per group v: v * max(1 - tau/||v||, 0). Zero groups stay zero.
DiffField group_soft_threshold(const DiffField& d, GroupThreshold t);

/// p - soft(p, radius), computed as the groupwise projection onto the l2 ball
/// of the given radius.
DiffField dual_ball_step(const DiffField& p, double radius);
/// In-place variant of dual_ball_step.
void project_groups_onto_ball(Eigen::MatrixXd& groups, double radius);

/// Nearest point to z in {w : ||w - center||_2 <= delta}.
Image project_l2_ball(const Image& z, const Image& center, double delta);

}  // namespace polyedge
