#pragma once

#include <Eigen/Core>

namespace polyedge {

/// The primal variable: (K+1)^2 parameter maps of size M x N.
///
/// Storage is a single (M*N) x (K+1)^2 matrix whose column g holds vec(x_{kl})
/// for g = k*(K+1)+l. Since Eigen is column-major, `flat()` is the block
/// vector [vec(x_00); ...; vec(x_KK)] used by the synthesis operator.
class CoefficientField {
 public:
  CoefficientField() = default;
  CoefficientField(int degree, Eigen::Index rows, Eigen::Index cols);

  static CoefficientField zeros(int degree, Eigen::Index rows, Eigen::Index cols) {
    return CoefficientField(degree, rows, cols);
  }

  /// Inverse of `flat()`: throws ShapeError when the vector length is not
  /// (K+1)^2 * M * N.
  static CoefficientField unflatten(const Eigen::VectorXd& v, int degree, Eigen::Index rows,
                                    Eigen::Index cols);

  int degree() const { return degree_; }
  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  int num_maps() const { return (degree_ + 1) * (degree_ + 1); }

  Eigen::Map<Eigen::MatrixXd> map(int g) {
    return {data_.col(g).data(), rows_, cols_};
  }
  Eigen::Map<const Eigen::MatrixXd> map(int g) const {
    return {data_.col(g).data(), rows_, cols_};
  }
  Eigen::Map<Eigen::MatrixXd> map(int k, int l) { return map(k * (degree_ + 1) + l); }
  Eigen::Map<const Eigen::MatrixXd> map(int k, int l) const { return map(k * (degree_ + 1) + l); }

  /// Pixels x maps view; row r is the parameter vector at pixel r (column-major).
  Eigen::MatrixXd& stacked() { return data_; }
  const Eigen::MatrixXd& stacked() const { return data_; }

  Eigen::VectorXd flatten() const;

  bool same_shape(const CoefficientField& o) const {
    return degree_ == o.degree_ && rows_ == o.rows_ && cols_ == o.cols_;
  }

  double norm() const { return data_.norm(); }

  CoefficientField& operator+=(const CoefficientField& o);
  CoefficientField& operator-=(const CoefficientField& o);
  CoefficientField& operator*=(double s);

 private:
  int degree_ = 0;
  Eigen::Index rows_ = 0;
  Eigen::Index cols_ = 0;
  Eigen::MatrixXd data_;
};

}  // namespace polyedge
