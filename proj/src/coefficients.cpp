#include "polyedge/coefficients.hpp"

#include "polyedge/errors.hpp"

namespace polyedge {

CoefficientField::CoefficientField(int degree, Eigen::Index rows, Eigen::Index cols)
    : degree_(degree), rows_(rows), cols_(cols),
      data_(Eigen::MatrixXd::Zero(rows * cols, (degree + 1) * (degree + 1))) {
  if (degree < 0 || rows < 1 || cols < 1) throw ShapeError("invalid coefficient field shape");
}

CoefficientField CoefficientField::unflatten(const Eigen::VectorXd& v, int degree,
                                             Eigen::Index rows, Eigen::Index cols) {
  CoefficientField f(degree, rows, cols);
  if (v.size() != f.data_.size()) throw ShapeError("flattened coefficient length mismatch");
  f.data_ = Eigen::Map<const Eigen::MatrixXd>(v.data(), rows * cols, f.num_maps());
  return f;
}

Eigen::VectorXd CoefficientField::flatten() const {
  return Eigen::Map<const Eigen::VectorXd>(data_.data(), data_.size());
}

CoefficientField& CoefficientField::operator+=(const CoefficientField& o) {
  if (!same_shape(o)) throw ShapeError("coefficient field shape mismatch");
  data_ += o.data_;
  return *this;
}

CoefficientField& CoefficientField::operator-=(const CoefficientField& o) {
  if (!same_shape(o)) throw ShapeError("coefficient field shape mismatch");
  data_ -= o.data_;
  return *this;
}

CoefficientField& CoefficientField::operator*=(double s) {
  data_ *= s;
  return *this;
}

}  // namespace polyedge
