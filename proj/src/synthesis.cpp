#include "polyedge/synthesis.hpp"

#include "polyedge/errors.hpp"

namespace polyedge {

Image SynthesisOperator::apply(const CoefficientField& x) const {
  if (x.degree() != degree() || x.rows() != rows() || x.cols() != cols()) {
    throw ShapeError("coefficient field does not match the synthesis basis");
  }
  const auto& p = basis_.flat();
  const auto& c = x.stacked();
  Eigen::VectorXd y = p.col(0).cwiseProduct(c.col(0));
  for (Eigen::Index g = 1; g < p.cols(); ++g) y.array() += p.col(g).array() * c.col(g).array();
  return Eigen::Map<Image>(y.data(), rows(), cols());
}

void SynthesisOperator::adjoint_into(const Image& y, CoefficientField& out) const {
  if (y.rows() != rows() || y.cols() != cols()) {
    throw ShapeError("image does not match the synthesis basis");
  }
  if (out.degree() != degree() || out.rows() != rows() || out.cols() != cols()) {
    throw ShapeError("coefficient field does not match the synthesis basis");
  }
  const Eigen::Map<const Eigen::VectorXd> v(y.data(), y.size());
  out.stacked().array() = basis_.flat().array().colwise() * v.array();
}

CoefficientField SynthesisOperator::adjoint(const Image& y) const {
  CoefficientField x(degree(), rows(), cols());
  adjoint_into(y, x);
  return x;
}

Image SynthesisOperator::diag_ppt() const {
  const auto& p = basis_.flat();
  Eigen::VectorXd d = p.col(0).array().square();
  for (Eigen::Index g = 1; g < p.cols(); ++g) d.array() += p.col(g).array().square();
  return Eigen::Map<Image>(d.data(), rows(), cols());
}

double SynthesisOperator::max_diag_ppt() const {
  return diag_ppt().maxCoeff();
}

}  // namespace polyedge
