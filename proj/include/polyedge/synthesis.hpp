#pragma once

#include "polyedge/basis.hpp"
#include "polyedge/coefficients.hpp"
#include "polyedge/image.hpp"

namespace polyedge {

/// The overcomplete synthesis operator P = [diag(vec p_00) | ... | diag(vec p_KK)].
/// Only the basis images are stored; apply and adjoint are elementwise.
class SynthesisOperator {
 public:
  explicit SynthesisOperator(Basis2D basis) : basis_(std::move(basis)) {}

  const Basis2D& basis() const { return basis_; }
  int degree() const { return basis_.degree(); }
  Eigen::Index rows() const { return basis_.rows(); }
  Eigen::Index cols() const { return basis_.cols(); }

  /// y = sum_{kl} p_kl .* x_kl
  Image apply(const CoefficientField& x) const;
  /// map (k,l) = p_kl .* y
  CoefficientField adjoint(const Image& y) const;
  /// Writes P^T y into `out`, which must already match the basis.
  void adjoint_into(const Image& y, CoefficientField& out) const;

  /// max over pixels of sum_{kl} p_kl[m,n]^2, i.e. the largest entry of the
  /// diagonal matrix P P^T.
  double max_diag_ppt() const;
  /// diag(P P^T) as an M x N image.
  Image diag_ppt() const;

 private:
  Basis2D basis_;
};

inline Image synth_apply(const SynthesisOperator& p, const CoefficientField& x) {
  return p.apply(x);
}
inline CoefficientField synth_adjoint(const SynthesisOperator& p, const Image& y) {
  return p.adjoint(y);
}
inline double max_diag_ppt(const SynthesisOperator& p) { return p.max_diag_ppt(); }

}  // namespace polyedge
