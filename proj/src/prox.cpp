#include "polyedge/prox.hpp"

#include <algorithm>
#include <cmath>

#include "polyedge/errors.hpp"

namespace polyedge {

DiffField::DiffField(Direction dir, int degree, Eigen::Index image_rows, Eigen::Index image_cols)
    : dir_(dir), degree_(degree), image_rows_(image_rows), image_cols_(image_cols) {
  if (dir == Direction::Vertical && image_rows < 2) {
    throw ShapeError("vertical differences need at least 2 rows");
  }
  if (dir == Direction::Horizontal && image_cols < 2) {
    throw ShapeError("horizontal differences need at least 2 columns");
  }
  data_ = Eigen::MatrixXd::Zero(rows() * cols(), num_maps());
}

GroupThreshold::GroupThreshold(double tau) : tau_(tau) {
  if (!(tau >= 0.0)) throw ConfigError("group threshold must be nonnegative");
}

void diff_into(const CoefficientField& x, DiffField& out) {
  if (out.degree() != x.degree() || out.image_rows() != x.rows() ||
      out.image_cols() != x.cols()) {
    throw ShapeError("difference field does not match coefficient field");
  }
  const Eigen::Index m = x.rows();
  const Eigen::Index n = x.cols();
  for (int g = 0; g < x.num_maps(); ++g) {
    const auto src = x.map(g);
    auto dst = out.map(g);
    if (out.direction() == Direction::Vertical) {
      dst = src.bottomRows(m - 1) - src.topRows(m - 1);
    } else {
      dst = src.rightCols(n - 1) - src.leftCols(n - 1);
    }
  }
}

DiffField diff_vertical(const CoefficientField& x) {
  DiffField d(Direction::Vertical, x.degree(), x.rows(), x.cols());
  diff_into(x, d);
  return d;
}

DiffField diff_horizontal(const CoefficientField& x) {
  DiffField d(Direction::Horizontal, x.degree(), x.rows(), x.cols());
  diff_into(x, d);
  return d;
}

void accumulate_diff_adjoint(const DiffField& d, CoefficientField& acc, double scale) {
  if (acc.degree() != d.degree() || acc.rows() != d.image_rows() ||
      acc.cols() != d.image_cols()) {
    throw ShapeError("difference field does not match coefficient field");
  }
  const Eigen::Index m = acc.rows();
  const Eigen::Index n = acc.cols();
  for (int g = 0; g < d.num_maps(); ++g) {
    const auto src = d.map(g);
    auto dst = acc.map(g);
    // Negative divergence: each difference d[i] = x[i+1] - x[i] contributes
    // +d[i] to x[i+1] and -d[i] to x[i].
    if (d.direction() == Direction::Vertical) {
      dst.bottomRows(m - 1) += scale * src;
      dst.topRows(m - 1) -= scale * src;
    } else {
      dst.rightCols(n - 1) += scale * src;
      dst.leftCols(n - 1) -= scale * src;
    }
  }
}

CoefficientField diff_vertical_adjoint(const DiffField& d) {
  if (d.direction() != Direction::Vertical) throw ShapeError("expected a vertical difference field");
  CoefficientField x(d.degree(), d.image_rows(), d.image_cols());
  accumulate_diff_adjoint(d, x);
  return x;
}

CoefficientField diff_horizontal_adjoint(const DiffField& d) {
  if (d.direction() != Direction::Horizontal) {
    throw ShapeError("expected a horizontal difference field");
  }
  CoefficientField x(d.degree(), d.image_rows(), d.image_cols());
  accumulate_diff_adjoint(d, x);
  return x;
}

namespace {

// Squared l2 norm of every group, accumulated map by map so the reads stay
// contiguous.
Eigen::ArrayXd group_sq_norms(const Eigen::MatrixXd& groups) {
  Eigen::ArrayXd sq = groups.col(0).array().square();
  for (Eigen::Index g = 1; g < groups.cols(); ++g) sq += groups.col(g).array().square();
  return sq;
}

}  // namespace

double norm_l21(const DiffField& d) { return group_sq_norms(d.groups()).sqrt().sum(); }

DiffField group_soft_threshold(const DiffField& d, GroupThreshold t) {
  DiffField out = d;
  auto& z = out.groups();
  const double tau = t.tau();
  for (Eigen::Index r = 0; r < z.rows(); ++r) {
    const double nrm = z.row(r).norm();
    if (nrm <= tau) {
      z.row(r).setZero();
    } else {
      z.row(r) *= 1.0 - tau / nrm;
    }
  }
  return out;
}

void project_groups_onto_ball(Eigen::MatrixXd& groups, double radius) {
  if (!(radius >= 0.0)) throw ConfigError("ball radius must be nonnegative");
  const Eigen::ArrayXd norms = group_sq_norms(groups).sqrt();
  const Eigen::ArrayXd factor = (norms > radius).select(radius / norms, 1.0);
  groups.array().colwise() *= factor;
}

DiffField dual_ball_step(const DiffField& p, double radius) {
  DiffField out = p;
  project_groups_onto_ball(out.groups(), radius);
  return out;
}

Image project_l2_ball(const Image& z, const Image& center, double delta) {
  if (z.rows() != center.rows() || z.cols() != center.cols()) {
    throw ShapeError("ball projection: shape mismatch");
  }
  if (!(delta >= 0.0)) throw ConfigError("ball radius must be nonnegative");
  const double dist = (z - center).norm();
  if (dist <= delta) return z;
  return center + (z - center) * (delta / dist);
}

}  // namespace polyedge
