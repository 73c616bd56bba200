#include "oracles/subgradient.hpp"

#include <cmath>
#include <limits>

#include "oracles/dense.hpp"

namespace oracle {

namespace {

double basis_value(const polyedge::Basis2D& b, int k, int l, Eigen::Index r, Eigen::Index c) {
  return b.vertical().vectors(r, k) * b.horizontal().vectors(c, l);
}

}  // namespace

Eigen::VectorXd synthesize_loops(const SmallProblem& pb, const Eigen::VectorXd& x) {
  const auto& b = *pb.basis;
  const Eigen::Index m = b.rows(), n = b.cols(), mn = m * n;
  const int d = b.degree();
  Eigen::VectorXd y = Eigen::VectorXd::Zero(mn);
  for (int k = 0; k <= d; ++k)
    for (int l = 0; l <= d; ++l) {
      const int g = k * (d + 1) + l;
      for (Eigen::Index c = 0; c < n; ++c)
        for (Eigen::Index r = 0; r < m; ++r)
          y(c * m + r) += basis_value(b, k, l, r, c) * x(g * mn + c * m + r);
    }
  return y;
}

double objective_loops(const SmallProblem& pb, const Eigen::VectorXd& x) {
  const auto& b = *pb.basis;
  const Eigen::Index m = b.rows(), n = b.cols(), mn = m * n;
  const int maps = (b.degree() + 1) * (b.degree() + 1);
  double vert = 0.0, horiz = 0.0;
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r + 1 < m; ++r) {
      double s = 0.0;
      for (int g = 0; g < maps; ++g) {
        const double dv = x(g * mn + c * m + r + 1) - x(g * mn + c * m + r);
        s += dv * dv;
      }
      vert += std::sqrt(s);
    }
  for (Eigen::Index c = 0; c + 1 < n; ++c)
    for (Eigen::Index r = 0; r < m; ++r) {
      double s = 0.0;
      for (int g = 0; g < maps; ++g) {
        const double dh = x(g * mn + (c + 1) * m + r) - x(g * mn + c * m + r);
        s += dh * dh;
      }
      horiz += std::sqrt(s);
    }
  return vert + pb.lambda * horiz;
}

Eigen::VectorXd project_feasible(const SmallProblem& pb, const Eigen::VectorXd& x) {
  const auto& b = *pb.basis;
  const Eigen::Index m = b.rows(), n = b.cols(), mn = m * n;
  const int d = b.degree();
  const Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(pb.y.data(), mn);
  const Eigen::VectorXd e = synthesize_loops(pb, x) - yv;
  if (e.norm() <= pb.delta) return x;
  Eigen::VectorXd dpp = Eigen::VectorXd::Zero(mn);
  for (int k = 0; k <= d; ++k)
    for (int l = 0; l <= d; ++l)
      for (Eigen::Index c = 0; c < n; ++c)
        for (Eigen::Index r = 0; r < m; ++r) {
          const double v = basis_value(b, k, l, r, c);
          dpp(c * m + r) += v * v;
        }
  auto resid = [&](double mu) {
    return (e.array() / (1.0 + mu * dpp.array())).matrix().norm();
  };
  double lo = 0.0, hi = 1.0;
  while (resid(hi) > pb.delta) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (resid(mid) > pb.delta ? lo : hi) = mid;
  }
  const double mu = hi;
  const Eigen::VectorXd r = (e.array() / (1.0 + mu * dpp.array())).matrix();
  Eigen::VectorXd z = x;
  for (int k = 0; k <= d; ++k)
    for (int l = 0; l <= d; ++l) {
      const int g = k * (d + 1) + l;
      for (Eigen::Index c = 0; c < n; ++c)
        for (Eigen::Index rr = 0; rr < m; ++rr)
          z(g * mn + c * m + rr) -= mu * basis_value(b, k, l, rr, c) * r(c * m + rr);
    }
  return z;
}

namespace {

Eigen::VectorXd subgradient(const SmallProblem& pb, const Eigen::VectorXd& x) {
  const auto& b = *pb.basis;
  const Eigen::Index m = b.rows(), n = b.cols(), mn = m * n;
  const int maps = (b.degree() + 1) * (b.degree() + 1);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
  Eigen::VectorXd grp(maps);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r + 1 < m; ++r) {
      for (int q = 0; q < maps; ++q) grp(q) = x(q * mn + c * m + r + 1) - x(q * mn + c * m + r);
      const double nrm = grp.norm();
      if (nrm == 0.0) continue;
      for (int q = 0; q < maps; ++q) {
        g(q * mn + c * m + r + 1) += grp(q) / nrm;
        g(q * mn + c * m + r) -= grp(q) / nrm;
      }
    }
  for (Eigen::Index c = 0; c + 1 < n; ++c)
    for (Eigen::Index r = 0; r < m; ++r) {
      for (int q = 0; q < maps; ++q) grp(q) = x(q * mn + (c + 1) * m + r) - x(q * mn + c * m + r);
      const double nrm = grp.norm();
      if (nrm == 0.0) continue;
      for (int q = 0; q < maps; ++q) {
        g(q * mn + (c + 1) * m + r) += pb.lambda * grp(q) / nrm;
        g(q * mn + c * m + r) -= pb.lambda * grp(q) / nrm;
      }
    }
  return g;
}

}  // namespace

SubgradientResult projected_subgradient(const SmallProblem& pb, long iters, double a0) {
  const auto& b = *pb.basis;
  const Eigen::Index mn = b.rows() * b.cols();
  const int maps = (b.degree() + 1) * (b.degree() + 1);
  Eigen::VectorXd x = project_feasible(pb, Eigen::VectorXd::Zero(maps * mn));
  SubgradientResult res{x, objective_loops(pb, x)};
  for (long k = 0; k < iters; ++k) {
    const Eigen::VectorXd g = subgradient(pb, x);
    const double gn = g.norm();
    if (gn == 0.0) break;
    x = project_feasible(pb, x - (a0 / std::sqrt(static_cast<double>(k + 1))) * g / gn);
    const double f = objective_loops(pb, x);
    if (f < res.best_objective) {
      res.best_objective = f;
      res.best_x = x;
    }
  }
  return res;
}

SubgradientResult projected_subgradient_staged(const SmallProblem& pb, long iters, double a0,
                                               int stages, double decay) {
  const auto& b = *pb.basis;
  const Eigen::Index mn = b.rows() * b.cols();
  const int maps = (b.degree() + 1) * (b.degree() + 1);
  Eigen::VectorXd x = project_feasible(pb, Eigen::VectorXd::Zero(maps * mn));
  SubgradientResult res{x, objective_loops(pb, x)};
  const long per_stage = iters / stages;
  double step = a0;
  for (int stage = 0; stage < stages; ++stage, step *= decay) {
    x = res.best_x;
    for (long k = 0; k < per_stage; ++k) {
      const Eigen::VectorXd g = subgradient(pb, x);
      const double gn = g.norm();
      if (gn == 0.0) return res;
      x = project_feasible(pb, x - step * g / gn);
      const double f = objective_loops(pb, x);
      if (f < res.best_objective) {
        res.best_objective = f;
        res.best_x = x;
      }
    }
  }
  return res;
}

DenseCondatState dense_condat_step(const SmallProblem& pb, const DenseCondatState& s, double xi,
                                   double sigma, double rho) {
  const auto& b = *pb.basis;
  const Eigen::Index m = b.rows(), n = b.cols();
  const int maps = (b.degree() + 1) * (b.degree() + 1);
  const Eigen::MatrixXd lv = dense_lv(m, n, b.degree());
  const Eigen::MatrixXd lh = dense_lh_reshape(m, n, b.degree());
  const Eigen::MatrixXd p = dense_synthesis(b);
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(pb.y.data(), m * n);

  // Groups: row r of the (pixels x maps) matrix whose column q is block q.
  auto ball = [&](const Eigen::VectorXd& v, double radius) {
    const Eigen::Index pix = v.size() / maps;
    Eigen::VectorXd out = v;
    for (Eigen::Index r = 0; r < pix; ++r) {
      double s2 = 0.0;
      for (int q = 0; q < maps; ++q) s2 += v(q * pix + r) * v(q * pix + r);
      const double nrm = std::sqrt(s2);
      // p - soft_tau(p)
      const double shrink = nrm > radius ? (1.0 - radius / nrm) : 0.0;
      for (int q = 0; q < maps; ++q) out(q * pix + r) = v(q * pix + r) - shrink * v(q * pix + r);
    }
    return out;
  };

  DenseCondatState o;
  const Eigen::VectorXd xbar =
      s.x - xi * (lv.transpose() * s.u1 + lh.transpose() * s.u2 + p.transpose() * s.u3);
  o.x = rho * xbar + (1.0 - rho) * s.x;
  const Eigen::VectorXd w = 2.0 * xbar - s.x;
  const Eigen::VectorXd p1 = s.u1 + sigma * lv * w;
  o.u1 = rho * ball(p1, 1.0) + (1.0 - rho) * s.u1;
  const Eigen::VectorXd p2 = s.u2 + sigma * lh * w;
  o.u2 = rho * ball(p2, pb.lambda) + (1.0 - rho) * s.u2;
  const Eigen::VectorXd p3 = s.u3 + sigma * p * w;
  Eigen::VectorXd q = p3 / sigma;
  const double dist = (q - y).norm();
  if (dist > pb.delta) q = y + (q - y) * (pb.delta / dist);
  o.u3 = rho * (p3 - sigma * q) + (1.0 - rho) * s.u3;
  return o;
}

}  // namespace oracle
