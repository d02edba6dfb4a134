#pragma once

// Independent test-side oracles. These deliberately avoid the library's
// computation paths: absolute values come from a direct eigen/SVD route, cone
// scans from bisection over the membership predicate, and orthogonality from
// brute-force grids.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "absorder/space.hpp"

namespace oracles {

using absorder::Cplx;
using absorder::Element;
using absorder::Mat;
using absorder::SpaceModel;

// |v| of a self-adjoint matrix via its own eigendecomposition U |Lambda| U*
// (the library computes (v* v)^{1/2} instead).
inline Mat abs_selfadjoint_eig(const Mat& v) {
  Eigen::SelfAdjointEigenSolver<Mat> es(v);
  return es.eigenvectors() * es.eigenvalues().cwiseAbs().asDiagonal() *
         es.eigenvectors().adjoint();
}

// |v| of a rectangular payload via the SVD polar factor W Sigma W*.
inline Mat abs_rectangular_svd(const Mat& v) {
  Eigen::JacobiSVD<Mat> svd(v, Eigen::ComputeFullV);
  Eigen::VectorXd sigma = Eigen::VectorXd::Zero(v.cols());
  sigma.head(svd.singularValues().size()) = svd.singularValues();
  return svd.matrixV() * sigma.asDiagonal() * svd.matrixV().adjoint();
}

// Order-unit norm by bisection on the membership predicate k e +- v >= 0.
inline double norm_scan(const SpaceModel& model, const Element& v,
                        double hi = 64.0) {
  const Element e = absorder::unit_element(model, v.level.m);
  auto feasible = [&](double k) {
    return absorder::in_cone(model, k * e - v) &&
           absorder::in_cone(model, k * e + v);
  };
  double lo = 0.0;
  while (!feasible(hi)) hi *= 2.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

// l(v) by scanning feasible u = v^- + t e and confirming t = 0 is minimal.
inline double lower_bound_grid(const SpaceModel& model, const Element& v) {
  const Element e = absorder::unit_element(model, v.level.m);
  auto parts = absorder::pos_neg_parts(model, v);
  double best = absorder::order_unit_norm(model, parts.second);
  for (double t = 0.0; t <= 2.0; t += 0.125) {
    const Element u = parts.second + t * e;
    if (absorder::in_cone(model, u) && absorder::in_cone(model, u + v))
      best = std::min(best, absorder::order_unit_norm(model, u));
  }
  return best;
}

// Brute-force infty-orthogonality over a dense (alpha, beta) grid.
inline bool perp_infty_grid(const SpaceModel& model, const Element& u,
                            const Element& v, double tol = 1e-7) {
  for (double a = -3.0; a <= 3.0; a += 0.375) {
    for (double b = -3.0; b <= 3.0; b += 0.375) {
      const double lhs = absorder::order_unit_norm(model, a * u + b * v);
      const double rhs = std::max(std::abs(a) * absorder::order_unit_norm(model, u),
                                  std::abs(b) * absorder::order_unit_norm(model, v));
      if (std::abs(lhs - rhs) > tol * std::max(1.0, rhs)) return false;
    }
  }
  return true;
}

// Product orthogonality oracle: u v = 0 (hermitian) / min(u, v) = 0 (lattice).
inline bool product_orthogonal(const SpaceModel& model, const Element& u,
                               const Element& v, double tol = 1e-9) {
  if (model.is_lattice())
    return u.coords.real().cwiseMin(v.coords.real()).cwiseAbs().maxCoeff() <= tol;
  return (u.coords * v.coords).norm() <= tol;
}

// Scalar criterion for absolute compatibility of a commuting pair with joint
// eigenvalues (s_i, t_i) in [0, 1]: every pair needs min = 0 or max = 1.
inline bool compat_scalar_criterion(const Eigen::VectorXd& s,
                                    const Eigen::VectorXd& t, double tol = 1e-9) {
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double lo = std::min(s(i), t(i));
    const double hi = std::max(s(i), t(i));
    if (lo > tol && hi < 1.0 - tol) return false;
  }
  return true;
}

}  // namespace oracles
