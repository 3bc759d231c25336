#include "graphon/bspline.hpp"

#include <cmath>
#include <stdexcept>

#include "graphon/errors.hpp"

namespace graphon {

namespace {

constexpr double kFeasTol = 1e-8;

void check_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error(std::string(name) + " outside [0,1]");
}

}  // namespace

KnotGrid make_knots(int K) {
  if (K < 3) throw InputError("knot grid needs K >= 3");
  KnotGrid g;
  g.K = K;
  g.tau.resize(K);
  for (int j = 0; j < K; ++j) g.tau[j] = static_cast<double>(j) / (K - 1);
  const double h = 1.0 / (K - 1);
  for (int j = 1; j < K; ++j)
    if (std::abs(g.tau[j] - g.tau[j - 1] - h) > 1e-12) throw InputError("knot spacing not uniform");
  return g;
}

BasisPoint basis_point(const KnotGrid& knots, double u) {
  const int cells = knots.K - 1;
  const double t = u * cells;
  int cell = static_cast<int>(t);
  if (cell >= cells) cell = cells - 1;
  if (cell < 0) cell = 0;
  const double frac = t - cell;
  return BasisPoint{cell, 1.0 - frac, frac};
}

Eigen::RowVectorXd basis_row(const KnotGrid& knots, double u) {
  check_unit(u, "u");
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(knots.K);
  const BasisPoint b = basis_point(knots, u);
  row[b.cell] = b.w0;
  row[b.cell + 1] = b.w1;
  return row;
}

Eigen::RowVectorXd design_row(const KnotGrid& knots, double ui, double uj) {
  const Eigen::RowVectorXd bi = basis_row(knots, ui);
  const Eigen::RowVectorXd bj = basis_row(knots, uj);
  Eigen::RowVectorXd row(knots.K * knots.K);
  for (int p = 0; p < knots.K; ++p) row.segment(p * knots.K, knots.K) = bi[p] * bj;
  return row;
}

Eigen::RowVectorXd integral_vector(const KnotGrid& knots) {
  Eigen::RowVectorXd a = Eigen::RowVectorXd::Constant(knots.K, 1.0 / (knots.K - 1));
  a[0] *= 0.5;
  a[knots.K - 1] *= 0.5;
  return a;
}

Eigen::RowVectorXd spline_marginal_row(const KnotGrid& knots, double u) {
  const Eigen::RowVectorXd b = basis_row(knots, u);
  const Eigen::RowVectorXd a = integral_vector(knots);
  Eigen::RowVectorXd row(knots.K * knots.K);
  for (int p = 0; p < knots.K; ++p) row.segment(p * knots.K, knots.K) = b[p] * a;
  return row;
}

ConstraintMatrices constraint_matrices(const KnotGrid& knots) {
  const int K = knots.K;
  const int n = K * K;
  const Eigen::RowVectorXd a = integral_vector(knots);

  ConstraintMatrices cm;
  const int n_mono = K - 1;
  cm.C = Eigen::MatrixXd::Zero(n_mono + 2 * n, n);
  cm.b = Eigen::VectorXd::Zero(n_mono + 2 * n);

  // Marginal monotonicity at the knots: [(B(tau_l) - B(tau_{l-1})) (x) A] theta >= 0.
  for (int l = 1; l < K; ++l) {
    cm.C.block(l - 1, l * K, 1, K) = a;
    cm.C.block(l - 1, (l - 1) * K, 1, K) -= a;
  }
  // Box: theta >= 0 and -theta >= -1.
  for (int i = 0; i < n; ++i) {
    cm.C(n_mono + i, i) = 1.0;
    cm.C(n_mono + n + i, i) = -1.0;
    cm.b[n_mono + n + i] = -1.0;
  }

  cm.D = Eigen::MatrixXd::Zero(K * (K - 1) / 2, n);
  int r = 0;
  for (int p = 0; p < K; ++p)
    for (int q = p + 1; q < K; ++q) {
      cm.D(r, p * K + q) = 1.0;
      cm.D(r, q * K + p) = -1.0;
      ++r;
    }
  return cm;
}

SplineGraphon::SplineGraphon(KnotGrid knots, Eigen::VectorXd theta)
    : knots_(std::move(knots)), theta_(std::move(theta)) {
  const int K = knots_.K;
  if (theta_.size() != static_cast<Eigen::Index>(K) * K)
    throw InputError("coefficient vector must have length K^2");

  coef_.resize(K, K);
  for (int p = 0; p < K; ++p)
    for (int q = 0; q < K; ++q) coef_(p, q) = theta_[p * K + q];

  for (int p = 0; p < K; ++p)
    for (int q = 0; q < K; ++q) {
      if (std::abs(coef_(p, q) - coef_(q, p)) > kFeasTol)
        throw InputError("spline coefficients are not symmetric");
      if (coef_(p, q) < -kFeasTol || coef_(p, q) > 1.0 + kFeasTol)
        throw InputError("spline coefficients outside [0,1]");
    }

  const Eigen::RowVectorXd a = integral_vector(knots_);
  marginal_coef_ = coef_ * a.transpose();
  for (int l = 1; l < K; ++l)
    if (marginal_coef_[l] - marginal_coef_[l - 1] < -kFeasTol)
      throw InputError("spline marginal is not non-decreasing at the knots");
}

double SplineGraphon::value(double u, double v) const {
  const BasisPoint bu = basis_point(knots_, u);
  const BasisPoint bv = basis_point(knots_, v);
  return bu.w0 * (bv.w0 * coef_(bu.cell, bv.cell) + bv.w1 * coef_(bu.cell, bv.cell + 1)) +
         bu.w1 * (bv.w0 * coef_(bu.cell + 1, bv.cell) + bv.w1 * coef_(bu.cell + 1, bv.cell + 1));
}

void SplineGraphon::value_row(double u, const double* vs, int count, double* out) const {
  const BasisPoint bu = basis_point(knots_, u);
  // One row combination of Theta, then 2-point dots per v.
  const Eigen::RowVectorXd m = bu.w0 * coef_.row(bu.cell) + bu.w1 * coef_.row(bu.cell + 1);
  for (int j = 0; j < count; ++j) {
    const BasisPoint bv = basis_point(knots_, vs[j]);
    out[j] = bv.w0 * m[bv.cell] + bv.w1 * m[bv.cell + 1];
  }
}

std::optional<double> SplineGraphon::closed_form_marginal(double u) const {
  const BasisPoint b = basis_point(knots_, u);
  return b.w0 * marginal_coef_[b.cell] + b.w1 * marginal_coef_[b.cell + 1];
}

}  // namespace graphon
