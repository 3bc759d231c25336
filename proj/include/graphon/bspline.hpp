#pragma once

#include <Eigen/Dense>

#include "graphon/graphon.hpp"

namespace graphon {

// Equidistant inner knots tau_1=0 .. tau_K=1 for the linear hat basis.
struct KnotGrid {
  int K = 0;
  Eigen::VectorXd tau;
};

KnotGrid make_knots(int K);

// Cell index and the two hat weights at u; basis_row(u) has value w0 at
// `cell` and w1 at `cell+1` (0-based), everything else zero.
struct BasisPoint {
  int cell;
  double w0;
  double w1;
};

BasisPoint basis_point(const KnotGrid& knots, double u);

// Normalized hat-function values: at most two non-zeros summing to 1.
Eigen::RowVectorXd basis_row(const KnotGrid& knots, double u);

// Kronecker product B(u_i) (x) B(u_j); at most four non-zeros.
Eigen::RowVectorXd design_row(const KnotGrid& knots, double ui, double uj);

// Componentwise integrals of the hats: (1/(K-1)) * (1/2, 1, ..., 1, 1/2).
Eigen::RowVectorXd integral_vector(const KnotGrid& knots);

// B(u) (x) A; the dot product with theta gives the marginal g(u).
Eigen::RowVectorXd spline_marginal_row(const KnotGrid& knots, double u);

// Linear constraints on theta: C theta >= b stacks the K-1 marginal
// monotonicity rows and the box rows 0 <= theta <= 1; D theta = 0 holds the
// K(K-1)/2 symmetry conditions theta_pq = theta_qp.
struct ConstraintMatrices {
  Eigen::MatrixXd C;
  Eigen::VectorXd b;
  Eigen::MatrixXd D;
};

ConstraintMatrices constraint_matrices(const KnotGrid& knots);

// Piecewise-bilinear graphon w(u,v) = [B(u) (x) B(v)] theta with theta laid
// out row-major as theta_pq at index p*K+q.
class SplineGraphon final : public Graphon {
 public:
  SplineGraphon(KnotGrid knots, Eigen::VectorXd theta);

  double value(double u, double v) const override;
  void value_row(double u, const double* vs, int count, double* out) const override;
  std::optional<double> closed_form_marginal(double u) const override;
  std::string describe() const override { return "spline"; }

  const KnotGrid& knots() const { return knots_; }
  const Eigen::VectorXd& theta() const { return theta_; }
  // theta as the K x K matrix Theta with Theta(p,q) = theta_pq.
  const Eigen::MatrixXd& coefficient_matrix() const { return coef_; }

 private:
  KnotGrid knots_;
  Eigen::VectorXd theta_;
  Eigen::MatrixXd coef_;
  Eigen::VectorXd marginal_coef_;  // Theta * A^T, so g(u) = B(u) . marginal_coef_
};

}  // namespace graphon
