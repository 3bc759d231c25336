#pragma once

#include <vector>

#include "graphon/graphon.hpp"
#include "graphon/types.hpp"

namespace graphon {

// Degree-ordered adjacency matrix viewed as a block-constant graphon on the
// unit square.  Ties in the degree ordering are broken by ascending original
// node index, which keeps the ordering deterministic.
class EmpiricalGraphon final : public Graphon {
 public:
  explicit EmpiricalGraphon(const AdjacencyMatrix& y);

  // Block lookup y_sorted(ceil(uN), ceil(vN)); u=0 maps to the first row.
  double value(double u, double v) const override;

  // degree(selected sorted row) / N.
  std::optional<double> closed_form_marginal(double u) const override;

  std::string describe() const override { return "empirical"; }

  int n() const { return static_cast<int>(sorted_y_.rows()); }
  const Eigen::MatrixXd& sorted_matrix() const { return sorted_y_; }
  // sigma_hat[l] = original index of the node in sorted position l (0-based).
  const std::vector<int>& sigma_hat() const { return sigma_hat_; }
  // Indexed by original node: rank(degree(j)) / (N+1).
  const LatentPositions& u_hat_emp() const { return u_hat_emp_; }
  int sorted_degree(int row) const { return sorted_degrees_[static_cast<std::size_t>(row)]; }
  int original_degree(int node) const { return degrees_[static_cast<std::size_t>(node)]; }

 private:
  int row_index(double u) const;

  Eigen::MatrixXd sorted_y_;
  std::vector<int> sigma_hat_;
  std::vector<int> degrees_;         // by original node
  std::vector<int> sorted_degrees_;  // by sorted row
  LatentPositions u_hat_emp_;
};

EmpiricalGraphon order_by_degree(const AdjacencyMatrix& y);

double empirical_graphon_value(const EmpiricalGraphon& eg, double u, double v);
double empirical_marginal(const EmpiricalGraphon& eg, double u);

// Closed-form approximation of the posterior of U_k from the marginal degree
// profile: g(u)^degree(k) (1-g(u))^(N-degree(k)) on the grid, normalized by
// the trapezoid rule.  node is the 0-based original index.
DensityOnGrid marginal_posterior_empirical(const EmpiricalGraphon& eg, int node,
                                           int grid_size = 201);

}  // namespace graphon
