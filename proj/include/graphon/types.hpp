#pragma once

#include <Eigen/Dense>
#include <vector>

namespace graphon {

// Latent node positions u_1..u_N, all strictly inside (0,1).
struct LatentPositions {
  Eigen::VectorXd u;

  LatentPositions() = default;
  explicit LatentPositions(Eigen::VectorXd values);

  int size() const { return static_cast<int>(u.size()); }
  double operator[](int i) const { return u[i]; }
};

// Symmetric binary relation with zero diagonal, plus the external node
// labels it was built from.  Entries are stored as 0.0/1.0 doubles so the
// likelihood code can use them directly.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix(Eigen::MatrixXd y, std::vector<long long> labels);

  // Labels nodes 0..N-1.
  static AdjacencyMatrix unlabeled(Eigen::MatrixXd y);

  int n() const { return static_cast<int>(y_.rows()); }
  double operator()(int i, int j) const { return y_(i, j); }
  const Eigen::MatrixXd& matrix() const { return y_; }
  const std::vector<long long>& labels() const { return labels_; }

  // Index of an external label, or -1 when absent.
  int index_of(long long label) const;

 private:
  Eigen::MatrixXd y_;
  std::vector<long long> labels_;
};

// Row sums of the adjacency matrix.
std::vector<int> degree(const AdjacencyMatrix& y);

// Non-negative values on a strictly increasing grid in [0,1], trapezoid
// integral normalized to 1.
struct DensityOnGrid {
  Eigen::VectorXd grid;
  Eigen::VectorXd values;

  double trapezoid() const;
};

// n equispaced points covering [0,1] inclusive.
Eigen::VectorXd linspace01(int n);

// Ranks 1..N from smallest to largest, ties broken by ascending index.
std::vector<int> ranks_ascending(const Eigen::VectorXd& values);

}  // namespace graphon
