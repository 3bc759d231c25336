#include "graphon/types.hpp"

#include <algorithm>
#include <numeric>

#include "graphon/errors.hpp"

namespace graphon {

LatentPositions::LatentPositions(Eigen::VectorXd values) : u(std::move(values)) {
  if (u.size() < 2) throw InputError("latent positions need at least 2 entries");
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (!(u[i] > 0.0 && u[i] < 1.0))
      throw InputError("latent position outside the open unit interval");
  }
}

AdjacencyMatrix::AdjacencyMatrix(Eigen::MatrixXd y, std::vector<long long> labels)
    : y_(std::move(y)), labels_(std::move(labels)) {
  const Eigen::Index n = y_.rows();
  if (n < 2 || y_.cols() != n) throw InputError("adjacency matrix must be square with N >= 2");
  if (static_cast<Eigen::Index>(labels_.size()) != n)
    throw InputError("label count does not match matrix dimension");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (y_(i, i) != 0.0) throw InputError("adjacency matrix has a non-zero diagonal entry");
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = y_(i, j);
      if (v != 0.0 && v != 1.0) throw InputError("adjacency matrix entries must be 0 or 1");
      if (v != y_(j, i)) throw InputError("adjacency matrix must be symmetric");
    }
  }
}

AdjacencyMatrix AdjacencyMatrix::unlabeled(Eigen::MatrixXd y) {
  std::vector<long long> labels(static_cast<std::size_t>(y.rows()));
  std::iota(labels.begin(), labels.end(), 0);
  return AdjacencyMatrix(std::move(y), std::move(labels));
}

int AdjacencyMatrix::index_of(long long label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  return -1;
}

std::vector<int> degree(const AdjacencyMatrix& y) {
  std::vector<int> d(static_cast<std::size_t>(y.n()));
  const Eigen::VectorXd sums = y.matrix().rowwise().sum();
  for (int i = 0; i < y.n(); ++i) d[static_cast<std::size_t>(i)] = static_cast<int>(std::lround(sums[i]));
  return d;
}

double DensityOnGrid::trapezoid() const {
  double acc = 0.0;
  for (Eigen::Index i = 1; i < grid.size(); ++i)
    acc += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
  return acc;
}

Eigen::VectorXd linspace01(int n) {
  Eigen::VectorXd g(n);
  for (int i = 0; i < n; ++i) g[i] = static_cast<double>(i) / (n - 1);
  return g;
}

std::vector<int> ranks_ascending(const Eigen::VectorXd& values) {
  const int n = static_cast<int>(values.size());
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (values[a] != values[b]) return values[a] < values[b];
    return a < b;
  });
  std::vector<int> rank(static_cast<std::size_t>(n));
  for (int pos = 0; pos < n; ++pos) rank[static_cast<std::size_t>(idx[static_cast<std::size_t>(pos)])] = pos + 1;
  return rank;
}

}  // namespace graphon
