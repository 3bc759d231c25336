#include "graphon/netsim.hpp"

#include "graphon/errors.hpp"
#include "graphon/rng.hpp"

namespace graphon {

LatentPositions sample_latent(int n, std::uint64_t seed) {
  if (n < 2) throw InputError("network size must be at least 2");
  Rng rng(seed);
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) u[i] = rng.uniform01();
  return LatentPositions(std::move(u));
}

AdjacencyMatrix sample_network(const Graphon& w, const LatentPositions& u, std::uint64_t seed) {
  const int n = u.size();
  Rng rng(seed);
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double edge = rng.bernoulli(w.value(u[i], u[j])) ? 1.0 : 0.0;
      y(i, j) = edge;
      y(j, i) = edge;
    }
  }
  return AdjacencyMatrix::unlabeled(std::move(y));
}

}  // namespace graphon
