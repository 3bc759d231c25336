#include "graphon/empirical.hpp"

#include <cmath>
#include <stdexcept>

#include "graphon/errors.hpp"

namespace graphon {

namespace {

constexpr double kClipEps = 1e-6;

void check_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error(std::string(name) + " outside [0,1]");
}

}  // namespace

EmpiricalGraphon::EmpiricalGraphon(const AdjacencyMatrix& y) {
  const int n = y.n();
  degrees_ = degree(y);
  Eigen::VectorXd deg(n);
  for (int i = 0; i < n; ++i) deg[i] = degrees_[static_cast<std::size_t>(i)];
  const std::vector<int> rank = ranks_ascending(deg);

  sigma_hat_.assign(static_cast<std::size_t>(n), 0);
  Eigen::VectorXd u_hat(n);
  for (int j = 0; j < n; ++j) {
    sigma_hat_[static_cast<std::size_t>(rank[static_cast<std::size_t>(j)] - 1)] = j;
    u_hat[j] = static_cast<double>(rank[static_cast<std::size_t>(j)]) / (n + 1);
  }
  u_hat_emp_ = LatentPositions(std::move(u_hat));

  sorted_y_.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      sorted_y_(i, j) = y(sigma_hat_[static_cast<std::size_t>(i)], sigma_hat_[static_cast<std::size_t>(j)]);

  sorted_degrees_.assign(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    sorted_degrees_[static_cast<std::size_t>(i)] = degrees_[static_cast<std::size_t>(sigma_hat_[static_cast<std::size_t>(i)])];
}

int EmpiricalGraphon::row_index(double u) const {
  const int n = this->n();
  // ceil(uN) in 1..N, with u=0 mapped to the first row.
  int idx = static_cast<int>(std::ceil(u * n));
  if (idx < 1) idx = 1;
  if (idx > n) idx = n;
  return idx - 1;
}

double EmpiricalGraphon::value(double u, double v) const {
  return sorted_y_(row_index(u), row_index(v));
}

std::optional<double> EmpiricalGraphon::closed_form_marginal(double u) const {
  return static_cast<double>(sorted_degrees_[static_cast<std::size_t>(row_index(u))]) / n();
}

EmpiricalGraphon order_by_degree(const AdjacencyMatrix& y) { return EmpiricalGraphon(y); }

double empirical_graphon_value(const EmpiricalGraphon& eg, double u, double v) {
  check_unit(u, "u");
  check_unit(v, "v");
  return eg.value(u, v);
}

double empirical_marginal(const EmpiricalGraphon& eg, double u) {
  check_unit(u, "u");
  return *eg.closed_form_marginal(u);
}

DensityOnGrid marginal_posterior_empirical(const EmpiricalGraphon& eg, int node, int grid_size) {
  const int n = eg.n();
  if (node < 0 || node >= n) throw InputError("node index out of range");
  if (grid_size < 3) throw InputError("posterior grid needs at least 3 points");

  const int deg = eg.original_degree(node);
  DensityOnGrid out;
  out.grid = linspace01(grid_size);
  Eigen::VectorXd logf(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    double g = *eg.closed_form_marginal(out.grid[i]);
    g = std::min(std::max(g, kClipEps), 1.0 - kClipEps);
    logf[i] = deg * std::log(g) + (n - deg) * std::log1p(-g);
  }
  const double shift = logf.maxCoeff();
  out.values = (logf.array() - shift).exp();

  const double z = out.trapezoid();
  if (!std::isfinite(z) || z <= 0.0)
    throw NumericalError("degenerate posterior density for node " + std::to_string(node));
  out.values /= z;
  return out;
}

}  // namespace graphon
