#include "graphon/mcmc.hpp"

#include <cmath>

#include "graphon/errors.hpp"

namespace graphon {

namespace {

constexpr double kClipEps = 1e-6;

void validate_config(const GibbsConfig& c) {
  if (!(c.proposal_sd > 0.0)) throw InputError("proposal sd must be positive");
  if (c.thinning < 1) throw InputError("thinning factor must be >= 1");
  if (c.n_retain < 1) throw InputError("n_retain must be >= 1");
  if (c.burn_in_sweeps < 0) throw InputError("burn-in must be non-negative");
}

inline double logit(double u) { return std::log(u / (1.0 - u)); }
inline double inv_logit(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Sum over j != k of the Bernoulli log-likelihood difference between the
// proposed and current position of component k.
double log_likelihood_ratio(const Graphon& w, const Eigen::MatrixXd& ymat,
                            const Eigen::VectorXd& u, int k, double u_prop,
                            Eigen::ArrayXd& w_cur, Eigen::ArrayXd& w_prop) {
  const int n = static_cast<int>(u.size());
  w.value_row(u[k], u.data(), n, w_cur.data());
  w.value_row(u_prop, u.data(), n, w_prop.data());
  w_cur = w_cur.max(kClipEps).min(1.0 - kClipEps);
  w_prop = w_prop.max(kClipEps).min(1.0 - kClipEps);

  const auto yrow = ymat.row(k).transpose().array();
  const Eigen::ArrayXd log_ratio_edge = w_prop.log() - w_cur.log();
  const Eigen::ArrayXd log_ratio_gap = (-w_prop).log1p() - (-w_cur).log1p();
  double acc = (yrow * log_ratio_edge + (1.0 - yrow) * log_ratio_gap).sum();
  // Remove the j = k term included above (y_kk = 0).
  acc -= log_ratio_gap[k];
  return acc;
}

}  // namespace

LatentPositions gibbs_sweep(const LatentPositions& state, const Graphon& w,
                            const AdjacencyMatrix& y, const GibbsConfig& config, Rng& rng,
                            std::vector<std::uint8_t>* accepted) {
  validate_config(config);
  const int n = state.size();
  if (y.n() != n) throw InputError("state and adjacency matrix sizes differ");

  Eigen::VectorXd u = state.u;
  Eigen::ArrayXd w_cur(n), w_prop(n);
  if (accepted != nullptr) accepted->assign(static_cast<std::size_t>(n), 0);

  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  if (config.random_scan) {
    for (int i = n - 1; i > 0; --i)
      std::swap(order[static_cast<std::size_t>(i)],
                order[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i + 1)))]);
  }

  for (int idx = 0; idx < n; ++idx) {
    const int k = order[static_cast<std::size_t>(idx)];
    const double z_prop = logit(u[k]) + config.proposal_sd * rng.normal();
    const double u_prop = inv_logit(z_prop);
    const double noise = rng.uniform01();

    double log_accept = log_likelihood_ratio(w, y.matrix(), u, k, u_prop, w_cur, w_prop);
    // Proposal Jacobian ratio from the logit transform.
    log_accept += std::log(u_prop * (1.0 - u_prop)) - std::log(u[k] * (1.0 - u[k]));

    if (std::log(noise) < log_accept) {
      u[k] = u_prop;
      if (accepted != nullptr) (*accepted)[static_cast<std::size_t>(k)] = 1;
    }
  }
  return LatentPositions(std::move(u));
}

GibbsChain run_chain(const LatentPositions& init, const Graphon& w, const AdjacencyMatrix& y,
                     const GibbsConfig& config) {
  validate_config(config);
  const int n = init.size();
  Rng rng(config.seed);

  GibbsChain chain;
  chain.config = config;
  chain.states.resize(config.n_retain, n);
  Eigen::VectorXd accept_count = Eigen::VectorXd::Zero(n);
  long long sweeps = 0;

  LatentPositions state = init;
  std::vector<std::uint8_t> accepted;
  const auto advance = [&](LatentPositions& s) {
    s = gibbs_sweep(s, w, y, config, rng, &accepted);
    ++sweeps;
    for (int i = 0; i < n; ++i) accept_count[i] += accepted[static_cast<std::size_t>(i)];
  };

  for (int b = 0; b < config.burn_in_sweeps; ++b) advance(state);
  for (int s = 0; s < config.n_retain; ++s) {
    for (int r = 0; r < config.thinning; ++r) advance(state);
    chain.states.row(s) = state.u.transpose();
  }
  chain.acceptance_rate = accept_count / static_cast<double>(sweeps);
  return chain;
}

DensityOnGrid posterior_density(const GibbsChain& chain, const Graphon& w,
                                const AdjacencyMatrix& y, int node, int grid_size) {
  const int n = chain.n_nodes();
  if (y.n() != n) throw InputError("chain and adjacency matrix sizes differ");
  if (node < 0 || node >= n) throw InputError("node index out of range");
  if (grid_size < 3) throw InputError("posterior grid needs at least 3 points");
  if (chain.n_states() < 1) throw InputError("chain holds no states");

  DensityOnGrid out;
  out.grid = linspace01(grid_size);
  out.values = Eigen::VectorXd::Zero(grid_size);

  Eigen::ArrayXd wrow(n);
  Eigen::VectorXd logf(grid_size);
  Eigen::VectorXd state(n);
  DensityOnGrid single;
  single.grid = out.grid;

  for (int s = 0; s < chain.n_states(); ++s) {
    state = chain.states.row(s).transpose();
    const auto yrow = y.matrix().row(node).transpose().array();
    for (int g = 0; g < grid_size; ++g) {
      w.value_row(out.grid[g], state.data(), n, wrow.data());
      wrow = wrow.max(kClipEps).min(1.0 - kClipEps);
      const Eigen::ArrayXd lw = wrow.log();
      const Eigen::ArrayXd l1w = (-wrow).log1p();
      double acc = (yrow * lw + (1.0 - yrow) * l1w).sum();
      acc -= l1w[node];  // drop the j = node term
      logf[g] = acc;
    }
    single.values = (logf.array() - logf.maxCoeff()).exp();
    const double z = single.trapezoid();
    if (!std::isfinite(z) || z <= 0.0)
      throw NumericalError("degenerate conditional density for node " + std::to_string(node));
    out.values += single.values / z;
  }
  out.values /= chain.n_states();
  out.values /= out.trapezoid();
  return out;
}

LatentPositions posterior_means(const GibbsChain& chain) {
  if (chain.n_states() < 1) throw InputError("chain holds no states");
  Eigen::VectorXd means = chain.states.colwise().mean();
  return LatentPositions(std::move(means));
}

}  // namespace graphon
