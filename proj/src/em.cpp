#include "graphon/em.hpp"

#include <cmath>
#include <limits>

#include "graphon/empirical.hpp"
#include "graphon/errors.hpp"
#include "graphon/rng.hpp"

namespace graphon {

namespace {

Eigen::MatrixXd surface_on_grid(const Graphon& w, const Eigen::VectorXd& grid) {
  const int g = static_cast<int>(grid.size());
  Eigen::MatrixXd s(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) s(i, j) = w.value(grid[i], grid[j]);
  return s;
}

}  // namespace

LatentPositions e_step(const LatentPositions& chain_means) {
  const int n = chain_means.size();
  const std::vector<int> rank = ranks_ascending(chain_means.u);
  Eigen::VectorXd u(n);
  for (int j = 0; j < n; ++j) u[j] = static_cast<double>(rank[static_cast<std::size_t>(j)]) / (n + 1);
  return LatentPositions(std::move(u));
}

EMResult run_em(const AdjacencyMatrix& y, const EMConfig& config) {
  if (y.n() < 3) throw InputError("EM needs a network with at least 3 nodes");
  if (config.max_iters < 1) throw InputError("max_iters must be >= 1");
  if (!(config.convergence_tol > 0.0)) throw InputError("convergence tolerance must be positive");
  for (int m = 1; m < config.max_iters; ++m)
    if (config.n_schedule.at(m + 1) < config.n_schedule.at(m))
      throw InputError("retain schedule must be non-decreasing");

  const KnotGrid knots = make_knots(config.knots_k);
  const Eigen::VectorXd grid = linspace01(config.eval_grid);
  const double cell = 1.0 / (config.eval_grid - 1);

  EMTrace trace;
  LatentPositions u = order_by_degree(y).u_hat_emp();

  std::optional<FitResult> fit;
  Eigen::MatrixXd prev_surface;
  double frozen_lambda = 0.0;

  for (int m = 1; m <= config.max_iters; ++m) {
    if (config.reselect_lambda || m == 1) {
      fit = select_lambda(u, y, knots, config.lambda_grid, config.fit_controls);
      frozen_lambda = fit->lambda;
    } else {
      const Eigen::VectorXd warm = fit->graphon.theta();
      fit = fit_theta(u, y, frozen_lambda, knots, &warm, config.fit_controls);
    }

    const Eigen::MatrixXd surface = surface_on_grid(fit->graphon, grid);

    EMIterationRecord rec;
    rec.m = m;
    rec.theta = fit->graphon.theta();
    rec.lambda = fit->lambda;
    rec.aic_c = fit->aic_c;
    rec.df = fit->df;
    rec.log_lik = fit->log_lik;
    rec.n_retain = config.n_schedule.at(m);
    rec.mean_acceptance = std::numeric_limits<double>::quiet_NaN();
    if (m >= 2) {
      const Eigen::MatrixXd diff = (surface - prev_surface).cwiseAbs();
      rec.sup_change = diff.maxCoeff();
      rec.l2_change = std::sqrt(diff.array().square().sum() * cell * cell);
    } else {
      rec.sup_change = std::numeric_limits<double>::infinity();
      rec.l2_change = std::numeric_limits<double>::infinity();
    }

    if (m >= 2 && rec.sup_change < config.convergence_tol) {
      // The surface is stable; keep the ordering that produced it.
      rec.u_hat = u.u;
      trace.iterations.push_back(std::move(rec));
      trace.converged = true;
      break;
    }
    if (m == config.max_iters) {
      rec.u_hat = u.u;
      trace.iterations.push_back(std::move(rec));
      break;
    }

    GibbsConfig gc = config.gibbs;
    gc.n_retain = config.n_schedule.at(m);
    gc.seed = mix_seed(config.seed, static_cast<std::uint64_t>(m));
    const GibbsChain chain = run_chain(u, fit->graphon, y, gc);
    const LatentPositions means = posterior_means(chain);
    LatentPositions u_next = e_step(means);

    rec.posterior_mean = means.u;
    rec.u_hat = u_next.u;
    rec.mean_acceptance = chain.acceptance_rate.mean();
    trace.iterations.push_back(std::move(rec));

    u = std::move(u_next);
    prev_surface = surface;
  }

  return EMResult{*std::move(fit), u, std::move(trace)};
}

}  // namespace graphon
