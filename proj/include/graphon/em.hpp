#pragma once

#include <cstdint>
#include <vector>

#include "graphon/fit.hpp"
#include "graphon/mcmc.hpp"
#include "graphon/types.hpp"

namespace graphon {

// Number of retained MCMC states per EM iteration, non-decreasing in m.
struct RetainSchedule {
  int base = 10;
  int step = 10;
  int cap = 100;

  int at(int m) const {
    const long long v = static_cast<long long>(base) + static_cast<long long>(step) * m;
    return static_cast<int>(std::min<long long>(v, cap));
  }
};

struct EMConfig {
  int max_iters = 30;
  double convergence_tol = 0.01;  // sup-norm of surface changes on the eval grid
  RetainSchedule n_schedule;
  int knots_k = 12;
  Eigen::VectorXd lambda_grid = default_lambda_grid();
  GibbsConfig gibbs;  // template; n_retain and seed are managed per iteration
  std::uint64_t seed = 0;
  bool reselect_lambda = true;  // false freezes lambda after the first M-step
  int eval_grid = 101;
  SelectControls fit_controls;
};

struct EMIterationRecord {
  int m = 0;
  Eigen::VectorXd theta;
  double lambda = 0.0;
  double aic_c = 0.0;
  double df = 0.0;
  double log_lik = 0.0;
  Eigen::VectorXd u_hat;           // ordering after this iteration's E-step
  Eigen::VectorXd posterior_mean;  // empty for the final (converged) iteration
  double sup_change = 0.0;         // vs the previous iteration's surface
  double l2_change = 0.0;
  double mean_acceptance = 0.0;
  int n_retain = 0;
};

struct EMTrace {
  std::vector<EMIterationRecord> iterations;
  bool converged = false;
};

struct EMResult {
  FitResult fit;
  LatentPositions u_em;  // the ordering the final fit was computed from
  EMTrace trace;
};

// Rank transform of the posterior means scaled by 1/(N+1); ties break by
// ascending index.
LatentPositions e_step(const LatentPositions& chain_means);

// Alternates the penalized spline fit (M-step) with MCMC rank reordering of
// the latent positions (E-step), starting from the degree ordering.  Stops
// when consecutive surface estimates differ by less than the tolerance in
// sup-norm on the evaluation grid, or at max_iters.
EMResult run_em(const AdjacencyMatrix& y, const EMConfig& config);

}  // namespace graphon
