#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "graphon/bspline.hpp"
#include "graphon/types.hpp"

namespace graphon {

// First-order difference penalty in both index directions:
// P = (L (x) I)'(L (x) I) + (I (x) L)'(I (x) L).
struct PenaltyStructure {
  Eigen::MatrixXd L;
  Eigen::MatrixXd P;
};

PenaltyStructure make_penalty(const KnotGrid& knots);

struct FitControls {
  int max_iter = 100;
  double step_tol = 1e-6;   // sup-norm threshold on the scoring step
  int max_halvings = 20;
  double clip_eps = 1e-6;   // clip for w inside logs and denominators
  double qp_tol = 1e-8;
};

struct SelectControls : FitControls {
  bool warm_start = true;  // cascade theta from large lambda downward
  int max_threads = 1;     // used only when warm_start is off
};

struct FitTrace {
  int iterations = 0;
  int total_halvings = 0;
  bool converged = false;
  bool step_stalled = false;
  bool df_regularized = false;
  std::vector<double> penalized_objective;  // value after each accepted step
};

struct FitResult {
  SplineGraphon graphon;
  double lambda = 0.0;
  double log_lik = 0.0;
  double df = 0.0;
  double aic_c = 0.0;
  FitTrace trace;
};

// Bernoulli log-likelihood over both ordered pairs (i,j), j != i.
double log_likelihood(const Eigen::VectorXd& theta, const LatentPositions& u,
                      const AdjacencyMatrix& y, const KnotGrid& knots, double clip_eps = 1e-6);

Eigen::VectorXd score(const Eigen::VectorXd& theta, const LatentPositions& u,
                      const AdjacencyMatrix& y, const KnotGrid& knots, double clip_eps = 1e-6);

Eigen::MatrixXd fisher(const Eigen::VectorXd& theta, const LatentPositions& u,
                       const AdjacencyMatrix& y, const KnotGrid& knots, double clip_eps = 1e-6);

// Constrained penalized maximum likelihood at a fixed smoothing level.
// Each iteration solves a QP for the Fisher-scoring step under the
// monotonicity/box/symmetry constraints, then step-halves until the
// penalized likelihood does not decrease.
FitResult fit_theta(const LatentPositions& u, const AdjacencyMatrix& y, double lambda,
                    const KnotGrid& knots, const Eigen::VectorXd* init_theta = nullptr,
                    const FitControls& controls = {});

// df(lambda) = tr{ (I + lambda P)^-1 I } via linear solves.
double effective_df(const Eigen::VectorXd& theta_hat, const LatentPositions& u,
                    const AdjacencyMatrix& y, double lambda, const KnotGrid& knots,
                    bool* regularized = nullptr, double clip_eps = 1e-6);

double aic_c(double log_lik, double df, int n_nodes);
double aic_c(const FitResult& fit, const AdjacencyMatrix& y);

// Nine lambdas, log-spaced over [1e-2, 1e6].
Eigen::VectorXd default_lambda_grid();

// Fits every lambda in the grid (descending, warm-started by default) and
// returns the AIC_c minimizer; ties break toward the larger lambda.
FitResult select_lambda(const LatentPositions& u, const AdjacencyMatrix& y, const KnotGrid& knots,
                        const Eigen::VectorXd& lambda_grid, const SelectControls& controls = {});

}  // namespace graphon
