#include "graphon/fit.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "graphon/errors.hpp"
#include "graphon/qp.hpp"

namespace graphon {

namespace {

struct PairTerms {
  int n = 0;
  int n_pairs = 0;
  std::vector<BasisPoint> basis;  // per node
  std::vector<int> pi, pj;        // unordered pairs i<j
  Eigen::VectorXd y;              // y_ij per pair
};

PairTerms build_pair_terms(const LatentPositions& u, const AdjacencyMatrix& y,
                           const KnotGrid& knots) {
  PairTerms t;
  t.n = u.size();
  if (y.n() != t.n) throw InputError("latent positions and adjacency matrix sizes differ");
  t.n_pairs = t.n * (t.n - 1) / 2;
  t.basis.reserve(static_cast<std::size_t>(t.n));
  for (int i = 0; i < t.n; ++i) t.basis.push_back(basis_point(knots, u[i]));
  t.pi.reserve(static_cast<std::size_t>(t.n_pairs));
  t.pj.reserve(static_cast<std::size_t>(t.n_pairs));
  t.y.resize(t.n_pairs);
  int k = 0;
  for (int i = 0; i < t.n; ++i)
    for (int j = i + 1; j < t.n; ++j) {
      t.pi.push_back(i);
      t.pj.push_back(j);
      t.y[k++] = y(i, j);
    }
  return t;
}

inline double eval_pair(const Eigen::MatrixXd& coef, const BasisPoint& bi, const BasisPoint& bj) {
  return bi.w0 * (bj.w0 * coef(bi.cell, bj.cell) + bj.w1 * coef(bi.cell, bj.cell + 1)) +
         bi.w1 * (bj.w0 * coef(bi.cell + 1, bj.cell) + bj.w1 * coef(bi.cell + 1, bj.cell + 1));
}

Eigen::MatrixXd to_matrix(const Eigen::VectorXd& theta, int K) {
  Eigen::MatrixXd coef(K, K);
  for (int p = 0; p < K; ++p)
    for (int q = 0; q < K; ++q) coef(p, q) = theta[p * K + q];
  return coef;
}

bool is_symmetric(const Eigen::MatrixXd& coef) {
  return (coef - coef.transpose()).cwiseAbs().maxCoeff() <= 1e-14;
}

inline double clip(double w, double eps) { return std::min(std::max(w, eps), 1.0 - eps); }

double log_likelihood_terms(const Eigen::VectorXd& theta, const PairTerms& t, int K,
                            double clip_eps) {
  const Eigen::MatrixXd coef = to_matrix(theta, K);
  const bool sym = is_symmetric(coef);
  double ll = 0.0;
  for (int k = 0; k < t.n_pairs; ++k) {
    const BasisPoint& bi = t.basis[static_cast<std::size_t>(t.pi[static_cast<std::size_t>(k)])];
    const BasisPoint& bj = t.basis[static_cast<std::size_t>(t.pj[static_cast<std::size_t>(k)])];
    const double wij = clip(eval_pair(coef, bi, bj), clip_eps);
    const double wji = sym ? wij : clip(eval_pair(coef, bj, bi), clip_eps);
    ll += t.y[k] * (std::log(wij) + std::log(wji)) +
          (1.0 - t.y[k]) * (std::log1p(-wij) + std::log1p(-wji));
  }
  if (!std::isfinite(ll)) throw NumericalError("non-finite log-likelihood");
  return ll;
}

// Scatters r * B_ij' into s for the ordered pair (i,j).
inline void scatter_score(Eigen::VectorXd& s, int K, const BasisPoint& bi, const BasisPoint& bj,
                          double r) {
  const double wi[2] = {bi.w0, bi.w1};
  const double wj[2] = {bj.w0, bj.w1};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) s[(bi.cell + a) * K + bj.cell + b] += wi[a] * wj[b] * r;
}

inline void scatter_fisher(Eigen::MatrixXd& info, int K, const BasisPoint& bi,
                           const BasisPoint& bj, double h) {
  int idx[4];
  double val[4];
  const double wi[2] = {bi.w0, bi.w1};
  const double wj[2] = {bj.w0, bj.w1};
  int m = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      idx[m] = (bi.cell + a) * K + bj.cell + b;
      val[m] = wi[a] * wj[b];
      ++m;
    }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) info(idx[a], idx[b]) += val[a] * val[b] * h;
}

double penalized_objective(const Eigen::VectorXd& theta, const PairTerms& t, int K,
                           double clip_eps, double lambda, const Eigen::MatrixXd& P) {
  return log_likelihood_terms(theta, t, K, clip_eps) - 0.5 * lambda * theta.dot(P * theta);
}

}  // namespace

PenaltyStructure make_penalty(const KnotGrid& knots) {
  const int K = knots.K;
  PenaltyStructure ps;
  ps.L = Eigen::MatrixXd::Zero(K - 1, K);
  for (int i = 0; i < K - 1; ++i) {
    ps.L(i, i) = 1.0;
    ps.L(i, i + 1) = -1.0;
  }
  Eigen::MatrixXd m1 = Eigen::MatrixXd::Zero((K - 1) * K, K * K);  // L (x) I
  Eigen::MatrixXd m2 = Eigen::MatrixXd::Zero(K * (K - 1), K * K);  // I (x) L
  for (int i = 0; i < K - 1; ++i)
    for (int p = 0; p < K; ++p) {
      if (ps.L(i, p) == 0.0) continue;
      for (int q = 0; q < K; ++q) m1(i * K + q, p * K + q) += ps.L(i, p);
    }
  for (int p = 0; p < K; ++p)
    for (int i = 0; i < K - 1; ++i)
      for (int q = 0; q < K; ++q) m2(p * (K - 1) + i, p * K + q) += ps.L(i, q);
  ps.P = m1.transpose() * m1 + m2.transpose() * m2;
  return ps;
}

double log_likelihood(const Eigen::VectorXd& theta, const LatentPositions& u,
                      const AdjacencyMatrix& y, const KnotGrid& knots, double clip_eps) {
  const PairTerms t = build_pair_terms(u, y, knots);
  return log_likelihood_terms(theta, t, knots.K, clip_eps);
}

Eigen::VectorXd score(const Eigen::VectorXd& theta, const LatentPositions& u,
                      const AdjacencyMatrix& y, const KnotGrid& knots, double clip_eps) {
  const PairTerms t = build_pair_terms(u, y, knots);
  const int K = knots.K;
  const Eigen::MatrixXd coef = to_matrix(theta, K);
  const bool sym = is_symmetric(coef);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(K * K);
  for (int k = 0; k < t.n_pairs; ++k) {
    const BasisPoint& bi = t.basis[static_cast<std::size_t>(t.pi[static_cast<std::size_t>(k)])];
    const BasisPoint& bj = t.basis[static_cast<std::size_t>(t.pj[static_cast<std::size_t>(k)])];
    const double wij = clip(eval_pair(coef, bi, bj), clip_eps);
    const double wji = sym ? wij : clip(eval_pair(coef, bj, bi), clip_eps);
    const double rij = t.y[k] / wij - (1.0 - t.y[k]) / (1.0 - wij);
    const double rji = t.y[k] / wji - (1.0 - t.y[k]) / (1.0 - wji);
    scatter_score(s, K, bi, bj, rij);
    scatter_score(s, K, bj, bi, rji);
  }
  return s;
}

Eigen::MatrixXd fisher(const Eigen::VectorXd& theta, const LatentPositions& u,
                       const AdjacencyMatrix& y, const KnotGrid& knots, double clip_eps) {
  const PairTerms t = build_pair_terms(u, y, knots);
  const int K = knots.K;
  const Eigen::MatrixXd coef = to_matrix(theta, K);
  const bool sym = is_symmetric(coef);
  Eigen::MatrixXd info = Eigen::MatrixXd::Zero(K * K, K * K);
  for (int k = 0; k < t.n_pairs; ++k) {
    const BasisPoint& bi = t.basis[static_cast<std::size_t>(t.pi[static_cast<std::size_t>(k)])];
    const BasisPoint& bj = t.basis[static_cast<std::size_t>(t.pj[static_cast<std::size_t>(k)])];
    const double wij = clip(eval_pair(coef, bi, bj), clip_eps);
    const double wji = sym ? wij : clip(eval_pair(coef, bj, bi), clip_eps);
    scatter_fisher(info, K, bi, bj, 1.0 / (wij * (1.0 - wij)));
    scatter_fisher(info, K, bj, bi, 1.0 / (wji * (1.0 - wji)));
  }
  return info;
}

FitResult fit_theta(const LatentPositions& u, const AdjacencyMatrix& y, double lambda,
                    const KnotGrid& knots, const Eigen::VectorXd* init_theta,
                    const FitControls& controls) {
  if (lambda < 0.0) throw InputError("lambda must be non-negative");
  const int K = knots.K;
  const int n_theta = K * K;
  const PairTerms terms = build_pair_terms(u, y, knots);
  const ConstraintMatrices cm = constraint_matrices(knots);
  const PenaltyStructure pen = make_penalty(knots);

  Eigen::VectorXd theta;
  if (init_theta != nullptr) {
    if (init_theta->size() != n_theta) throw InputError("init_theta has wrong length");
    theta = *init_theta;
    if (((cm.C * theta - cm.b).array() < -1e-8).any() ||
        (cm.D * theta).cwiseAbs().maxCoeff() > 1e-8)
      throw InputError("init_theta violates the constraints");
  } else {
    const double density = y.matrix().sum() / (static_cast<double>(y.n()) * (y.n() - 1));
    theta = Eigen::VectorXd::Constant(n_theta, density);
  }

  FitTrace trace;
  double obj = penalized_objective(theta, terms, K, controls.clip_eps, lambda, pen.P);
  trace.penalized_objective.push_back(obj);

  QpSolver solver;
  QPOptions qp_opts;
  qp_opts.tol = controls.qp_tol;

  for (int iter = 1; iter <= controls.max_iter; ++iter) {
    trace.iterations = iter;
    const Eigen::VectorXd s_pen = score(theta, u, y, knots, controls.clip_eps) - lambda * (pen.P * theta);
    const Eigen::MatrixXd info_pen = fisher(theta, u, y, knots, controls.clip_eps) + lambda * pen.P;

    QuadraticProgram qp;
    qp.Q = info_pen;
    qp.c = s_pen;
    qp.A_eq = cm.D;
    qp.b_eq = -cm.D * theta;
    qp.A_in = cm.C;
    qp.b_in = cm.b - cm.C * theta;
    const Eigen::VectorXd zero_start = Eigen::VectorXd::Zero(n_theta);
    const QPSolution sol = solver.solve(qp, qp_opts, &zero_start);
    if (sol.status == QPStatus::infeasible)
      throw NumericalError("scoring step QP reported infeasible constraints");

    const Eigen::VectorXd delta = sol.x;
    if (delta.lpNorm<Eigen::Infinity>() < controls.step_tol) {
      trace.converged = true;
      break;
    }

    double t = 1.0;
    bool accepted = false;
    for (int h = 0; h <= controls.max_halvings; ++h) {
      const Eigen::VectorXd cand = theta + t * delta;
      const double cand_obj = penalized_objective(cand, terms, K, controls.clip_eps, lambda, pen.P);
      if (cand_obj >= obj - 1e-12 * (1.0 + std::abs(obj))) {
        theta = cand;
        obj = std::max(obj, cand_obj);
        accepted = true;
        break;
      }
      t *= 0.5;
      ++trace.total_halvings;
    }
    if (!accepted) {
      trace.step_stalled = true;
      break;
    }
    trace.penalized_objective.push_back(obj);
  }

  // Exact symmetry and box bounds for the returned coefficients.
  Eigen::MatrixXd coef = to_matrix(theta, K);
  coef = 0.5 * (coef + coef.transpose()).eval();
  for (int p = 0; p < K; ++p)
    for (int q = 0; q < K; ++q) theta[p * K + q] = std::min(std::max(coef(p, q), 0.0), 1.0);

  FitResult result{SplineGraphon(knots, theta), lambda, 0.0, 0.0, 0.0, trace};
  result.log_lik = log_likelihood_terms(theta, terms, K, controls.clip_eps);
  result.df = effective_df(theta, u, y, lambda, knots, &result.trace.df_regularized,
                           controls.clip_eps);
  result.aic_c = aic_c(result.log_lik, result.df, y.n());
  return result;
}

double effective_df(const Eigen::VectorXd& theta_hat, const LatentPositions& u,
                    const AdjacencyMatrix& y, double lambda, const KnotGrid& knots,
                    bool* regularized, double clip_eps) {
  const Eigen::MatrixXd info = fisher(theta_hat, u, y, knots, clip_eps);
  const Eigen::MatrixXd pen = make_penalty(knots).P;
  const Eigen::MatrixXd info_pen = info + lambda * pen;
  if (regularized != nullptr) *regularized = false;

  Eigen::LDLT<Eigen::MatrixXd> ldlt(info_pen);
  Eigen::MatrixXd solved = ldlt.solve(info);
  const double scale = 1.0 + info.cwiseAbs().maxCoeff();
  if (ldlt.info() != Eigen::Success || !solved.allFinite() ||
      (info_pen * solved - info).cwiseAbs().maxCoeff() > 1e-6 * scale) {
    const Eigen::MatrixXd ridged =
        info_pen + 1e-10 * scale * Eigen::MatrixXd::Identity(info.rows(), info.cols());
    solved = ridged.ldlt().solve(info);
    if (regularized != nullptr) *regularized = true;
  }
  return solved.trace();
}

double aic_c(double log_lik, double df, int n_nodes) {
  const double n_pairs = static_cast<double>(n_nodes) * (n_nodes - 1);
  if (df >= n_pairs - 1.0) throw NumericalError("effective df too large for AIC_c");
  return -2.0 * log_lik + 2.0 * df + 2.0 * df * (df + 1.0) / (n_pairs - df - 1.0);
}

double aic_c(const FitResult& fit, const AdjacencyMatrix& y) {
  return aic_c(fit.log_lik, fit.df, y.n());
}

Eigen::VectorXd default_lambda_grid() {
  Eigen::VectorXd grid(9);
  for (int i = 0; i < 9; ++i) grid[i] = std::pow(10.0, -2.0 + i);
  return grid;
}

FitResult select_lambda(const LatentPositions& u, const AdjacencyMatrix& y, const KnotGrid& knots,
                        const Eigen::VectorXd& lambda_grid, const SelectControls& controls) {
  if (lambda_grid.size() == 0) throw InputError("lambda grid is empty");
  std::vector<double> grid(lambda_grid.data(), lambda_grid.data() + lambda_grid.size());
  std::sort(grid.begin(), grid.end(), std::greater<double>());

  std::vector<std::optional<FitResult>> fits(grid.size());
  std::string first_error;

  if (!controls.warm_start && controls.max_threads > 1) {
    std::vector<std::future<FitResult>> futures;
    futures.reserve(grid.size());
    std::size_t launched = 0;
    while (launched < grid.size()) {
      const std::size_t batch =
          std::min<std::size_t>(static_cast<std::size_t>(controls.max_threads),
                                grid.size() - launched);
      for (std::size_t k = 0; k < batch; ++k) {
        const double lambda = grid[launched + k];
        futures.push_back(std::async(std::launch::async, [&, lambda] {
          return fit_theta(u, y, lambda, knots, nullptr, controls);
        }));
      }
      for (std::size_t k = 0; k < batch; ++k) {
        try {
          fits[launched + k] = futures[k].get();
        } catch (const std::exception& e) {
          if (first_error.empty()) first_error = e.what();
        }
      }
      futures.clear();
      launched += batch;
    }
  } else {
    Eigen::VectorXd warm;
    bool have_warm = false;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      try {
        const Eigen::VectorXd* init = (controls.warm_start && have_warm) ? &warm : nullptr;
        FitResult fit = fit_theta(u, y, grid[k], knots, init, controls);
        warm = fit.graphon.theta();
        have_warm = true;
        fits[k] = std::move(fit);
      } catch (const std::exception& e) {
        if (first_error.empty()) first_error = e.what();
      }
    }
  }

  std::optional<FitResult> best;
  for (auto& fit : fits) {
    if (!fit) continue;
    if (!best || fit->aic_c < best->aic_c) best = std::move(fit);
  }
  if (!best) throw NumericalError("every lambda fit failed: " + first_error);
  return *std::move(best);
}

}  // namespace graphon
