#include "graphon/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "graphon/errors.hpp"

namespace graphon {

namespace {

constexpr double kActivityTol = 1e-8;
constexpr double kDirectionTol = 1e-12;

double objective_value(const Eigen::MatrixXd& Q, const Eigen::VectorXd& c,
                       const Eigen::VectorXd& x) {
  return 0.5 * x.dot(Q * x) - c.dot(x);
}

bool is_feasible(const QuadraticProgram& p, const Eigen::VectorXd& x, double tol) {
  if (p.A_eq.rows() > 0) {
    const Eigen::VectorXd r = p.A_eq * x - p.b_eq;
    if (r.lpNorm<Eigen::Infinity>() > tol * (1.0 + p.b_eq.lpNorm<Eigen::Infinity>())) return false;
  }
  for (Eigen::Index i = 0; i < p.A_in.rows(); ++i) {
    if (p.A_in.row(i).dot(x) - p.b_in[i] < -tol * (1.0 + std::abs(p.b_in[i]))) return false;
  }
  return true;
}

// Solves H s = r with a fallback ridge when H is (numerically) singular.
Eigen::VectorXd solve_reduced(const Eigen::MatrixXd& H, const Eigen::VectorXd& r) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
  Eigen::VectorXd s = ldlt.solve(r);
  if (ldlt.info() == Eigen::Success && s.allFinite()) {
    const double resid = (H * s - r).lpNorm<Eigen::Infinity>();
    if (resid <= 1e-8 * (1.0 + r.lpNorm<Eigen::Infinity>())) return s;
  }
  const double scale = std::max(1.0, H.diagonal().cwiseAbs().maxCoeff());
  Eigen::MatrixXd Hr = H + 1e-10 * scale * Eigen::MatrixXd::Identity(H.rows(), H.cols());
  return Hr.ldlt().solve(r);
}

}  // namespace

QPSolution QpSolver::run_active_set(const Eigen::MatrixXd& Q, const Eigen::VectorXd& c,
                                    const Eigen::MatrixXd& A_eq, const Eigen::VectorXd& b_eq,
                                    const Eigen::MatrixXd& A_in, const Eigen::VectorXd& b_in,
                                    Eigen::VectorXd x, const QPOptions& opts) {
  const int n = static_cast<int>(x.size());
  const int m_eq = static_cast<int>(A_eq.rows());
  const int m_in = static_cast<int>(A_in.rows());
  const int max_iter = opts.max_iter > 0 ? opts.max_iter : 10 * (n + m_eq + m_in);

  std::vector<char> in_working(static_cast<std::size_t>(m_in), 0);
  for (int i = 0; i < m_in; ++i)
    if (A_in.row(i).dot(x) - b_in[i] <= kActivityTol) in_working[static_cast<std::size_t>(i)] = 1;

  QPSolution sol;
  sol.x = x;
  sol.status = QPStatus::max_iterations;
  sol.objective_trace.push_back(objective_value(Q, c, x));

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
  for (int iter = 1; iter <= max_iter; ++iter) {
    sol.iterations = iter;
    std::vector<int> working;
    for (int i = 0; i < m_in; ++i)
      if (in_working[static_cast<std::size_t>(i)]) working.push_back(i);
    const int mw = m_eq + static_cast<int>(working.size());

    Eigen::MatrixXd Aw(mw, n);
    if (m_eq > 0) Aw.topRows(m_eq) = A_eq;
    for (std::size_t k = 0; k < working.size(); ++k)
      Aw.row(m_eq + static_cast<Eigen::Index>(k)) = A_in.row(working[k]);

    const Eigen::VectorXd grad = Q * x - c;
    Eigen::VectorXd step = Eigen::VectorXd::Zero(n);
    int rank = 0;
    if (mw > 0) {
      qr.compute(Aw.transpose());
      rank = static_cast<int>(qr.rank());
      const int nz = n - rank;
      if (nz > 0) {
        const Eigen::MatrixXd Qfull = qr.householderQ();
        const Eigen::MatrixXd Z = Qfull.rightCols(nz);
        const Eigen::MatrixXd Hz = Z.transpose() * Q * Z;
        step = Z * solve_reduced(Hz, -Z.transpose() * grad);
      }
    } else {
      step = solve_reduced(Q, -grad);
    }

    if (step.lpNorm<Eigen::Infinity>() <= opts.tol * std::max(1.0, x.lpNorm<Eigen::Infinity>())) {
      // Stationary on the working set; inspect inequality multipliers.
      if (working.empty()) {
        sol.status = QPStatus::optimal;
        break;
      }
      const Eigen::VectorXd lambda = qr.solve(grad);
      int worst = -1;
      double worst_val = -opts.tol;
      for (std::size_t k = 0; k < working.size(); ++k) {
        const double lk = lambda[m_eq + static_cast<Eigen::Index>(k)];
        if (lk < worst_val) {
          worst_val = lk;
          worst = working[k];
        }
      }
      if (worst < 0) {
        sol.status = QPStatus::optimal;
        break;
      }
      in_working[static_cast<std::size_t>(worst)] = 0;
      sol.objective_trace.push_back(objective_value(Q, c, x));
      continue;
    }

    // Largest step along `step` that keeps every inactive inequality satisfied.
    double alpha = 1.0;
    int blocker = -1;
    for (int i = 0; i < m_in; ++i) {
      if (in_working[static_cast<std::size_t>(i)]) continue;
      const double d = A_in.row(i).dot(step);
      if (d >= -kDirectionTol) continue;
      const double reach = (b_in[i] - A_in.row(i).dot(x)) / d;
      if (reach < alpha) {
        alpha = reach;
        blocker = i;
      }
    }
    alpha = std::max(alpha, 0.0);
    x += alpha * step;
    if (blocker >= 0) in_working[static_cast<std::size_t>(blocker)] = 1;
    sol.objective_trace.push_back(objective_value(Q, c, x));
  }

  sol.x = x;
  sol.objective = objective_value(Q, c, x);
  for (int i = 0; i < m_in; ++i)
    if (in_working[static_cast<std::size_t>(i)]) sol.active_set.push_back(i);

  // KKT diagnostics at the returned point.
  Eigen::VectorXd grad = Q * x - c;
  if (m_eq > 0 || !sol.active_set.empty()) {
    const int mw = m_eq + static_cast<int>(sol.active_set.size());
    Eigen::MatrixXd Aw(mw, n);
    if (m_eq > 0) Aw.topRows(m_eq) = A_eq;
    for (std::size_t k = 0; k < sol.active_set.size(); ++k)
      Aw.row(m_eq + static_cast<Eigen::Index>(k)) = A_in.row(sol.active_set[k]);
    const Eigen::VectorXd lambda = Aw.transpose().colPivHouseholderQr().solve(grad);
    sol.stationarity_residual = (grad - Aw.transpose() * lambda).lpNorm<Eigen::Infinity>();
  } else {
    sol.stationarity_residual = grad.lpNorm<Eigen::Infinity>();
  }
  double feas = 0.0;
  if (m_eq > 0) feas = (A_eq * x - b_eq).lpNorm<Eigen::Infinity>();
  for (int i = 0; i < m_in; ++i) feas = std::max(feas, b_in[i] - A_in.row(i).dot(x));
  sol.feasibility_residual = feas;
  return sol;
}

bool QpSolver::phase1(const QuadraticProgram& p, const QPOptions& opts, Eigen::VectorXd& x_out) {
  const int n = static_cast<int>(p.Q.rows());
  const int m_eq = static_cast<int>(p.A_eq.rows());
  const int m_in = static_cast<int>(p.A_in.rows());

  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);
  if (m_eq > 0) {
    x0 = p.A_eq.colPivHouseholderQr().solve(p.b_eq);
    const double resid = (p.A_eq * x0 - p.b_eq).lpNorm<Eigen::Infinity>();
    if (resid > 1e-8 * (1.0 + p.b_eq.lpNorm<Eigen::Infinity>())) return false;
  }
  if (m_in == 0) {
    x_out = x0;
    return true;
  }

  // Slack formulation: minimize 0.5||s||^2 over A_in x + s >= b_in, s >= 0.
  const int nz = n + m_in;
  Eigen::MatrixXd Qz = Eigen::MatrixXd::Zero(nz, nz);
  Qz.bottomRightCorner(m_in, m_in).setIdentity();
  Qz += 1e-10 * Eigen::MatrixXd::Identity(nz, nz);
  const Eigen::VectorXd cz = Eigen::VectorXd::Zero(nz);

  Eigen::MatrixXd Aeq_z(m_eq, nz);
  if (m_eq > 0) {
    Aeq_z.setZero();
    Aeq_z.leftCols(n) = p.A_eq;
  }
  Eigen::MatrixXd Ain_z = Eigen::MatrixXd::Zero(2 * m_in, nz);
  Eigen::VectorXd bin_z = Eigen::VectorXd::Zero(2 * m_in);
  Ain_z.topLeftCorner(m_in, n) = p.A_in;
  Ain_z.topRightCorner(m_in, m_in).setIdentity();
  Ain_z.bottomRightCorner(m_in, m_in).setIdentity();
  bin_z.head(m_in) = p.b_in;

  Eigen::VectorXd z0(nz);
  z0.head(n) = x0;
  for (int i = 0; i < m_in; ++i)
    z0[n + i] = std::max(0.0, p.b_in[i] - p.A_in.row(i).dot(x0));

  QPOptions ph_opts = opts;
  ph_opts.max_iter = std::max(opts.max_iter, 20 * (nz + m_eq + 2 * m_in));
  const QPSolution sol = run_active_set(Qz, cz, Aeq_z, p.b_eq, Ain_z, bin_z, z0, ph_opts);
  if (sol.x.tail(m_in).lpNorm<Eigen::Infinity>() > 1e-7) return false;
  x_out = sol.x.head(n);
  return true;
}

QPSolution QpSolver::solve(const QuadraticProgram& p, const QPOptions& opts,
                           const Eigen::VectorXd* feasible_start) {
  const Eigen::Index n = p.Q.rows();
  if (p.Q.cols() != n || p.c.size() != n) throw InputError("QP dimensions inconsistent");
  if (p.A_eq.rows() != p.b_eq.size() || (p.A_eq.rows() > 0 && p.A_eq.cols() != n))
    throw InputError("QP equality system dimensions inconsistent");
  if (p.A_in.rows() != p.b_in.size() || (p.A_in.rows() > 0 && p.A_in.cols() != n))
    throw InputError("QP inequality system dimensions inconsistent");

  const double scale = std::max(1.0, p.Q.cwiseAbs().maxCoeff());
  if ((p.Q - p.Q.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InputError("QP matrix must be symmetric");

  Eigen::MatrixXd Q = 0.5 * (p.Q + p.Q.transpose());
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q, Eigen::EigenvaluesOnly);
  const double eig_min = es.eigenvalues().minCoeff();
  if (eig_min < -1e-8 * scale) throw InputError("QP matrix is not positive semidefinite");
  if (eig_min < 1e-10 * scale)
    Q += (1e-10 * scale + std::max(0.0, -eig_min)) * Eigen::MatrixXd::Identity(n, n);

  Eigen::VectorXd x;
  if (feasible_start != nullptr && feasible_start->size() == n &&
      is_feasible(p, *feasible_start, opts.tol)) {
    x = *feasible_start;
  } else if (!phase1(p, opts, x)) {
    QPSolution sol;
    sol.status = QPStatus::infeasible;
    sol.x = Eigen::VectorXd::Zero(n);
    return sol;
  }

  return run_active_set(Q, p.c, p.A_eq, p.b_eq, p.A_in, p.b_in, std::move(x), opts);
}

QPSolution solve_qp(const QuadraticProgram& p, double tol, int max_iter,
                    const Eigen::VectorXd* feasible_start) {
  QpSolver solver;
  QPOptions opts;
  opts.tol = tol;
  opts.max_iter = max_iter;
  return solver.solve(p, opts, feasible_start);
}

}  // namespace graphon
