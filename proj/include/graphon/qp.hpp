#pragma once

#include <Eigen/Dense>
#include <vector>

namespace graphon {

// minimize 0.5 x'Qx - c'x  subject to  A_eq x = b_eq,  A_in x >= b_in.
struct QuadraticProgram {
  Eigen::MatrixXd Q;
  Eigen::VectorXd c;
  Eigen::MatrixXd A_eq;
  Eigen::VectorXd b_eq;
  Eigen::MatrixXd A_in;
  Eigen::VectorXd b_in;
};

enum class QPStatus { optimal, infeasible, max_iterations };

struct QPSolution {
  Eigen::VectorXd x;
  QPStatus status = QPStatus::infeasible;
  std::vector<int> active_set;  // binding inequality indices at the solution
  double objective = 0.0;
  int iterations = 0;
  std::vector<double> objective_trace;  // objective after each active-set step
  double stationarity_residual = 0.0;
  double feasibility_residual = 0.0;
};

struct QPOptions {
  double tol = 1e-8;
  int max_iter = 0;  // 0 picks 10 * (n + #constraints)
};

// Primal active-set solver.  Instances hold mutable working state, so run one
// solve per instance at a time; distinct instances are independent.
class QpSolver {
 public:
  // feasible_start, when given and feasible, skips the Phase-1 search.
  QPSolution solve(const QuadraticProgram& p, const QPOptions& opts = {},
                   const Eigen::VectorXd* feasible_start = nullptr);

 private:
  QPSolution run_active_set(const Eigen::MatrixXd& Q, const Eigen::VectorXd& c,
                            const Eigen::MatrixXd& A_eq, const Eigen::VectorXd& b_eq,
                            const Eigen::MatrixXd& A_in, const Eigen::VectorXd& b_in,
                            Eigen::VectorXd x, const QPOptions& opts);
  bool phase1(const QuadraticProgram& p, const QPOptions& opts, Eigen::VectorXd& x_out);
};

QPSolution solve_qp(const QuadraticProgram& p, double tol = 1e-8, int max_iter = 0,
                    const Eigen::VectorXd* feasible_start = nullptr);

}  // namespace graphon
