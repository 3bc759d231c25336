#pragma once

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace graphon {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNumericalError = 3;
inline constexpr int kExitNoConvergence = 4;

struct ChainOptions {
  double proposal_sd = 0.5;
  int burn_in = 50;
  int thinning = 5;
  int n_retain = 100;
};

struct SimulateOptions {
  std::string graphon_id;
  int n = 500;
  std::uint64_t seed = 0;
  std::string out_dir;
  int surface_grid = 101;
};

struct FitOptions {
  std::string edges_path;
  int knots_k = 12;
  std::vector<double> lambda_grid;  // empty -> default grid
  std::uint64_t seed = 0;
  std::string out_dir;
  int surface_grid = 101;
  int profile_grid = 201;
  int max_threads = 1;
};

struct EmOptions {
  std::string edges_path;
  int knots_k = 12;
  std::vector<double> lambda_grid;
  int max_iters = 30;
  double tol = 0.01;
  std::uint64_t seed = 0;
  std::string out_dir;
  ChainOptions chain;
  int retain_base = 10;
  int retain_step = 10;
  int retain_cap = 100;
  std::vector<long long> posterior_nodes;
  int surface_grid = 101;
  int profile_grid = 201;
  int density_grid = 201;
  bool freeze_lambda = false;
  int max_threads = 1;
};

struct GibbsOptions {
  std::string edges_path;
  std::string result_path;
  std::string out_dir;
  ChainOptions chain;
  std::uint64_t seed = 0;
};

struct PosteriorOptions {
  std::string edges_path;
  std::string result_path;  // required in spline mode
  std::string out_dir;
  std::string mode = "spline";  // "spline" or "empirical"
  std::vector<long long> nodes;
  bool all_nodes = false;
  int grid = 201;
  ChainOptions chain;
  std::uint64_t seed = 0;
};

int cmd_simulate(const SimulateOptions& opts, std::ostream& log = std::cerr);
int cmd_fit(const FitOptions& opts, std::ostream& log = std::cerr);
int cmd_em(const EmOptions& opts, std::ostream& log = std::cerr);
int cmd_gibbs(const GibbsOptions& opts, std::ostream& log = std::cerr);
int cmd_posterior(const PosteriorOptions& opts, std::ostream& log = std::cerr);

}  // namespace graphon
