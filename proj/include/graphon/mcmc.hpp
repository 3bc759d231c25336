#pragma once

#include <cstdint>
#include <vector>

#include "graphon/graphon.hpp"
#include "graphon/rng.hpp"
#include "graphon/types.hpp"

namespace graphon {

struct GibbsConfig {
  double proposal_sd = 0.5;  // sd of the normal step on the logit scale
  int burn_in_sweeps = 50;
  int thinning = 5;  // sweeps between retained states
  int n_retain = 100;
  std::uint64_t seed = 0;
  bool random_scan = false;  // default: deterministic sweep order 0..N-1
};

// Retained states of a Metropolis-within-Gibbs run plus acceptance
// diagnostics; immutable once returned.
struct GibbsChain {
  Eigen::MatrixXd states;           // n_retain x N
  Eigen::VectorXd acceptance_rate;  // per component, over the whole run
  GibbsConfig config;

  int n_states() const { return static_cast<int>(states.rows()); }
  int n_nodes() const { return static_cast<int>(states.cols()); }
};

// One full sweep over the components: each u_k gets a logit-scale normal
// proposal accepted with the Metropolis ratio of the full conditional times
// the proposal Jacobian, all evaluated in log space.
LatentPositions gibbs_sweep(const LatentPositions& state, const Graphon& w,
                            const AdjacencyMatrix& y, const GibbsConfig& config, Rng& rng,
                            std::vector<std::uint8_t>* accepted = nullptr);

GibbsChain run_chain(const LatentPositions& init, const Graphon& w, const AdjacencyMatrix& y,
                     const GibbsConfig& config);

// Rao-Blackwellized posterior density of U_node: the average over retained
// states of the normalized full conditional on the grid.  node is 0-based.
DensityOnGrid posterior_density(const GibbsChain& chain, const Graphon& w,
                                const AdjacencyMatrix& y, int node, int grid_size = 201);

LatentPositions posterior_means(const GibbsChain& chain);

}  // namespace graphon
