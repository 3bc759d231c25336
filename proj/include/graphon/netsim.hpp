#pragma once

#include <cstdint>

#include "graphon/graphon.hpp"
#include "graphon/types.hpp"

namespace graphon {

// n i.i.d. Uniform(0,1) latent positions; deterministic given the seed.
LatentPositions sample_latent(int n, std::uint64_t seed);

// One Bernoulli(w(u_i,u_j)) draw per pair i<j, mirrored onto the lower
// triangle; the diagonal is always zero.
AdjacencyMatrix sample_network(const Graphon& w, const LatentPositions& u, std::uint64_t seed);

}  // namespace graphon
