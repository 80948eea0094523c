#pragma once

#include <cstddef>

#include "refnet/graph.hpp"
#include "refnet/random.hpp"

namespace refnet {

// Unweighted undirected random graphs; present edges have weight 1.

/// Each unordered pair joined independently with probability `p`.
LabeledGraph gen_gnp(std::size_t n, double p, Rng& rng);

/// Uniform over graphs with exactly `m` edges.
LabeledGraph gen_gnm(std::size_t n, std::size_t m, Rng& rng);

/// Watts-Strogatz ring: node i joins its `nei` nearest neighbours on each
/// side, then each lattice edge has its far endpoint moved with probability
/// `p` to a uniform node that is neither i nor already adjacent to i.
LabeledGraph gen_small_world(std::size_t n, std::size_t nei, double p, Rng& rng);

}  // namespace refnet
