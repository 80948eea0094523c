#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "refnet/graph.hpp"
#include "refnet/random.hpp"

namespace refnet {

/// Induced subgraph on `k` nodes drawn without replacement. Attributes and
/// ids follow their nodes.
LabeledGraph subsample_nodes(const LabeledGraph& g, std::size_t k, Rng& rng);

/// Same-length sequence drawn with replacement from `degrees`.
std::vector<int> resample_degree_sequence(std::span<const int> degrees, Rng& rng);

std::vector<double> resample_edge_weights(std::span<const double> weights, std::size_t m,
                                          bool with_replacement, Rng& rng);

/// Bootstrap of GBI rows; day and location metadata travel with their rows.
GroupByIndividual bootstrap_gbi_rows(const GroupByIndividual& gbi, Rng& rng);

/// Bootstrap of observed (x, y) pairs, kept intact.
std::vector<Point> bootstrap_locations(std::span<const Point> locs, Rng& rng);

}  // namespace refnet
