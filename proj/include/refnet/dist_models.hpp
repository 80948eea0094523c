#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "refnet/graph.hpp"
#include "refnet/random.hpp"

namespace refnet {

/// Poisson MLE of a degree sequence: the arithmetic mean.
double fit_degree_poisson(std::span<const int> degrees);

/// Erdos-Gallai test; an odd sum is not graphical.
bool is_graphical(std::span<const int> degrees);

/// Simple undirected graph with exactly the given degrees, by random stub
/// matching. A pair of stubs that would form a loop or a repeated edge is
/// rejected and redrawn; when no valid pair remains the whole construction
/// restarts, at most `max_attempts` times. Sequences with more than half
/// of all possible edges are built as the complement of a realization of
/// (n - 1 - d_i).
/// Throws NotRealizable for non-graphical input, ConstructionFailed when the
/// attempts run out.
LabeledGraph graph_from_degree_sequence(std::span<const int> degrees, Rng& rng,
                                        std::size_t max_attempts = 1000);

/// Draws n iid Poisson(lambda) degrees and realizes them, redrawing the whole
/// sequence up to `max_retries` times when it cannot be realized.
LabeledGraph sample_poisson_degree_graph(std::size_t n, double lambda, std::size_t max_retries,
                                         Rng& rng);

/// Edge i-j present independently with probability min(1, k_i k_j / sum k).
LabeledGraph chung_lu(std::span<const double> degrees, Rng& rng);

/// Each weight is `w_low` with probability `p_low`, otherwise a Normal(mu,
/// sigma) draw redrawn until it reaches kMinPositiveWeight.
std::vector<double> mixture_edge_weights(std::size_t m, double p_low, double w_low, double mu,
                                         double sigma, Rng& rng);

inline constexpr double kMinPositiveWeight = 1e-6;

struct NormalFit {
    double mean = 0.0;
    double sd = 0.0;
};

/// Mean and sample sd over every cell of `w`, zeros included. The diagonal
/// counts only when `include_diagonal` is set.
NormalFit fit_weight_normal(const RealMatrix& w, bool include_diagonal);

/// G(n, m) topology with iid Normal(mu, sigma) weights, negatives set to 0.
LabeledGraph naive_weighted_er(std::size_t n, std::size_t m, double mu, double sigma, Rng& rng);

/// Degree law: an empirical table P_k or a Poisson(lambda).
struct DegreeDistribution {
    enum class Kind { empirical, poisson } kind = Kind::poisson;
    double lambda = 1.0;
    std::map<int, double> table;

    static DegreeDistribution empirical(std::span<const int> degrees);
    static DegreeDistribution poisson(double lambda);

    std::vector<int> sample(std::size_t n, Rng& rng) const;
};

void validate(const DegreeDistribution& d);

/// Per-node degree, weighted clustering and mean row weight, for checking
/// whether degree covaries with other structure before sampling degrees
/// alone.
struct DegreeCovariates {
    std::vector<int> degree;
    std::vector<std::optional<double>> clustering;
    std::vector<double> mean_weight;
};

DegreeCovariates degree_covariates(const LabeledGraph& g);

}  // namespace refnet
