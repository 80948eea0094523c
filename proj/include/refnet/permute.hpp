#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "refnet/graph.hpp"
#include "refnet/random.hpp"

namespace refnet {

enum class KernelKind {
    node_label,
    edge_direction,
    edge_weight,
    endpoint_rewire,
    gbi_checkerboard,
    actor_swap,
};

const char* to_string(KernelKind kind) noexcept;
KernelKind kernel_kind_from_string(const std::string& s);

/// A swap kernel and the constraints restricting its proposals.
struct SwapKernel {
    KernelKind kind = KernelKind::node_label;
    bool same_day = false;                    // gbi_checkerboard
    std::optional<std::string> same_attr;     // gbi_checkerboard
    std::optional<std::string> class_attr;    // edge_direction
    std::vector<std::string> class_a;         // edge_direction: levels of class A
    std::vector<std::string> class_b;         // edge_direction: levels of class B
    bool nonzero_only = true;                 // edge_weight
    bool forbid_self = true;                  // actor_swap
};

/// Rows and columns permuted by one uniform permutation; ids and attributes
/// stay in place, so attributes are reassigned to network positions.
LabeledGraph permute_node_labels(const LabeledGraph& g, Rng& rng);

// Every sampler below is a Markov chain state machine: step() proposes one
// move and returns whether it was applied. A rejected proposal leaves the
// state unchanged and still counts as a step.

/// Exchanges w_ij and w_ji for i drawn from class A and j from class B.
class EdgeDirectionSampler {
public:
    EdgeDirectionSampler(LabeledGraph g, std::vector<std::size_t> class_a,
                         std::vector<std::size_t> class_b);
    bool step(Rng& rng);
    const LabeledGraph& state() const noexcept { return g_; }
    LabeledGraph release() && { return std::move(g_); }

private:
    LabeledGraph g_;
    std::vector<std::size_t> a_, b_;
};

/// Exchanges the weights of two dyads. Undirected graphs swap unordered
/// dyads so the matrix stays symmetric. With `nonzero_only` the eligible set
/// is the nonzero dyads, which is invariant under swaps.
class EdgeWeightSampler {
public:
    EdgeWeightSampler(LabeledGraph g, bool nonzero_only);
    bool step(Rng& rng);
    const LabeledGraph& state() const noexcept { return g_; }
    LabeledGraph release() && { return std::move(g_); }

private:
    LabeledGraph g_;
    std::vector<std::pair<std::size_t, std::size_t>> cells_;
};

/// Moves an edge (a,b) to (a,c). Preserves out-degrees and edge weights.
class EndpointRewireSampler {
public:
    explicit EndpointRewireSampler(LabeledGraph g);
    bool step(Rng& rng);
    const LabeledGraph& state() const noexcept { return g_; }
    LabeledGraph release() && { return std::move(g_); }

private:
    LabeledGraph g_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

struct CheckerboardConstraints {
    bool same_day = false;
    /// One value per GBI column; swaps only between equal values.
    std::optional<std::vector<std::string>> same_attr;
};

/// Checkerboard swap on a GBI: preserves every row and column sum.
class CheckerboardSampler {
public:
    CheckerboardSampler(GroupByIndividual gbi, CheckerboardConstraints constraints);
    bool step(Rng& rng);
    const GroupByIndividual& state() const noexcept { return gbi_; }
    GroupByIndividual release() && { return std::move(gbi_); }

private:
    GroupByIndividual gbi_;
    CheckerboardConstraints constraints_;
    std::vector<std::pair<std::size_t, std::size_t>> ones_;  // (event, individual)
    std::vector<std::vector<std::size_t>> day_cells_;        // indices into ones_
    std::vector<std::size_t> day_slot_;                      // event -> day bucket
};

/// Exchanges the actors of two records from the same subgroup event.
class ActorSwapSampler {
public:
    ActorSwapSampler(InteractionEvents ev, bool forbid_self);
    bool step(Rng& rng);
    const InteractionEvents& state() const noexcept { return ev_; }
    InteractionEvents release() && { return std::move(ev_); }

private:
    InteractionEvents ev_;
    bool forbid_self_;
    std::vector<std::vector<std::size_t>> by_event_;
    std::vector<std::size_t> slot_;  // record -> by_event_ index
};

// One-step forms of the samplers, operating in place.

bool edge_direction_step(LabeledGraph& g, std::span<const std::size_t> class_a,
                         std::span<const std::size_t> class_b, Rng& rng);
bool edge_weight_step(LabeledGraph& g, bool nonzero_only, Rng& rng);
bool endpoint_rewire_step(LabeledGraph& g, Rng& rng);
bool gbi_checkerboard_step(GroupByIndividual& gbi, const CheckerboardConstraints& constraints,
                           Rng& rng);
bool actor_swap_step(InteractionEvents& ev, bool forbid_self, Rng& rng);

/// Node indices whose attribute value is in `levels`.
std::vector<std::size_t> nodes_with(std::span<const std::string> values,
                                    std::span<const std::string> levels);

}  // namespace refnet
