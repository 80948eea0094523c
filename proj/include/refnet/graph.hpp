#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "refnet/matrix.hpp"

namespace refnet {

struct Point {
    int x = 0;
    int y = 0;
    friend auto operator<=>(const Point&, const Point&) = default;
};

/// Categorical node attributes, one column per attribute name.
using AttributeTable = std::map<std::string, std::vector<std::string>>;

/// Weighted network on `n()` labelled nodes. Absent edges have weight 0.
struct LabeledGraph {
    bool directed = false;
    RealMatrix w;
    std::vector<std::string> ids;
    AttributeTable attrs;

    std::size_t n() const noexcept { return w.rows(); }

    /// Edgeless graph with ids "0".."n-1".
    static LabeledGraph empty(std::size_t n, bool directed = false);

    /// Values of attribute `name`; throws DataError when missing.
    const std::vector<std::string>& attribute(const std::string& name) const;

    friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;
};

/// Throws DataError unless the diagonal is zero, weights are finite and
/// nonnegative, undirected graphs are exactly symmetric, and ids/attribute
/// columns have length n.
void validate(const LabeledGraph& g);

/// Group-by-individual matrix: one row per grouping event, one column per
/// individual. `loc` is either empty or holds one coordinate per event.
struct GroupByIndividual {
    BinaryMatrix m;
    std::vector<int> day;
    int group = 0;
    std::vector<Point> loc;
    std::vector<std::string> ids;

    std::size_t events() const noexcept { return m.rows(); }
    std::size_t individuals() const noexcept { return m.cols(); }

    /// Members of event `e`, in column order.
    std::vector<std::size_t> members(std::size_t e) const;

    friend bool operator==(const GroupByIndividual&, const GroupByIndividual&) = default;
};

/// Throws DataError on empty rows, non-binary entries, or metadata whose
/// length disagrees with the matrix.
void validate(const GroupByIndividual& gbi);

enum class InteractionKind { dominance, affiliation };

const char* to_string(InteractionKind kind) noexcept;
InteractionKind interaction_kind_from_string(const std::string& s);

struct Interaction {
    int day = 0;
    std::size_t event = 0;
    std::size_t actor = 0;
    std::size_t recipient = 0;
    InteractionKind kind = InteractionKind::dominance;
    friend bool operator==(const Interaction&, const Interaction&) = default;
};

/// Records of directed interactions between members of the same subgroup.
struct InteractionEvents {
    std::vector<Interaction> records;
    friend bool operator==(const InteractionEvents&, const InteractionEvents&) = default;
};

/// Checks actor != recipient, and (when `gbi` is given) that each event index
/// is a valid row whose subgroup contains both participants.
void validate(const InteractionEvents& ev, const GroupByIndividual* gbi = nullptr);

/// Between-group association summed over member dyads.
struct GroupNetwork {
    RealMatrix g;
    std::vector<std::string> clans;
    std::vector<Point> centers;
};

/// Simple ratio index network x_ij / (n_i + n_j - x_ij), one sampling period
/// per GBI row. Individuals never observed get all-zero rows and are listed
/// in `unobserved` when it is non-null.
LabeledGraph sri_from_gbi(const GroupByIndividual& gbi,
                          std::vector<std::size_t>* unobserved = nullptr);

/// c / (2D - c): association index for `c` co-occurrence days out of `days`.
double between_group_index(double c, double days);

/// Directed multigraph collapsed to counts: w_ab = #records with actor a,
/// recipient b.
LabeledGraph weighted_from_events(const InteractionEvents& ev, std::size_t n);

enum class StrengthMode { in, out, all };

std::vector<double> strength(const LabeledGraph& g, StrengthMode mode);

/// Number of nonzero incident entries (out-edges for directed graphs).
std::vector<int> degree(const LabeledGraph& g);

/// Shortest-path betweenness with edge length 1/w. Each unordered pair of
/// endpoints contributes once; `normalized` divides by n^2 - n.
std::vector<double> betweenness(const LabeledGraph& g, bool normalized = false);

/// Barrat weighted local clustering. Nodes with degree < 2 are nullopt.
std::vector<std::optional<double>> weighted_clustering(const LabeledGraph& g);

/// Sums w_ab over every ordered pair with a and b in different groups, so a
/// symmetric input contributes each dyad twice.
GroupNetwork collapse_group_network(const LabeledGraph& g,
                                    std::span<const std::size_t> membership,
                                    std::size_t n_groups);

}  // namespace refnet
