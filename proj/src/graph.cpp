#include "refnet/graph.hpp"

#include <cmath>
#include <string>

#include "refnet/error.hpp"
#include "refnet/kernels.hpp"

namespace refnet {

LabeledGraph LabeledGraph::empty(std::size_t n, bool directed) {
    LabeledGraph g;
    g.directed = directed;
    g.w = RealMatrix(n, n, 0.0);
    g.ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) g.ids.push_back(std::to_string(i));
    return g;
}

const std::vector<std::string>& LabeledGraph::attribute(const std::string& name) const {
    auto it = attrs.find(name);
    if (it == attrs.end()) throw DataError("graph has no node attribute '" + name + "'");
    return it->second;
}

void validate(const LabeledGraph& g) {
    const std::size_t n = g.n();
    if (g.w.cols() != n) throw DataError("weight matrix is not square");
    if (g.ids.size() != n) throw DataError("node id count does not match matrix size");
    for (const auto& [name, column] : g.attrs)
        if (column.size() != n) throw DataError("attribute '" + name + "' has wrong length");
    for (std::size_t i = 0; i < n; ++i) {
        if (g.w(i, i) != 0.0) throw DataError("nonzero diagonal at node " + g.ids[i]);
        for (std::size_t j = 0; j < n; ++j) {
            const double v = g.w(i, j);
            if (!std::isfinite(v) || v < 0.0)
                throw DataError("weights must be finite and nonnegative");
            if (!g.directed && v != g.w(j, i))
                throw DataError("undirected graph has an asymmetric weight matrix");
        }
    }
}

std::vector<std::size_t> GroupByIndividual::members(std::size_t e) const {
    std::vector<std::size_t> out;
    const auto row = m.row(e);
    for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i]) out.push_back(i);
    return out;
}

void validate(const GroupByIndividual& gbi) {
    if (gbi.day.size() != gbi.events()) throw DataError("GBI day vector length mismatch");
    if (!gbi.loc.empty() && gbi.loc.size() != gbi.events())
        throw DataError("GBI location vector length mismatch");
    if (!gbi.ids.empty() && gbi.ids.size() != gbi.individuals())
        throw DataError("GBI id count does not match column count");
    for (std::size_t e = 0; e < gbi.events(); ++e) {
        std::size_t sum = 0;
        for (unsigned char v : gbi.m.row(e)) {
            if (v > 1) throw DataError("GBI entries must be 0 or 1");
            sum += v;
        }
        if (sum == 0) throw DataError("GBI row " + std::to_string(e) + " is empty");
    }
}

const char* to_string(InteractionKind kind) noexcept {
    return kind == InteractionKind::dominance ? "dominance" : "affiliation";
}

InteractionKind interaction_kind_from_string(const std::string& s) {
    if (s == "dominance") return InteractionKind::dominance;
    if (s == "affiliation") return InteractionKind::affiliation;
    throw DataError("unknown interaction kind '" + s + "'");
}

void validate(const InteractionEvents& ev, const GroupByIndividual* gbi) {
    for (const Interaction& r : ev.records) {
        if (r.actor == r.recipient) throw DataError("interaction record with actor == recipient");
        if (gbi == nullptr) continue;
        if (r.event >= gbi->events()) throw DataError("interaction refers to a missing event");
        if (r.actor >= gbi->individuals() || r.recipient >= gbi->individuals() ||
            !gbi->m(r.event, r.actor) || !gbi->m(r.event, r.recipient))
            throw DataError("interaction participants are not both in the event's subgroup");
    }
}

LabeledGraph sri_from_gbi(const GroupByIndividual& gbi, std::vector<std::size_t>* unobserved) {
    const std::size_t n = gbi.individuals();
    const auto x = kernels::omp::cooccurrence(gbi.m);

    LabeledGraph g = LabeledGraph::empty(n, false);
    if (!gbi.ids.empty()) g.ids = gbi.ids;
    if (unobserved != nullptr) unobserved->clear();
    for (std::size_t i = 0; i < n; ++i) {
        if (x(i, i) == 0 && unobserved != nullptr) unobserved->push_back(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double both = x(i, j);
            const double either = static_cast<double>(x(i, i)) + x(j, j) - both;
            const double s = either > 0.0 ? both / either : 0.0;
            g.w(i, j) = g.w(j, i) = s;
        }
    }
    return g;
}

double between_group_index(double c, double days) {
    if (!(days > 0.0)) throw DataError("observation days must be positive");
    if (c < 0.0) throw DataError("co-occurrence count must be nonnegative");
    if (c > days) throw DataError("more co-occurrence days than days observed");
    return c / (2.0 * days - c);
}

LabeledGraph weighted_from_events(const InteractionEvents& ev, std::size_t n) {
    LabeledGraph g = LabeledGraph::empty(n, true);
    for (const Interaction& r : ev.records) {
        if (r.actor >= n || r.recipient >= n) throw DataError("interaction node id out of range");
        if (r.actor == r.recipient) throw DataError("interaction record with actor == recipient");
        g.w(r.actor, r.recipient) += 1.0;
    }
    return g;
}

std::vector<double> strength(const LabeledGraph& g, StrengthMode mode) {
    const std::size_t n = g.n();
    const bool rows = mode != StrengthMode::in || !g.directed;
    const bool cols = g.directed && mode != StrengthMode::out;
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (rows) out[i] += g.w(i, j);
            if (cols) out[j] += g.w(i, j);
        }
    }
    return out;
}

std::vector<int> degree(const LabeledGraph& g) {
    std::vector<int> out(g.n(), 0);
    for (std::size_t i = 0; i < g.n(); ++i)
        for (std::size_t j = 0; j < g.n(); ++j)
            if (i != j && g.w(i, j) > 0.0) ++out[i];
    return out;
}

std::vector<double> betweenness(const LabeledGraph& g, bool normalized) {
    const std::size_t n = g.n();
    if (n < 3) return std::vector<double>(n, 0.0);
    auto b = kernels::omp::betweenness(g.w);
    if (normalized) {
        const double pairs = static_cast<double>(n) * static_cast<double>(n) - static_cast<double>(n);
        for (double& v : b) v /= pairs;
    }
    return b;
}

std::vector<std::optional<double>> weighted_clustering(const LabeledGraph& g) {
    const std::size_t n = g.n();
    std::vector<std::optional<double>> out(n);
    std::vector<std::size_t> nbrs;
    for (std::size_t i = 0; i < n; ++i) {
        nbrs.clear();
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i && g.w(i, j) > 0.0) {
                nbrs.push_back(j);
                s += g.w(i, j);
            }
        }
        const std::size_t k = nbrs.size();
        if (k < 2) continue;
        double closed = 0.0;
        for (std::size_t a : nbrs)
            for (std::size_t b : nbrs)
                if (a != b && g.w(a, b) > 0.0) closed += (g.w(i, a) + g.w(i, b)) / 2.0;
        out[i] = closed / (s * static_cast<double>(k - 1));
    }
    return out;
}

GroupNetwork collapse_group_network(const LabeledGraph& g, std::span<const std::size_t> membership,
                                    std::size_t n_groups) {
    if (membership.size() != g.n()) throw DataError("membership must cover every node");
    GroupNetwork out;
    out.g = RealMatrix(n_groups, n_groups, 0.0);
    for (std::size_t i = 0; i < g.n(); ++i) {
        if (membership[i] >= n_groups) throw DataError("group index out of range");
        for (std::size_t j = 0; j < g.n(); ++j)
            if (membership[i] != membership[j]) out.g(membership[i], membership[j]) += g.w(i, j);
    }
    return out;
}

}  // namespace refnet
