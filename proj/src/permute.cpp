#include "refnet/permute.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "refnet/error.hpp"

namespace refnet {

namespace {

constexpr std::pair<KernelKind, const char*> kKernelNames[] = {
    {KernelKind::node_label, "node_label"},
    {KernelKind::edge_direction, "edge_direction"},
    {KernelKind::edge_weight, "edge_weight"},
    {KernelKind::endpoint_rewire, "endpoint_rewire"},
    {KernelKind::gbi_checkerboard, "gbi_checkerboard"},
    {KernelKind::actor_swap, "actor_swap"},
};

}  // namespace

const char* to_string(KernelKind kind) noexcept {
    for (const auto& [k, name] : kKernelNames)
        if (k == kind) return name;
    return "unknown";
}

KernelKind kernel_kind_from_string(const std::string& s) {
    for (const auto& [k, name] : kKernelNames)
        if (s == name) return k;
    throw ConfigError("unknown swap kernel '" + s + "'");
}

LabeledGraph permute_node_labels(const LabeledGraph& g, Rng& rng) {
    const std::size_t n = g.n();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    LabeledGraph out = g;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.w(i, j) = g.w(perm[i], perm[j]);
    return out;
}

std::vector<std::size_t> nodes_with(std::span<const std::string> values,
                                    std::span<const std::string> levels) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (std::find(levels.begin(), levels.end(), values[i]) != levels.end()) out.push_back(i);
    return out;
}

// --- edge direction ---------------------------------------------------------

EdgeDirectionSampler::EdgeDirectionSampler(LabeledGraph g, std::vector<std::size_t> class_a,
                                           std::vector<std::size_t> class_b)
    : g_(std::move(g)), a_(std::move(class_a)), b_(std::move(class_b)) {
    if (!g_.directed) throw ModelIncompatible("edge direction swaps need a directed graph");
    if (a_.empty() || b_.empty()) throw DataError("edge direction classes must be nonempty");
    for (std::size_t i : a_) {
        if (i >= g_.n()) throw DataError("class member out of range");
        if (std::find(b_.begin(), b_.end(), i) != b_.end())
            throw DataError("edge direction classes must be disjoint");
    }
    for (std::size_t j : b_)
        if (j >= g_.n()) throw DataError("class member out of range");
}

bool EdgeDirectionSampler::step(Rng& rng) {
    const std::size_t i = a_[uniform_index(rng, a_.size())];
    const std::size_t j = b_[uniform_index(rng, b_.size())];
    std::swap(g_.w(i, j), g_.w(j, i));
    return true;
}

// --- edge weight -------------------------------------------------------------

EdgeWeightSampler::EdgeWeightSampler(LabeledGraph g, bool nonzero_only) : g_(std::move(g)) {
    const std::size_t n = g_.n();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = g_.directed ? 0 : i + 1; j < n; ++j) {
            if (i == j) continue;
            if (nonzero_only && g_.w(i, j) == 0.0) continue;
            cells_.emplace_back(i, j);
        }
    }
    if (cells_.size() < 2) throw DataError("edge weight swaps need at least two eligible dyads");
}

bool EdgeWeightSampler::step(Rng& rng) {
    const std::size_t p = uniform_index(rng, cells_.size());
    const std::size_t q = uniform_index(rng, cells_.size());
    if (p == q) return false;
    const auto [i1, j1] = cells_[p];
    const auto [i2, j2] = cells_[q];
    std::swap(g_.w(i1, j1), g_.w(i2, j2));
    if (!g_.directed) {
        g_.w(j1, i1) = g_.w(i1, j1);
        g_.w(j2, i2) = g_.w(i2, j2);
    }
    return true;
}

// --- endpoint rewiring ------------------------------------------------------

EndpointRewireSampler::EndpointRewireSampler(LabeledGraph g) : g_(std::move(g)) {
    if (!g_.directed) throw ModelIncompatible("endpoint rewiring needs a directed graph");
    for (std::size_t i = 0; i < g_.n(); ++i)
        for (std::size_t j = 0; j < g_.n(); ++j)
            if (i != j && g_.w(i, j) > 0.0) edges_.emplace_back(i, j);
    if (edges_.empty()) throw DataError("endpoint rewiring needs at least one edge");
}

bool EndpointRewireSampler::step(Rng& rng) {
    const std::size_t e = uniform_index(rng, edges_.size());
    const auto [a, b] = edges_[e];
    std::size_t c = uniform_index(rng, g_.n() - 1);
    if (c >= a) ++c;  // uniform over nodes other than a
    if (c == b || g_.w(a, c) > 0.0) return false;
    g_.w(a, c) = g_.w(a, b);
    g_.w(a, b) = 0.0;
    edges_[e].second = c;
    return true;
}

// --- GBI checkerboard -------------------------------------------------------

CheckerboardSampler::CheckerboardSampler(GroupByIndividual gbi, CheckerboardConstraints constraints)
    : gbi_(std::move(gbi)), constraints_(std::move(constraints)) {
    if (gbi_.events() < 2 || gbi_.individuals() < 2)
        throw DataError("checkerboard swaps need at least two events and two individuals");
    if (constraints_.same_attr && constraints_.same_attr->size() != gbi_.individuals())
        throw DataError("same-attribute constraint needs one value per individual");
    for (std::size_t e = 0; e < gbi_.events(); ++e)
        for (std::size_t i = 0; i < gbi_.individuals(); ++i)
            if (gbi_.m(e, i)) ones_.emplace_back(e, i);
    if (ones_.empty()) throw DataError("checkerboard swaps need at least one occupied cell");

    if (constraints_.same_day) {
        if (gbi_.day.size() != gbi_.events()) throw DataError("same-day constraint needs event days");
        std::map<int, std::size_t> slot_of_day;
        day_slot_.resize(gbi_.events());
        for (std::size_t e = 0; e < gbi_.events(); ++e) {
            auto [it, inserted] = slot_of_day.try_emplace(gbi_.day[e], slot_of_day.size());
            day_slot_[e] = it->second;
        }
        day_cells_.resize(slot_of_day.size());
        for (std::size_t k = 0; k < ones_.size(); ++k)
            day_cells_[day_slot_[ones_[k].first]].push_back(k);
    }
}

bool CheckerboardSampler::step(Rng& rng) {
    const std::size_t k1 = uniform_index(rng, ones_.size());
    std::size_t k2;
    if (constraints_.same_day) {
        const auto& bucket = day_cells_[day_slot_[ones_[k1].first]];
        k2 = bucket[uniform_index(rng, bucket.size())];
    } else {
        k2 = uniform_index(rng, ones_.size());
    }
    const auto [e1, i1] = ones_[k1];
    const auto [e2, i2] = ones_[k2];
    if (e1 == e2 || i1 == i2) return false;
    if (gbi_.m(e1, i2) || gbi_.m(e2, i1)) return false;
    if (constraints_.same_attr && (*constraints_.same_attr)[i1] != (*constraints_.same_attr)[i2])
        return false;

    gbi_.m(e2, i1) = 1;
    gbi_.m(e1, i1) = 0;
    gbi_.m(e1, i2) = 1;
    gbi_.m(e2, i2) = 0;
    // Both events share a day bucket whenever same_day is set, so only the
    // cell coordinates change.
    ones_[k1].first = e2;
    ones_[k2].first = e1;
    return true;
}

// --- actor swap ---------------------------------------------------------------

ActorSwapSampler::ActorSwapSampler(InteractionEvents ev, bool forbid_self)
    : ev_(std::move(ev)), forbid_self_(forbid_self) {
    if (ev_.records.size() < 2) throw DataError("actor swaps need at least two records");
    std::map<std::size_t, std::size_t> slot_of_event;
    slot_.resize(ev_.records.size());
    for (std::size_t t = 0; t < ev_.records.size(); ++t) {
        auto [it, inserted] = slot_of_event.try_emplace(ev_.records[t].event, by_event_.size());
        if (inserted) by_event_.emplace_back();
        by_event_[it->second].push_back(t);
        slot_[t] = it->second;
    }
}

bool ActorSwapSampler::step(Rng& rng) {
    const std::size_t t1 = uniform_index(rng, ev_.records.size());
    const auto& same_event = by_event_[slot_[t1]];
    const std::size_t t2 = same_event[uniform_index(rng, same_event.size())];
    if (t1 == t2) return false;
    Interaction& r1 = ev_.records[t1];
    Interaction& r2 = ev_.records[t2];
    if (forbid_self_ && (r2.actor == r1.recipient || r1.actor == r2.recipient)) return false;
    std::swap(r1.actor, r2.actor);
    return true;
}

// --- one-step forms -----------------------------------------------------------
// The sampler works on a copy so a throwing constructor leaves the input intact.

bool edge_direction_step(LabeledGraph& g, std::span<const std::size_t> class_a,
                         std::span<const std::size_t> class_b, Rng& rng) {
    EdgeDirectionSampler s(g, {class_a.begin(), class_a.end()},
                           {class_b.begin(), class_b.end()});
    const bool accepted = s.step(rng);
    g = std::move(s).release();
    return accepted;
}

bool edge_weight_step(LabeledGraph& g, bool nonzero_only, Rng& rng) {
    EdgeWeightSampler s(g, nonzero_only);
    const bool accepted = s.step(rng);
    g = std::move(s).release();
    return accepted;
}

bool endpoint_rewire_step(LabeledGraph& g, Rng& rng) {
    EndpointRewireSampler s(g);
    const bool accepted = s.step(rng);
    g = std::move(s).release();
    return accepted;
}

bool gbi_checkerboard_step(GroupByIndividual& gbi, const CheckerboardConstraints& constraints,
                           Rng& rng) {
    CheckerboardSampler s(gbi, constraints);
    const bool accepted = s.step(rng);
    gbi = std::move(s).release();
    return accepted;
}

bool actor_swap_step(InteractionEvents& ev, bool forbid_self, Rng& rng) {
    ActorSwapSampler s(ev, forbid_self);
    const bool accepted = s.step(rng);
    ev = std::move(s).release();
    return accepted;
}

}  // namespace refnet
