#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "refnet/graph.hpp"
#include "refnet/random.hpp"

namespace testing {

inline refnet::RealMatrix matrix(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    refnet::RealMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

inline refnet::LabeledGraph graph(std::initializer_list<std::initializer_list<double>> rows,
                                  bool directed) {
    refnet::LabeledGraph g = refnet::LabeledGraph::empty(rows.size(), directed);
    g.w = matrix(rows);
    return g;
}

inline refnet::GroupByIndividual gbi(std::initializer_list<std::initializer_list<int>> rows) {
    refnet::GroupByIndividual out;
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    out.m = refnet::BinaryMatrix(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (int v : row) out.m(i, j++) = static_cast<unsigned char>(v);
        out.day.push_back(1);
        ++i;
    }
    out.group = 1;
    for (std::size_t j = 0; j < c; ++j) out.ids.push_back("i" + std::to_string(j));
    return out;
}

/// Random GBI with no empty rows; each cell is 1 with probability `p`.
inline refnet::GroupByIndividual random_gbi(std::size_t events, std::size_t n, double p,
                                            refnet::Rng& rng, int days = 1) {
    refnet::GroupByIndividual out;
    out.m = refnet::BinaryMatrix(events, n);
    for (std::size_t e = 0; e < events; ++e) {
        bool any = false;
        for (std::size_t j = 0; j < n; ++j) {
            out.m(e, j) = refnet::bernoulli(rng, p);
            any = any || out.m(e, j);
        }
        if (!any) out.m(e, refnet::uniform_index(rng, n)) = 1;
        out.day.push_back(1 + static_cast<int>(refnet::uniform_index(rng, static_cast<std::size_t>(days))));
    }
    out.group = 1;
    for (std::size_t j = 0; j < n; ++j) out.ids.push_back("i" + std::to_string(j));
    return out;
}

/// Random undirected (or directed) weighted graph; each dyad present with
/// probability `p`, weight uniform in (0, 1].
inline refnet::LabeledGraph random_graph(std::size_t n, double p, bool directed, refnet::Rng& rng) {
    refnet::LabeledGraph g = refnet::LabeledGraph::empty(n, directed);
    std::uniform_real_distribution<double> weight(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = directed ? 0 : i + 1; j < n; ++j) {
            if (i == j || !refnet::bernoulli(rng, p)) continue;
            const double w = 1.0 - weight(rng);
            g.w(i, j) = w;
            if (!directed) g.w(j, i) = w;
        }
    return g;
}

}  // namespace testing
