#include "refnet/resample.hpp"

#include <algorithm>
#include <numeric>

#include "refnet/error.hpp"

namespace refnet {

LabeledGraph subsample_nodes(const LabeledGraph& g, std::size_t k, Rng& rng) {
    if (k < 1) throw DataError("subsample size must be at least 1");
    if (k > g.n()) throw DataError("subsample size exceeds node count");
    std::vector<std::size_t> order(g.n());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(k);

    LabeledGraph out;
    out.directed = g.directed;
    out.w = RealMatrix(k, k, 0.0);
    for (std::size_t a = 0; a < k; ++a) {
        out.ids.push_back(g.ids[order[a]]);
        for (std::size_t b = 0; b < k; ++b) out.w(a, b) = g.w(order[a], order[b]);
    }
    for (const auto& [name, column] : g.attrs) {
        auto& dst = out.attrs[name];
        for (std::size_t a = 0; a < k; ++a) dst.push_back(column[order[a]]);
    }
    return out;
}

std::vector<int> resample_degree_sequence(std::span<const int> degrees, Rng& rng) {
    if (degrees.empty()) throw DataError("cannot resample an empty degree sequence");
    std::vector<int> out(degrees.size());
    for (int& d : out) d = degrees[uniform_index(rng, degrees.size())];
    return out;
}

std::vector<double> resample_edge_weights(std::span<const double> weights, std::size_t m,
                                          bool with_replacement, Rng& rng) {
    if (with_replacement) {
        if (m > 0 && weights.empty()) throw DataError("cannot resample from no weights");
        std::vector<double> out(m);
        for (double& w : out) w = weights[uniform_index(rng, weights.size())];
        return out;
    }
    if (m > weights.size()) throw DataError("cannot draw more weights than observed without replacement");
    std::vector<double> pool(weights.begin(), weights.end());
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(m);
    return pool;
}

GroupByIndividual bootstrap_gbi_rows(const GroupByIndividual& gbi, Rng& rng) {
    const std::size_t rows = gbi.events();
    GroupByIndividual out;
    out.group = gbi.group;
    out.ids = gbi.ids;
    out.m = BinaryMatrix(rows, gbi.individuals(), 0);
    out.day.resize(rows);
    if (!gbi.loc.empty()) out.loc.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t src = uniform_index(rng, rows);
        std::copy(gbi.m.row(src).begin(), gbi.m.row(src).end(), out.m.row(r).begin());
        out.day[r] = gbi.day[src];
        if (!gbi.loc.empty()) out.loc[r] = gbi.loc[src];
    }
    return out;
}

std::vector<Point> bootstrap_locations(std::span<const Point> locs, Rng& rng) {
    if (locs.empty()) throw DataError("cannot bootstrap an empty location list");
    std::vector<Point> out(locs.size());
    for (Point& p : out) p = locs[uniform_index(rng, locs.size())];
    return out;
}

}  // namespace refnet
