#include "refnet/generative.hpp"

#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

#include "refnet/error.hpp"

namespace refnet {

namespace {

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw DataError(std::string(what) + " must lie in [0, 1]");
}

void connect(LabeledGraph& g, std::size_t i, std::size_t j) {
    g.w(i, j) = 1.0;
    g.w(j, i) = 1.0;
}

// Unordered pair with index k in row-major order of the strict upper triangle.
std::pair<std::size_t, std::size_t> pair_at(std::size_t k, std::size_t n) {
    std::size_t i = 0;
    std::size_t row_len = n - 1;
    while (k >= row_len) {
        k -= row_len;
        ++i;
        --row_len;
    }
    return {i, i + 1 + k};
}

}  // namespace

LabeledGraph gen_gnp(std::size_t n, double p, Rng& rng) {
    check_probability(p, "edge probability");
    LabeledGraph g = LabeledGraph::empty(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (bernoulli(rng, p)) connect(g, i, j);
    return g;
}

LabeledGraph gen_gnm(std::size_t n, std::size_t m, Rng& rng) {
    const std::size_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
    if (m > pairs)
        throw DataError("edge count " + std::to_string(m) + " exceeds the " + std::to_string(pairs) +
                        " possible pairs");
    LabeledGraph g = LabeledGraph::empty(n);
    // Floyd's sampling of m distinct pair indices.
    std::unordered_set<std::size_t> chosen;
    chosen.reserve(m);
    for (std::size_t k = pairs - m; k < pairs; ++k) {
        const std::size_t t = std::uniform_int_distribution<std::size_t>(0, k)(rng);
        const std::size_t pick = chosen.insert(t).second ? t : k;
        if (pick == k) chosen.insert(k);
        const auto [i, j] = pair_at(pick, n);
        connect(g, i, j);
    }
    return g;
}

LabeledGraph gen_small_world(std::size_t n, std::size_t nei, double p, Rng& rng) {
    check_probability(p, "rewiring probability");
    if (nei < 1) throw DataError("small-world neighbourhood must be at least 1");
    if (n <= 2 * nei) throw DataError("small-world graph needs more than 2*nei nodes");
    LabeledGraph g = LabeledGraph::empty(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 1; k <= nei; ++k) connect(g, i, (i + k) % n);

    std::vector<std::size_t> deg(n, 2 * nei);
    for (std::size_t k = 1; k <= nei; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = (i + k) % n;
            if (g.w(i, j) == 0.0 || !bernoulli(rng, p)) continue;  // already moved away
            if (deg[i] >= n - 1) continue;                         // no free target
            std::size_t t;
            do {
                t = uniform_index(rng, n);
            } while (t == i || g.w(i, t) != 0.0);
            g.w(i, j) = g.w(j, i) = 0.0;
            connect(g, i, t);
            --deg[j];
            ++deg[t];
        }
    }
    return g;
}

}  // namespace refnet
