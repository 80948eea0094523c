#include "refnet/kernels.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace refnet::kernels {
namespace {

struct Arc {
    std::size_t to;
    double length;
};

std::vector<std::vector<Arc>> adjacency_lengths(const RealMatrix& w) {
    const std::size_t n = w.rows();
    std::vector<std::vector<Arc>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && w(i, j) > 0.0) adj[i].push_back({j, 1.0 / w(i, j)});
    return adj;
}

// Path lengths are sums of reciprocals, so exact float comparison would split
// genuinely tied paths.
constexpr double kTieTolerance = 1e-10;

bool nearly_equal(double a, double b) {
    return std::abs(a - b) <= kTieTolerance * std::max(std::abs(a), std::abs(b));
}

// Brandes single-source dependency accumulation; adds delta_s(v) into `out`.
void accumulate_source(const std::vector<std::vector<Arc>>& adj, std::size_t source,
                       std::span<double> out) {
    const std::size_t n = adj.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, inf);
    std::vector<double> sigma(n, 0.0);
    std::vector<double> delta(n, 0.0);
    std::vector<char> done(n, 0);
    std::vector<std::vector<std::size_t>> preds(n);
    std::vector<std::size_t> order;
    order.reserve(n);

    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    dist[source] = 0.0;
    sigma[source] = 1.0;
    queue.push({0.0, source});
    while (!queue.empty()) {
        auto [d, v] = queue.top();
        queue.pop();
        if (done[v] || d > dist[v]) continue;
        done[v] = 1;
        order.push_back(v);
        for (const Arc& arc : adj[v]) {
            const std::size_t u = arc.to;
            if (done[u]) continue;
            const double candidate = dist[v] + arc.length;
            if (dist[u] == inf || (candidate < dist[u] && !nearly_equal(candidate, dist[u]))) {
                dist[u] = candidate;
                sigma[u] = sigma[v];
                preds[u].assign(1, v);
                queue.push({candidate, u});
            } else if (nearly_equal(candidate, dist[u])) {
                sigma[u] += sigma[v];
                preds[u].push_back(v);
            }
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const std::size_t x = *it;
        for (std::size_t v : preds[x]) delta[v] += sigma[v] / sigma[x] * (1.0 + delta[x]);
        if (x != source) out[x] += delta[x];
    }
}

}  // namespace

int max_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace serial {

CountMatrix cooccurrence(const BinaryMatrix& gbi) {
    const std::size_t n = gbi.cols();
    CountMatrix x(n, n, 0);
    std::vector<std::size_t> members;
    for (std::size_t e = 0; e < gbi.rows(); ++e) {
        members.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (gbi(e, i)) members.push_back(i);
        for (std::size_t a : members)
            for (std::size_t b : members) ++x(a, b);
    }
    return x;
}

std::vector<double> betweenness(const RealMatrix& w) {
    const auto adj = adjacency_lengths(w);
    std::vector<double> total(w.rows(), 0.0);
    std::vector<double> row(w.rows());
    for (std::size_t s = 0; s < w.rows(); ++s) {
        std::fill(row.begin(), row.end(), 0.0);
        accumulate_source(adj, s, row);
        for (std::size_t v = 0; v < row.size(); ++v) total[v] += row[v];
    }
    for (double& b : total) b /= 2.0;
    return total;
}

RealMatrix colocation(std::span<const Point> tracks, std::size_t steps) {
    const std::size_t n = steps == 0 ? 0 : tracks.size() / steps;
    RealMatrix out(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            std::size_t shared = 0;
            for (std::size_t t = 0; t < steps; ++t)
                if (tracks[i * steps + t] == tracks[j * steps + t]) ++shared;
            out(i, j) = out(j, i) = static_cast<double>(shared) / static_cast<double>(steps);
        }
    }
    return out;
}

}  // namespace serial

namespace omp {

CountMatrix cooccurrence(const BinaryMatrix& gbi) {
    const std::size_t events = gbi.rows();
    const std::size_t n = gbi.cols();
    const std::size_t words = (events + 63) / 64;
    std::vector<std::uint64_t> bits(n * words, 0);
    for (std::size_t e = 0; e < events; ++e)
        for (std::size_t i = 0; i < n; ++i)
            if (gbi(e, i)) bits[i * words + e / 64] |= std::uint64_t{1} << (e % 64);

    CountMatrix x(n, n, 0);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t ii = 0; ii < count; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        for (std::size_t j = i; j < n; ++j) {
            std::uint32_t shared = 0;
            for (std::size_t k = 0; k < words; ++k)
                shared += static_cast<std::uint32_t>(
                    std::popcount(bits[i * words + k] & bits[j * words + k]));
            x(i, j) = shared;
            x(j, i) = shared;
        }
    }
    return x;
}

std::vector<double> betweenness(const RealMatrix& w) {
    const std::size_t n = w.rows();
    const auto adj = adjacency_lengths(w);
    // One row per source, summed afterwards in source order so the result is
    // bit-identical to the serial kernel.
    RealMatrix per_source(n, n, 0.0);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t s = 0; s < count; ++s)
        accumulate_source(adj, static_cast<std::size_t>(s), per_source.row(static_cast<std::size_t>(s)));

    std::vector<double> total(n, 0.0);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t v = 0; v < n; ++v) total[v] += per_source(s, v);
    for (double& b : total) b /= 2.0;
    return total;
}

RealMatrix colocation(std::span<const Point> tracks, std::size_t steps) {
    const std::size_t n = steps == 0 ? 0 : tracks.size() / steps;
    RealMatrix out(n, n, 0.0);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t ii = 0; ii < count; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        const Point* a = tracks.data() + i * steps;
        for (std::size_t j = i + 1; j < n; ++j) {
            const Point* b = tracks.data() + j * steps;
            std::size_t shared = 0;
            for (std::size_t t = 0; t < steps; ++t) shared += (a[t] == b[t]) ? 1 : 0;
            const double value = static_cast<double>(shared) / static_cast<double>(steps);
            out(i, j) = value;
            out(j, i) = value;
        }
    }
    return out;
}

}  // namespace omp
}  // namespace refnet::kernels
