#include "refnet/dist_models.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "refnet/error.hpp"
#include "refnet/generative.hpp"

namespace refnet {

namespace {

void check_degrees(std::span<const int> degrees) {
    if (degrees.empty()) throw DataError("degree sequence is empty");
    for (int d : degrees)
        if (d < 0) throw DataError("degrees must be nonnegative");
}

// One stub-matching pass. Returns false when the remaining stubs admit no
// valid pair.
bool try_match(std::span<const int> degrees, LabeledGraph& g, Rng& rng) {
    std::vector<std::size_t> stubs;
    for (std::size_t i = 0; i < degrees.size(); ++i)
        stubs.insert(stubs.end(), static_cast<std::size_t>(degrees[i]), i);

    auto stuck = [&] {
        std::vector<std::size_t> open = stubs;
        std::sort(open.begin(), open.end());
        open.erase(std::unique(open.begin(), open.end()), open.end());
        for (std::size_t a = 0; a < open.size(); ++a)
            for (std::size_t b = a + 1; b < open.size(); ++b)
                if (g.w(open[a], open[b]) == 0.0) return false;
        return true;
    };

    while (!stubs.empty()) {
        const std::size_t p = uniform_index(rng, stubs.size());
        std::size_t q = uniform_index(rng, stubs.size() - 1);
        if (q >= p) ++q;
        const std::size_t u = stubs[p];
        const std::size_t v = stubs[q];
        if (u == v || g.w(u, v) != 0.0) {
            if (stuck()) return false;
            continue;
        }
        g.w(u, v) = g.w(v, u) = 1.0;
        // Remove the higher position first so the lower one stays valid.
        for (std::size_t pos : {std::max(p, q), std::min(p, q)}) {
            stubs[pos] = stubs.back();
            stubs.pop_back();
        }
    }
    return true;
}

}  // namespace

double fit_degree_poisson(std::span<const int> degrees) {
    check_degrees(degrees);
    const double total = std::accumulate(degrees.begin(), degrees.end(), 0.0);
    return total / static_cast<double>(degrees.size());
}

bool is_graphical(std::span<const int> degrees) {
    std::vector<long long> d(degrees.begin(), degrees.end());
    if (std::any_of(d.begin(), d.end(), [](long long x) { return x < 0; })) return false;
    if (std::accumulate(d.begin(), d.end(), 0LL) % 2 != 0) return false;
    std::sort(d.begin(), d.end(), std::greater<>());
    const std::size_t n = d.size();
    long long head = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        head += d[k - 1];
        long long tail = 0;
        for (std::size_t i = k; i < n; ++i) tail += std::min<long long>(d[i], static_cast<long long>(k));
        if (head > static_cast<long long>(k * (k - 1)) + tail) return false;
    }
    return true;
}

LabeledGraph graph_from_degree_sequence(std::span<const int> degrees, Rng& rng,
                                        std::size_t max_attempts) {
    check_degrees(degrees);
    if (std::accumulate(degrees.begin(), degrees.end(), 0LL) % 2 != 0)
        throw NotRealizable("degree sum is odd");
    if (!is_graphical(degrees)) throw NotRealizable("degree sequence fails the Erdos-Gallai condition");
    // More than half the possible edges: match the sparser complement
    // sequence instead and flip the result.
    const std::size_t n = degrees.size();
    const long long total = std::accumulate(degrees.begin(), degrees.end(), 0LL);
    const bool dense = total > static_cast<long long>(n * (n - 1) / 2);
    std::vector<int> target(degrees.begin(), degrees.end());
    if (dense)
        for (int& d : target) d = static_cast<int>(n) - 1 - d;
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        LabeledGraph g = LabeledGraph::empty(n);
        if (!try_match(target, g, rng)) continue;
        if (dense)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) g.w(i, j) = i != j && g.w(i, j) == 0.0 ? 1.0 : 0.0;
        return g;
    }
    throw ConstructionFailed("degree sequence not realized after " + std::to_string(max_attempts) +
                             " attempts");
}

LabeledGraph sample_poisson_degree_graph(std::size_t n, double lambda, std::size_t max_retries,
                                         Rng& rng) {
    if (n < 2) throw DataError("Poisson degree graph needs at least two nodes");
    if (!(lambda > 0.0)) throw DataError("Poisson degree mean must be positive");
    const DegreeDistribution law = DegreeDistribution::poisson(lambda);
    for (std::size_t r = 0; r < max_retries; ++r) {
        const std::vector<int> seq = law.sample(n, rng);
        try {
            return graph_from_degree_sequence(seq, rng);
        } catch (const NotRealizable&) {
        } catch (const ConstructionFailed&) {
        }
    }
    throw ConstructionFailed("no realizable Poisson degree sequence after " +
                             std::to_string(max_retries) + " retries");
}

LabeledGraph chung_lu(std::span<const double> degrees, Rng& rng) {
    for (double k : degrees)
        if (!(k >= 0.0) || !std::isfinite(k)) throw DataError("target degrees must be finite and nonnegative");
    const double total = std::accumulate(degrees.begin(), degrees.end(), 0.0);
    const std::size_t n = degrees.size();
    LabeledGraph g = LabeledGraph::empty(n);
    if (total <= 0.0) return g;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (bernoulli(rng, degrees[i] * degrees[j] / total)) g.w(i, j) = g.w(j, i) = 1.0;
    return g;
}

std::vector<double> mixture_edge_weights(std::size_t m, double p_low, double w_low, double mu,
                                         double sigma, Rng& rng) {
    if (!(p_low >= 0.0 && p_low <= 1.0)) throw DataError("p_low must lie in [0, 1]");
    if (!(sigma >= 0.0)) throw DataError("sigma must be nonnegative");
    if (sigma == 0.0 && mu < kMinPositiveWeight && p_low < 1.0)
        throw DataError("a zero-sd weight law needs a positive mean");
    constexpr int kMaxRedraws = 100000;
    std::vector<double> out(m);
    for (double& w : out) {
        if (bernoulli(rng, p_low)) {
            w = w_low;
            continue;
        }
        int redraws = 0;
        do {
            if (++redraws > kMaxRedraws)
                throw ConstructionFailed("normal weight law yields almost no positive draws");
            w = normal(rng, mu, sigma);
        } while (w < kMinPositiveWeight);
    }
    return out;
}

NormalFit fit_weight_normal(const RealMatrix& w, bool include_diagonal) {
    if (w.rows() != w.cols()) throw DataError("weight matrix must be square");
    std::vector<double> cells;
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j)
            if (include_diagonal || i != j) cells.push_back(w(i, j));
    if (cells.size() < 2) throw DataError("too few cells to fit a weight distribution");
    const double sum = std::accumulate(cells.begin(), cells.end(), 0.0);
    const double mu = sum / static_cast<double>(cells.size());
    double ss = 0.0;
    for (double c : cells) ss += (c - mu) * (c - mu);
    return {mu, std::sqrt(ss / static_cast<double>(cells.size() - 1))};
}

LabeledGraph naive_weighted_er(std::size_t n, std::size_t m, double mu, double sigma, Rng& rng) {
    if (!(sigma >= 0.0)) throw DataError("sigma must be nonnegative");
    LabeledGraph g = gen_gnm(n, m, rng);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (g.w(i, j) != 0.0) g.w(i, j) = g.w(j, i) = std::max(0.0, normal(rng, mu, sigma));
    return g;
}

DegreeDistribution DegreeDistribution::empirical(std::span<const int> degrees) {
    check_degrees(degrees);
    DegreeDistribution d;
    d.kind = Kind::empirical;
    const double share = 1.0 / static_cast<double>(degrees.size());
    for (int k : degrees) d.table[k] += share;
    return d;
}

DegreeDistribution DegreeDistribution::poisson(double lambda) {
    DegreeDistribution d;
    d.kind = Kind::poisson;
    d.lambda = lambda;
    validate(d);
    return d;
}

std::vector<int> DegreeDistribution::sample(std::size_t n, Rng& rng) const {
    std::vector<int> out(n);
    if (kind == Kind::poisson) {
        for (int& k : out) k = static_cast<int>(refnet::poisson(rng, lambda));
        return out;
    }
    std::vector<int> values;
    std::vector<double> probs;
    for (const auto& [k, p] : table) {
        values.push_back(k);
        probs.push_back(p);
    }
    std::discrete_distribution<std::size_t> pick(probs.begin(), probs.end());
    for (int& k : out) k = values[pick(rng)];
    return out;
}

void validate(const DegreeDistribution& d) {
    if (d.kind == DegreeDistribution::Kind::poisson) {
        if (!(d.lambda > 0.0)) throw DataError("Poisson degree mean must be positive");
        return;
    }
    if (d.table.empty()) throw DataError("empirical degree table is empty");
    double total = 0.0;
    for (const auto& [k, p] : d.table) {
        if (k < 0 || !(p >= 0.0)) throw DataError("invalid empirical degree table entry");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) throw DataError("empirical degree probabilities must sum to 1");
}

DegreeCovariates degree_covariates(const LabeledGraph& g) {
    DegreeCovariates out;
    out.degree = degree(g);
    out.clustering = weighted_clustering(g);
    const std::size_t n = g.n();
    out.mean_weight.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = g.w.row(i);
        out.mean_weight[i] = std::accumulate(row.begin(), row.end(), 0.0) / static_cast<double>(n);
    }
    return out;
}

}  // namespace refnet
