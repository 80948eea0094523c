#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <limits>

#include "helpers.hpp"
#include "refnet/kernels.hpp"

using namespace refnet;

namespace {

// Floyd-Warshall distances plus shortest-path counts; betweenness of v sums
// sigma_sv * sigma_vt / sigma_st over unordered pairs {s, t} with v on a
// shortest path.
std::vector<double> betweenness_oracle(const RealMatrix& w) {
    const std::size_t n = w.rows();
    const double inf = std::numeric_limits<double>::infinity();
    RealMatrix d(n, n, inf);
    for (std::size_t i = 0; i < n; ++i) {
        d(i, i) = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (w(i, j) > 0) d(i, j) = 1.0 / w(i, j);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
    // Path counts by increasing distance from each source.
    RealMatrix sigma(n, n, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> order;
        for (std::size_t v = 0; v < n; ++v)
            if (d(s, v) < inf) order.push_back(v);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d(s, a) < d(s, b); });
        sigma(s, s) = 1;
        for (std::size_t v : order) {
            if (v == s) continue;
            for (std::size_t u = 0; u < n; ++u)
                if (w(u, v) > 0 && d(s, u) + 1.0 / w(u, v) == d(s, v)) sigma(s, v) += sigma(s, u);
        }
    }
    std::vector<double> out(n, 0.0);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t) {
            if (d(s, t) == inf) continue;
            for (std::size_t v = 0; v < n; ++v)
                if (v != s && v != t && d(s, v) + d(v, t) == d(s, t))
                    out[v] += sigma(s, v) * sigma(v, t) / sigma(s, t);
        }
    return out;
}

}  // namespace

TEST_CASE("cooccurrence: serial and parallel agree") {
    Rng rng(1);
    for (int rep = 0; rep < 200; ++rep) {
        const auto t = testing::random_gbi(1 + uniform_index(rng, 150), 1 + uniform_index(rng, 40), 0.2, rng);
        const auto a = kernels::serial::cooccurrence(t.m);
        const auto b = kernels::omp::cooccurrence(t.m);
        REQUIRE(a == b);
        for (std::size_t i = 0; i < t.individuals(); ++i) {
            std::uint32_t n_i = 0;
            for (std::size_t e = 0; e < t.events(); ++e) n_i += t.m(e, i);
            CHECK(a(i, i) == n_i);
        }
    }
}

TEST_CASE("betweenness: oracle, serial and parallel agree") {
    Rng rng(2);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t n = 2 + uniform_index(rng, 12);
        LabeledGraph g = LabeledGraph::empty(n);
        // Powers of two keep path lengths exact, so ties are real ties.
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (bernoulli(rng, 0.4)) g.w(i, j) = g.w(j, i) = std::ldexp(1.0, static_cast<int>(uniform_index(rng, 3)));
        const auto want = betweenness_oracle(g.w);
        const auto s = kernels::serial::betweenness(g.w);
        const auto p = kernels::omp::betweenness(g.w);
        for (std::size_t v = 0; v < n; ++v) {
            CHECK(s[v] == doctest::Approx(want[v]).epsilon(1e-12));
            CHECK(p[v] == doctest::Approx(s[v]).epsilon(1e-12));
        }
    }
}

TEST_CASE("colocation: serial and parallel agree") {
    Rng rng(3);
    const std::size_t n = 37, steps = 50;
    std::vector<Point> tracks(n * steps);
    for (auto& p : tracks) p = Point{static_cast<int>(uniform_index(rng, 4)), static_cast<int>(uniform_index(rng, 4))};
    const auto a = kernels::serial::colocation(tracks, steps);
    const auto b = kernels::omp::colocation(tracks, steps);
    CHECK(a == b);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(a(i, i) == 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            CHECK(a(i, j) == a(j, i));
            CHECK((a(i, j) >= 0.0 && a(i, j) <= 1.0));
        }
    }
    // Two fixed tracks that meet on every other step.
    std::vector<Point> pair(2 * 4);
    for (std::size_t t = 0; t < 4; ++t) {
        pair[t] = Point{0, 0};
        pair[4 + t] = t % 2 == 0 ? Point{0, 0} : Point{1, 0};
    }
    CHECK(kernels::serial::colocation(pair, 4)(0, 1) == 0.5);
}

TEST_CASE("parallel_replicates does not depend on the thread count") {
    auto draw = [](Rng& rng) { return std::uniform_real_distribution<double>()(rng); };
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const auto one = kernels::parallel_replicates(257, 99, draw);
    omp_set_num_threads(4);
    const auto four = kernels::parallel_replicates(257, 99, draw);
    omp_set_num_threads(saved);
    CHECK(one == four);
    CHECK(one[0] != one[1]);
    Rng first = make_stream(99, 0);
    CHECK(one[0] == draw(first));

    CHECK_THROWS_AS(kernels::parallel_replicates(10, 1, [](Rng&) -> double { throw std::runtime_error("x"); }),
                    std::runtime_error);
}
