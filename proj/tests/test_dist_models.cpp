#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "helpers.hpp"
#include "refnet/dist_models.hpp"
#include "refnet/error.hpp"
#include "refnet/generative.hpp"

using namespace refnet;

namespace {

// Sorted degree sequences of every simple graph on n labelled nodes.
std::set<std::vector<int>> realizable_sequences(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::set<std::vector<int>> out;
    for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
        std::vector<int> deg(n, 0);
        for (std::size_t k = 0; k < pairs.size(); ++k)
            if (mask >> k & 1u) {
                ++deg[pairs[k].first];
                ++deg[pairs[k].second];
            }
        std::sort(deg.begin(), deg.end());
        out.insert(deg);
    }
    return out;
}

std::vector<int> degrees_of(const LabeledGraph& g) { return degree(g); }

}  // namespace

TEST_CASE("fit_degree_poisson") {
    CHECK(fit_degree_poisson(std::vector<int>(6, 5)) == 5.0);
    CHECK(fit_degree_poisson(std::vector<int>{2, 4}) == 3.0);
    CHECK_THROWS_AS(fit_degree_poisson(std::vector<int>{}), DataError);
}

TEST_CASE("graphicality agrees with exhaustive enumeration for n <= 7") {
    Rng rng(1);
    for (std::size_t n = 1; n <= 7; ++n) {
        const auto ok = realizable_sequences(n);
        std::vector<int> seq(n, 0);
        std::size_t checked = 0;
        // All sequences with entries 0..n (n itself is never realizable).
        while (true) {
            std::vector<int> sorted = seq;
            std::sort(sorted.begin(), sorted.end());
            const bool want = ok.count(sorted) == 1;
            REQUIRE(is_graphical(seq) == want);
            // Construction agrees on a sample (all of them for small n).
            if (n <= 5 || uniform_index(rng, 50) == 0) {
                if (want) {
                    const auto g = graph_from_degree_sequence(seq, rng);
                    REQUIRE(degrees_of(g) == seq);
                } else {
                    REQUIRE_THROWS_AS(graph_from_degree_sequence(seq, rng), NotRealizable);
                }
            }
            ++checked;
            std::size_t k = 0;
            while (k < n && seq[k] == static_cast<int>(n)) seq[k++] = 0;
            if (k == n) break;
            ++seq[k];
        }
        CHECK(checked == static_cast<std::size_t>(std::pow(n + 1, n)));
    }
}

TEST_CASE("graph_from_degree_sequence") {
    Rng rng(2);
    SUBCASE("hand cases") {
        const auto g = graph_from_degree_sequence(std::vector<int>{1, 1}, rng);
        CHECK(g.w(0, 1) == 1.0);
        CHECK_THROWS_AS(graph_from_degree_sequence(std::vector<int>{1, 1, 1}, rng), NotRealizable);
        const auto k4 = graph_from_degree_sequence(std::vector<int>{3, 3, 3, 3}, rng);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) CHECK(k4.w(i, j) == (i == j ? 0.0 : 1.0));
        const auto none = graph_from_degree_sequence(std::vector<int>{0, 0, 0}, rng);
        CHECK(none.w == RealMatrix(3, 3, 0.0));
        CHECK_THROWS_AS(graph_from_degree_sequence(std::vector<int>{-1, 1}, rng), DataError);
    }
    SUBCASE("random graphical sequences are realized exactly") {
        for (int rep = 0; rep < 1000; ++rep) {
            const std::size_t n = 2 + uniform_index(rng, 29);
            const double p = std::uniform_real_distribution<double>(0.05, 0.9)(rng);
            const auto seq = degrees_of(gen_gnp(n, p, rng));
            const auto g = graph_from_degree_sequence(seq, rng);
            REQUIRE_NOTHROW(validate(g));
            REQUIRE(degrees_of(g) == seq);
        }
    }
    SUBCASE("attempt budget") {
        // (5,5,5,5,5,5) is K6; with one attempt a random matching can still
        // succeed, but a zero budget always fails.
        CHECK_THROWS_AS(graph_from_degree_sequence(std::vector<int>(6, 5), rng, 0), ConstructionFailed);
    }
}

TEST_CASE("sample_poisson_degree_graph") {
    Rng rng(3);
    const auto empty = sample_poisson_degree_graph(15, 1e-12, 10, rng);
    CHECK(empty.w == RealMatrix(15, 15, 0.0));

    double mean_degree = 0.0;
    for (int rep = 0; rep < 500; ++rep) {
        const auto g = sample_poisson_degree_graph(200, 6.0, 100, rng);
        REQUIRE_NOTHROW(validate(g));
        const auto d = degrees_of(g);
        mean_degree += std::accumulate(d.begin(), d.end(), 0.0) / 200.0 / 500.0;
    }
    CHECK(mean_degree == doctest::Approx(6.0).epsilon(0.05));

    // A fitted Poisson produces degrees the observed sequence never had.
    const std::vector<int> gappy{2, 2, 2, 2, 8, 8, 8, 8};
    const double lambda = fit_degree_poisson(gappy);
    std::set<int> seen;
    for (int rep = 0; rep < 200; ++rep)
        for (int d : degrees_of(sample_poisson_degree_graph(gappy.size(), lambda, 100, rng))) seen.insert(d);
    bool novel = false;
    for (int d : seen) novel = novel || std::find(gappy.begin(), gappy.end(), d) == gappy.end();
    CHECK(novel);

    CHECK_THROWS_AS(sample_poisson_degree_graph(10, 0.0, 10, rng), DataError);
    CHECK_THROWS_AS(sample_poisson_degree_graph(3, 50.0, 5, rng), ConstructionFailed);
}

TEST_CASE("chung_lu") {
    Rng rng(4);
    CHECK(chung_lu(std::vector<double>(5, 0.0), rng).w == RealMatrix(5, 5, 0.0));

    const std::vector<double> pair{1.0, 1.0};
    double hits = 0;
    for (int rep = 0; rep < 10000; ++rep) hits += chung_lu(pair, rng).w(0, 1);
    CHECK(std::abs(hits / 10000 - 0.5) < 0.02);

    std::vector<double> k(200);
    for (std::size_t i = 0; i < 200; ++i) k[i] = 1.0 + static_cast<double>(i % 10);
    const double total = std::accumulate(k.begin(), k.end(), 0.0);
    std::vector<double> realized(200, 0.0);
    for (int rep = 0; rep < 200; ++rep) {
        const auto g = chung_lu(k, rng);
        REQUIRE_NOTHROW(validate(g));
        for (std::size_t i = 0; i < 200; ++i) CHECK(g.w(i, i) == 0.0);
        const auto d = degrees_of(g);
        for (std::size_t i = 0; i < 200; ++i) realized[i] += d[i] / 200.0;
    }
    // Group nodes by target to average out per-node noise.
    for (int t = 1; t <= 10; ++t) {
        double got = 0, want = 0;
        for (std::size_t i = 0; i < 200; ++i)
            if (k[i] == t) {
                got += realized[i];
                want += k[i] * (total - k[i]) / total;
            }
        CHECK(got == doctest::Approx(want).epsilon(0.05));
    }
    CHECK_THROWS_AS(chung_lu(std::vector<double>{-1.0, 2.0}, rng), DataError);
}

TEST_CASE("mixture_edge_weights") {
    Rng rng(5);
    for (double w : mixture_edge_weights(100, 1.0, 0.01, 3.0, 1.0, rng)) CHECK(w == 0.01);
    for (double w : mixture_edge_weights(100, 0.0, 0.01, 3.0, 0.0, rng)) CHECK(w == 3.0);

    const auto w = mixture_edge_weights(100000, 0.3, 0.01, 0.5, 0.4, rng);
    const double low = static_cast<double>(std::count(w.begin(), w.end(), 0.01)) / w.size();
    CHECK(std::abs(low - 0.3) < 0.01);
    for (double v : w) CHECK(v >= kMinPositiveWeight);

    CHECK_THROWS_AS(mixture_edge_weights(5, 1.5, 0.01, 1.0, 1.0, rng), DataError);
    CHECK_THROWS_AS(mixture_edge_weights(5, 0.5, 0.01, 1.0, -1.0, rng), DataError);
}

TEST_CASE("naive_weighted_er and the weight fit") {
    Rng rng(6);
    CHECK(naive_weighted_er(8, 0, 1.0, 0.5, rng).w == RealMatrix(8, 8, 0.0));
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t m = uniform_index(rng, 46);
        const auto g = naive_weighted_er(10, m, 50.0, 1.0, rng);
        REQUIRE_NOTHROW(validate(g));
        std::size_t edges = 0;
        for (std::size_t i = 0; i < 10; ++i)
            for (std::size_t j = i + 1; j < 10; ++j) edges += g.w(i, j) > 0.0;
        CHECK(edges == m);
    }
    const auto clamped = naive_weighted_er(10, 45, -1.0, 0.5, rng);
    for (double v : clamped.w.flat()) CHECK(v >= 0.0);
    CHECK_THROWS_AS(naive_weighted_er(5, 11, 1.0, 1.0, rng), DataError);

    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 2 + uniform_index(rng, 10);
        const auto g = testing::random_graph(n, 0.5, rep % 2 == 0, rng);
        const double off = std::accumulate(g.w.flat().begin(), g.w.flat().end(), 0.0);
        if (off == 0.0) continue;
        const auto with_diag = fit_weight_normal(g.w, true);
        const auto without = fit_weight_normal(g.w, false);
        const double nn = static_cast<double>(n);
        CHECK(with_diag.mean == doctest::Approx(off / (nn * nn)).epsilon(1e-12));
        CHECK(without.mean == doctest::Approx(off / (nn * nn - nn)).epsilon(1e-12));
        CHECK(with_diag.mean == doctest::Approx(without.mean * (nn * nn - nn) / (nn * nn)).epsilon(1e-12));
    }
    // Sample sd over off-diagonal cells {1, 3}.
    CHECK(fit_weight_normal(testing::matrix({{0, 1}, {3, 0}}), false).sd == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("DegreeDistribution") {
    Rng rng(7);
    const std::vector<int> obs{1, 1, 2, 4};
    const auto emp = DegreeDistribution::empirical(obs);
    CHECK_NOTHROW(validate(emp));
    CHECK(emp.table.at(1) == 0.5);
    CHECK(emp.table.at(4) == 0.25);
    std::vector<double> freq(5, 0.0);
    for (int d : emp.sample(40000, rng)) {
        REQUIRE((d == 1 || d == 2 || d == 4));
        freq[d] += 1.0 / 40000;
    }
    CHECK(freq[1] == doctest::Approx(0.5).epsilon(0.03));
    CHECK(freq[2] == doctest::Approx(0.25).epsilon(0.05));

    const auto pois = DegreeDistribution::poisson(3.0);
    const auto draws = pois.sample(20000, rng);
    CHECK(std::accumulate(draws.begin(), draws.end(), 0.0) / 20000 == doctest::Approx(3.0).epsilon(0.03));

    DegreeDistribution bad = emp;
    bad.table[1] = 0.9;
    CHECK_THROWS_AS(validate(bad), DataError);
    CHECK_THROWS_AS(validate(DegreeDistribution::poisson(0.0)), DataError);
}

TEST_CASE("degree_covariates") {
    // Triangle 0-1-2 with a pendant 3 on node 0.
    auto g = testing::graph({{0, 1, 1, 2}, {1, 0, 1, 0}, {1, 1, 0, 0}, {2, 0, 0, 0}}, false);
    const auto c = degree_covariates(g);
    CHECK(c.degree == std::vector<int>{3, 2, 2, 1});
    CHECK(c.clustering[1].value() == doctest::Approx(1.0));
    CHECK_FALSE(c.clustering[3].has_value());
    CHECK(c.mean_weight[0] == doctest::Approx(1.0));
    CHECK(c.mean_weight[3] == doctest::Approx(0.5));
}
