#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "helpers.hpp"
#include "refnet/error.hpp"
#include "refnet/resample.hpp"

using namespace refnet;

TEST_CASE("subsample_nodes") {
    Rng rng(1);
    SUBCASE("k = n keeps every node and weight") {
        auto g = testing::random_graph(8, 0.5, false, rng);
        g.attrs["sex"] = {"M", "F", "M", "F", "M", "F", "M", "F"};
        const auto s = subsample_nodes(g, 8, rng);
        std::map<std::string, std::size_t> pos;
        for (std::size_t i = 0; i < 8; ++i) pos[g.ids[i]] = i;
        REQUIRE(pos.size() == 8);
        for (std::size_t a = 0; a < 8; ++a) {
            CHECK(s.attrs.at("sex")[a] == g.attrs.at("sex")[pos.at(s.ids[a])]);
            for (std::size_t b = 0; b < 8; ++b) CHECK(s.w(a, b) == g.w(pos.at(s.ids[a]), pos.at(s.ids[b])));
        }
    }
    SUBCASE("k = 1") {
        auto g = testing::random_graph(5, 1.0, false, rng);
        const auto s = subsample_nodes(g, 1, rng);
        CHECK(s.n() == 1);
        CHECK(s.w(0, 0) == 0.0);
    }
    SUBCASE("complete graph stays complete") {
        LabeledGraph k10 = LabeledGraph::empty(10);
        for (std::size_t i = 0; i < 10; ++i)
            for (std::size_t j = 0; j < 10; ++j)
                if (i != j) k10.w(i, j) = 1.0;
        for (int rep = 0; rep < 100; ++rep) {
            const auto s = subsample_nodes(k10, 4, rng);
            int edges = 0;
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = i + 1; j < 4; ++j) edges += s.w(i, j) > 0;
            CHECK(edges == 6);
        }
    }
    SUBCASE("symmetric with zero diagonal") {
        for (int rep = 0; rep < 200; ++rep) {
            auto g = testing::random_graph(12, 0.4, false, rng);
            CHECK_NOTHROW(validate(subsample_nodes(g, 1 + uniform_index(rng, 12), rng)));
        }
    }
    SUBCASE("bad size") {
        auto g = LabeledGraph::empty(3);
        CHECK_THROWS_AS(subsample_nodes(g, 0, rng), DataError);
        CHECK_THROWS_AS(subsample_nodes(g, 4, rng), DataError);
    }
}

TEST_CASE("resample_degree_sequence") {
    Rng rng(2);
    const std::vector<int> same(7, 5);
    CHECK(resample_degree_sequence(same, rng) == same);

    const std::vector<int> two{1, 3};
    std::map<std::vector<int>, int> counts;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        const auto s = resample_degree_sequence(two, rng);
        REQUIRE(s.size() == 2);
        ++counts[s];
    }
    CHECK(counts.size() == 4);
    for (const auto& [seq, c] : counts) CHECK(std::abs(c / double(draws) - 0.25) < 0.02);

    const std::vector<int> gappy{0, 2, 2, 7, 9};
    const std::set<int> present(gappy.begin(), gappy.end());
    for (int i = 0; i < 1000; ++i) {
        const auto s = resample_degree_sequence(gappy, rng);
        CHECK(s.size() == gappy.size());
        for (int d : s) CHECK(present.count(d) == 1);
    }
    CHECK_THROWS_AS(resample_degree_sequence(std::vector<int>{}, rng), DataError);
}

TEST_CASE("resample_edge_weights") {
    Rng rng(3);
    const std::vector<double> w{0.5, 1.5, 1.5, 4.0};
    CHECK(resample_edge_weights(w, 0, true, rng).empty());
    CHECK(resample_edge_weights(w, 0, false, rng).empty());

    auto perm = resample_edge_weights(w, w.size(), false, rng);
    std::sort(perm.begin(), perm.end());
    CHECK(perm == w);

    const std::vector<double> one{2.25};
    for (double v : resample_edge_weights(one, 50, true, rng)) CHECK(v == 2.25);

    CHECK_THROWS_AS(resample_edge_weights(w, 5, false, rng), DataError);
    CHECK_THROWS_AS(resample_edge_weights(std::vector<double>{}, 1, true, rng), DataError);
}

TEST_CASE("bootstrap_gbi_rows") {
    Rng rng(4);
    SUBCASE("single row") {
        auto t = testing::gbi({{1, 0, 1}});
        t.loc = {Point{3, 4}};
        CHECK(bootstrap_gbi_rows(t, rng) == t);
    }
    SUBCASE("rows come from the original with their metadata") {
        auto t = testing::random_gbi(30, 8, 0.3, rng, 6);
        for (std::size_t e = 0; e < 30; ++e) t.loc.push_back(Point{int(e), int(2 * e)});
        for (int rep = 0; rep < 100; ++rep) {
            const auto b = bootstrap_gbi_rows(t, rng);
            REQUIRE(b.events() == t.events());
            for (std::size_t r = 0; r < b.events(); ++r) {
                const std::size_t src = static_cast<std::size_t>(b.loc[r].x);
                CHECK(b.loc[r].y == 2 * b.loc[r].x);
                CHECK(b.day[r] == t.day[src]);
                CHECK(std::equal(b.m.row(r).begin(), b.m.row(r).end(), t.m.row(src).begin()));
            }
        }
    }
    SUBCASE("expected column sums match the observed ones") {
        auto t = testing::random_gbi(40, 6, 0.4, rng);
        std::vector<double> observed(6, 0.0), mean(6, 0.0);
        for (std::size_t e = 0; e < 40; ++e)
            for (std::size_t i = 0; i < 6; ++i) observed[i] += t.m(e, i);
        const int reps = 10000;
        bool varied = false;
        for (int rep = 0; rep < reps; ++rep) {
            const auto b = bootstrap_gbi_rows(t, rng);
            for (std::size_t i = 0; i < 6; ++i) {
                double c = 0;
                for (std::size_t e = 0; e < 40; ++e) c += b.m(e, i);
                mean[i] += c / reps;
                varied = varied || c != observed[i];
            }
        }
        CHECK(varied);
        for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(mean[i] - observed[i]) <= 0.02 * observed[i]);
    }
}

TEST_CASE("bootstrap_locations") {
    Rng rng(5);
    const std::vector<Point> same(10, Point{4, 8});
    CHECK(bootstrap_locations(same, rng) == same);

    const std::vector<Point> locs{{4, 4}, {4, 8}, {8, 4}, {4, 4}};
    const std::set<Point> allowed(locs.begin(), locs.end());
    std::map<Point, double> freq;
    const int reps = 10000;
    for (int rep = 0; rep < reps; ++rep) {
        const auto b = bootstrap_locations(locs, rng);
        CHECK(b.size() == locs.size());
        for (const Point& p : b) {
            CHECK(allowed.count(p) == 1);
            freq[p] += 1.0 / (reps * locs.size());
        }
    }
    CHECK(freq[Point{4, 4}] == doctest::Approx(0.5).epsilon(0.02));
    CHECK(freq[Point{4, 8}] == doctest::Approx(0.25).epsilon(0.04));
    CHECK(freq[Point{8, 4}] == doctest::Approx(0.25).epsilon(0.04));
    CHECK_THROWS_AS(bootstrap_locations(std::vector<Point>{}, rng), DataError);
}
