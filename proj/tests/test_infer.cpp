#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "refnet/error.hpp"
#include "refnet/infer.hpp"
#include "refnet/random.hpp"

using namespace refnet;

namespace {

struct Counts {
    std::size_t above = 0, below = 0, tied = 0;
};

Counts brute_counts(double observed, const std::vector<double>& refs) {
    Counts c;
    std::vector<double> pool = refs;
    pool.push_back(observed);
    for (double v : pool) {
        if (v > observed) ++c.above;
        else if (v < observed) ++c.below;
        else ++c.tied;
    }
    return c;
}

}  // namespace

TEST_CASE("reference_test hand cases") {
    auto r = reference_test(5, {1, 2, 3});
    CHECK(r.p_paper == 0.0);
    CHECK(r.p_upper == 0.25);
    CHECK(reference_test(1, {2, 3, 4}).p_paper == 0.75);

    const auto tied = reference_test(2, {2, 2, 2, 2});
    CHECK(tied.p_paper == 0.0);
    CHECK(tied.p_upper == 1.0);
    CHECK(tied.verdict == Verdict::fail_to_reject);
    CHECK(std::string(to_string(tied.verdict)) == "fail to reject");

    std::vector<double> refs(999);
    std::iota(refs.begin(), refs.end(), 0.0);
    const auto high = reference_test(5000, refs);
    CHECK(high.verdict == Verdict::reject);
    CHECK(high.ci_high < 5000);
    const auto mid = reference_test(500, refs);
    CHECK(mid.verdict == Verdict::fail_to_reject);
    const auto low = reference_test(-1, refs);
    CHECK(low.verdict == Verdict::reject);
    CHECK(low.p_paper == doctest::Approx(999.0 / 1000.0));

    CHECK_THROWS_AS(reference_test(0, {}), DataError);
}

TEST_CASE("p_paper against a brute-force count") {
    Rng rng(1);
    for (int rep = 0; rep < 10000; ++rep) {
        const std::size_t n = 1 + uniform_index(rng, 40);
        std::vector<double> refs(n);
        // Small integer support so ties are common.
        for (double& v : refs) v = static_cast<double>(uniform_index(rng, 7));
        const double observed = static_cast<double>(uniform_index(rng, 9)) - 1.0;
        const auto run = reference_test(observed, refs);
        const auto c = brute_counts(observed, refs);
        REQUIRE(run.p_paper == static_cast<double>(c.above) / static_cast<double>(n + 1));
        // Complementary fractions add to one.
        CHECK(run.p_paper + static_cast<double>(c.below) / (n + 1) + static_cast<double>(c.tied) / (n + 1) ==
              doctest::Approx(1.0).epsilon(1e-15));
        CHECK(run.p_upper == static_cast<double>(c.above + c.tied) / static_cast<double>(n + 1));
        CHECK(run.p_upper > 0.0);
        CHECK(run.ci_low <= run.ci_high);
        // Order of the references does not matter.
        std::shuffle(refs.begin(), refs.end(), rng);
        const auto again = reference_test(observed, refs);
        CHECK(again.p_paper == run.p_paper);
        CHECK(again.ci_low == run.ci_low);
        CHECK(again.ci_high == run.ci_high);
        CHECK(again.verdict == run.verdict);
    }
}

TEST_CASE("quantile") {
    const std::vector<double> v{4, 1, 3, 2};
    CHECK(quantile(v, 0.5) == 2.5);
    CHECK(quantile(v, 0.0) == 1.0);
    CHECK(quantile(v, 1.0) == 4.0);
    std::vector<double> ten(10);
    std::iota(ten.begin(), ten.end(), 1.0);
    CHECK(quantile(ten, 0.025) == doctest::Approx(1.225));
    CHECK(quantile(ten, 0.975) == doctest::Approx(9.775));
    CHECK_THROWS_AS(quantile(v, 1.5), DataError);
    CHECK_THROWS_AS(quantile(std::vector<double>{}, 0.5), DataError);
}

TEST_CASE("chain_diagnostics") {
    SUBCASE("constant trace") {
        const auto d = chain_diagnostics(std::vector<double>(50, 3.0));
        CHECK_FALSE(d.lag1_autocorr.has_value());
        CHECK(d.split_z == 0.0);
    }
    SUBCASE("ramp") {
        std::vector<double> ramp(100);
        std::iota(ramp.begin(), ramp.end(), 1.0);
        const auto d = chain_diagnostics(ramp);
        CHECK(d.split_z > 3.0);
        CHECK(*d.lag1_autocorr > 0.9);
    }
    SUBCASE("iid normal traces rarely look drifting") {
        Rng rng(2);
        std::normal_distribution<double> z;
        int flagged = 0;
        const int reps = 2000;
        for (int rep = 0; rep < reps; ++rep) {
            std::vector<double> t(200);
            for (double& x : t) x = z(rng);
            flagged += std::abs(chain_diagnostics(t).split_z) >= 3.0;
        }
        // Nominal rate 0.0027; allow sampling noise.
        CHECK(flagged <= 20);
    }
    SUBCASE("short trace") {
        CHECK_THROWS_AS(chain_diagnostics(std::vector<double>(10, 1.0)), DataError);
    }
}

TEST_CASE("histogram") {
    const std::vector<double> v{0, 1, 2, 3, 4, 10};
    const auto h = histogram(v, 5);
    CHECK(h.edges.size() == 6);
    CHECK(h.edges.front() == 0.0);
    CHECK(h.edges.back() == 10.0);
    CHECK(h.counts == std::vector<std::size_t>{2, 2, 1, 0, 1});
    const auto flat = histogram(std::vector<double>(7, 2.0), 30);
    CHECK(flat.counts == std::vector<std::size_t>{7});

    Rng rng(3);
    std::normal_distribution<double> z;
    std::vector<double> many(1001);
    for (double& x : many) x = z(rng);
    const auto hm = histogram(many, 30);
    CHECK(std::accumulate(hm.counts.begin(), hm.counts.end(), std::size_t{0}) == many.size());
    CHECK_THROWS_AS(histogram(std::vector<double>{}, 3), DataError);
}
