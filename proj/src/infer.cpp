#include "refnet/infer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "refnet/error.hpp"

namespace refnet {

namespace {

double sample_mean(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_var(std::span<const double> v, double mean) {
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(v.size() - 1);
}

}  // namespace

const char* to_string(Verdict v) noexcept {
    return v == Verdict::reject ? "reject" : "fail to reject";
}

double quantile(std::span<const double> values, double prob) {
    if (values.empty()) throw DataError("quantile of an empty sample");
    if (!(prob >= 0.0 && prob <= 1.0)) throw DataError("quantile probability must lie in [0, 1]");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

ReferenceRun reference_test(double observed, std::vector<double> references) {
    if (references.empty()) throw DataError("reference distribution is empty");
    ReferenceRun run;
    run.observed = observed;
    run.references = std::move(references);
    const auto& refs = run.references;
    const std::size_t n = refs.size();

    // The observed value itself is never strictly above observed.
    const auto above = static_cast<std::size_t>(
        std::count_if(refs.begin(), refs.end(), [&](double v) { return observed < v; }));
    const auto at_least = static_cast<std::size_t>(
        std::count_if(refs.begin(), refs.end(), [&](double v) { return v >= observed; }));
    run.p_paper = static_cast<double>(above) / static_cast<double>(n + 1);
    run.p_upper = static_cast<double>(1 + at_least) / static_cast<double>(n + 1);

    std::vector<double> pool(refs);
    pool.push_back(observed);
    run.ci_low = quantile(pool, 0.025);
    run.ci_high = quantile(pool, 0.975);
    run.verdict = observed < run.ci_low || observed > run.ci_high ? Verdict::reject
                                                                  : Verdict::fail_to_reject;
    return run;
}

ChainDiagnostics chain_diagnostics(std::span<const double> trace) {
    if (trace.size() < 20) throw DataError("chain diagnostics need a trace of length 20 or more");
    ChainDiagnostics out;
    const double mean = sample_mean(trace);
    double denom = 0.0;
    double num = 0.0;
    for (std::size_t t = 0; t < trace.size(); ++t) {
        denom += (trace[t] - mean) * (trace[t] - mean);
        if (t > 0) num += (trace[t] - mean) * (trace[t - 1] - mean);
    }
    if (denom == 0.0) return out;
    out.lag1_autocorr = num / denom;

    const std::size_t half = trace.size() / 2;
    const auto first = trace.first(half);
    const auto second = trace.subspan(trace.size() - half);
    const double m1 = sample_mean(first);
    const double m2 = sample_mean(second);
    const double se = std::sqrt(sample_var(first, m1) / static_cast<double>(half) +
                                sample_var(second, m2) / static_cast<double>(half));
    if (se > 0.0) {
        out.split_z = (m2 - m1) / se;
    } else if (m2 != m1) {
        out.split_z = m2 > m1 ? HUGE_VAL : -HUGE_VAL;
    }
    return out;
}

Histogram histogram(std::span<const double> values, std::size_t bins) {
    if (values.empty()) throw DataError("histogram of an empty sample");
    if (bins < 1) throw DataError("histogram needs at least one bin");
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    Histogram h;
    if (lo == hi) {
        h.edges = {lo, hi};
        h.counts = {values.size()};
        return h;
    }
    const double width = (hi - lo) / static_cast<double>(bins);
    h.edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) h.edges[b] = lo + width * static_cast<double>(b);
    h.edges.back() = hi;
    h.counts.assign(bins, 0);
    for (double v : values) {
        auto b = static_cast<std::size_t>((v - lo) / width);
        if (b >= bins) b = bins - 1;
        ++h.counts[b];
    }
    return h;
}

}  // namespace refnet
