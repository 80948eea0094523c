#include "refnet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "refnet/error.hpp"

namespace refnet {

double mean(std::span<const double> values) {
    if (values.empty()) throw DataError("mean of an empty set");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values) {
    if (values.size() < 2) throw DataError("standard deviation needs at least two values");
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2) throw DataError("correlation needs paired vectors");
    const double ma = mean(a);
    const double mb = mean(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) throw DataError("correlation undefined for zero variance");
    return sab / std::sqrt(saa * sbb);
}

double assortativity_discrete(const LabeledGraph& g, std::span<const std::string> labels,
                              bool weighted) {
    if (labels.size() != g.n()) throw DataError("one label per node required");
    std::vector<std::string> levels(labels.begin(), labels.end());
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    if (levels.size() < 2) throw DataError("assortativity needs at least two categories");

    std::vector<std::size_t> code(g.n());
    for (std::size_t i = 0; i < g.n(); ++i)
        code[i] = static_cast<std::size_t>(
            std::lower_bound(levels.begin(), levels.end(), labels[i]) - levels.begin());

    const std::size_t k = levels.size();
    RealMatrix e(k, k, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) {
        for (std::size_t j = 0; j < g.n(); ++j) {
            if (i == j || g.w(i, j) <= 0.0) continue;
            const double v = weighted ? g.w(i, j) : 1.0;
            e(code[i], code[j]) += v;
            total += v;
        }
    }
    if (total <= 0.0) throw DataError("assortativity needs positive total edge weight");

    double trace = 0.0, ab = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        double a = 0.0, b = 0.0;
        for (std::size_t d = 0; d < k; ++d) {
            a += e(c, d) / total;
            b += e(d, c) / total;
        }
        trace += e(c, c) / total;
        ab += a * b;
    }
    if (1.0 - ab == 0.0) throw DataError("assortativity undefined: all weight in one category");
    return (trace - ab) / (1.0 - ab);
}

namespace {

double cv_of(std::span<const double> values, const char* what) {
    const double m = mean(values);
    if (m == 0.0) throw DataError(std::string("coefficient of variation undefined: zero mean of ") + what);
    return sample_sd(values) / m;
}

std::vector<double> offdiag_cells(const RealMatrix& w) {
    std::vector<double> out;
    out.reserve(w.rows() * w.cols());
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j)
            if (i != j) out.push_back(w(i, j));
    return out;
}

}  // namespace

double cv_offdiag(const RealMatrix& w) {
    if (w.rows() < 2) throw DataError("cv_offdiag needs n >= 2");
    return cv_of(offdiag_cells(w), "off-diagonal cells");
}

double cv_nonzero(const RealMatrix& w) {
    std::vector<double> cells;
    for (double v : w.flat())
        if (v != 0.0) cells.push_back(v);
    if (cells.size() < 2) throw DataError("cv_nonzero needs at least two nonzero cells");
    return cv_of(cells, "nonzero cells");
}

double cv_strength(const RealMatrix& w) {
    std::vector<double> s(w.rows(), 0.0);
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (double v : w.row(i)) s[i] += v;
    return cv_of(s, "strengths");
}

double group_coeff(std::span<const double> values, std::span<const std::string> labels) {
    if (values.size() != labels.size()) throw DataError("one label per value required");
    std::map<std::string, std::pair<double, std::size_t>> sums;
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto& [sum, count] = sums[labels[i]];
        sum += values[i];
        ++count;
    }
    if (sums.size() != 2) throw DataError("group coefficient needs exactly two levels present");
    const auto& [base_sum, base_n] = sums.begin()->second;
    const auto& [other_sum, other_n] = std::next(sums.begin())->second;
    return other_sum / static_cast<double>(other_n) - base_sum / static_cast<double>(base_n);
}

double offdiag_correlation(const RealMatrix& a, const RealMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
        throw DataError("matrices must be square and the same shape");
    return pearson(offdiag_cells(a), offdiag_cells(b));
}

MantelResult matrix_correlation(const RealMatrix& a, const RealMatrix& b, std::size_t n_perm,
                                Rng& rng) {
    if (a.rows() < 3) throw DataError("matrix correlation needs n >= 3");
    MantelResult out;
    out.r = offdiag_correlation(a, b);

    const std::size_t n = b.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    RealMatrix shuffled(n, n);
    std::size_t at_least = 0;
    for (std::size_t k = 0; k < n_perm; ++k) {
        std::shuffle(perm.begin(), perm.end(), rng);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) shuffled(i, j) = b(perm[i], perm[j]);
        if (offdiag_correlation(a, shuffled) >= out.r) ++at_least;
    }
    out.p = static_cast<double>(1 + at_least) / static_cast<double>(n_perm + 1);
    return out;
}

MatrixDiffs matrix_diffs(const RealMatrix& a, const RealMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DataError("matrix shapes differ");
    MatrixDiffs d;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a.flat()[k] - b.flat()[k];
        d.signed_sum += diff;
        d.absolute_sum += std::abs(diff);
    }
    return d;
}

namespace {

constexpr std::pair<StatKind, const char*> kStatNames[] = {
    {StatKind::assortativity, "assortativity"}, {StatKind::cv_offdiag, "cv_offdiag"},
    {StatKind::cv_nonzero, "cv_nonzero"},       {StatKind::cv_strength, "cv_strength"},
    {StatKind::group_coeff, "group_coeff"},     {StatKind::matrix_corr, "matrix_corr"},
    {StatKind::matrix_diff, "matrix_diff"},     {StatKind::mean_degree, "mean_degree"},
};

}  // namespace

const char* to_string(StatKind kind) noexcept {
    for (const auto& [k, name] : kStatNames)
        if (k == kind) return name;
    return "unknown";
}

StatKind stat_kind_from_string(const std::string& s) {
    for (const auto& [k, name] : kStatNames)
        if (s == name) return k;
    throw ConfigError("unknown statistic '" + s + "'");
}

void validate(const StatSpec& spec) {
    switch (spec.kind) {
        case StatKind::assortativity:
        case StatKind::group_coeff:
            if (spec.attribute.empty())
                throw ConfigError(std::string("statistic ") + to_string(spec.kind) +
                                  " needs an attribute");
            break;
        case StatKind::matrix_corr:
        case StatKind::matrix_diff:
            if (spec.comparison.empty())
                throw ConfigError(std::string("statistic ") + to_string(spec.kind) +
                                  " needs a comparison matrix");
            break;
        default:
            break;
    }
}

double evaluate(const StatSpec& spec, const LabeledGraph& g) {
    switch (spec.kind) {
        case StatKind::assortativity:
            return assortativity_discrete(g, g.attribute(spec.attribute), spec.weighted);
        case StatKind::cv_offdiag:
            return cv_offdiag(g.w);
        case StatKind::cv_nonzero:
            return cv_nonzero(g.w);
        case StatKind::cv_strength:
            return cv_strength(g.w);
        case StatKind::group_coeff: {
            std::vector<std::string> labels = g.attribute(spec.attribute);
            for (auto& label : labels)
                if (auto it = spec.recode.find(label); it != spec.recode.end()) label = it->second;
            return group_coeff(strength(g, spec.mode), labels);
        }
        case StatKind::matrix_corr:
            return offdiag_correlation(g.w, spec.comparison);
        case StatKind::matrix_diff: {
            const auto d = matrix_diffs(g.w, spec.comparison);
            return spec.absolute ? d.absolute_sum : d.signed_sum;
        }
        case StatKind::mean_degree: {
            const auto deg = degree(g);
            if (deg.empty()) throw DataError("mean degree of an empty graph");
            return std::accumulate(deg.begin(), deg.end(), 0.0) / static_cast<double>(deg.size());
        }
    }
    throw ConfigError("unhandled statistic");
}

}  // namespace refnet
