#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace refnet {

enum class Verdict { reject, fail_to_reject };

const char* to_string(Verdict v) noexcept;

/// Comparison of an observed statistic with its reference distribution. The
/// pool is the references plus the observed value.
struct ReferenceRun {
    double observed = 0.0;
    std::vector<double> references;
    /// Fraction of the pool strictly greater than observed.
    double p_paper = 0.0;
    /// (1 + #{references >= observed}) / (N + 1); never 0.
    double p_upper = 1.0;
    /// 2.5% and 97.5% pool quantiles, linear interpolation.
    double ci_low = 0.0;
    double ci_high = 0.0;
    /// reject iff observed lies outside [ci_low, ci_high].
    Verdict verdict = Verdict::fail_to_reject;
};

ReferenceRun reference_test(double observed, std::vector<double> references);

/// Quantile with linear interpolation between order statistics (type 7).
double quantile(std::span<const double> values, double prob);

struct ChainDiagnostics {
    std::optional<double> lag1_autocorr;  // missing for a constant trace
    /// (mean of second half - mean of first half) over its standard error.
    double split_z = 0.0;
};

ChainDiagnostics chain_diagnostics(std::span<const double> trace);

struct Histogram {
    std::vector<double> edges;  // bins + 1 ascending edges
    std::vector<std::size_t> counts;
};

/// Equal-width bins over [min, max]; the last bin is closed. A constant
/// input gives a single bin holding everything.
Histogram histogram(std::span<const double> values, std::size_t bins);

}  // namespace refnet
