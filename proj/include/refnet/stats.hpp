#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "refnet/graph.hpp"
#include "refnet/matrix.hpp"
#include "refnet/random.hpp"

namespace refnet {

double mean(std::span<const double> values);

/// Sample standard deviation (n - 1 denominator). Needs two or more values.
double sample_sd(std::span<const double> values);

/// Pearson correlation of two equal-length vectors.
double pearson(std::span<const double> a, std::span<const double> b);

/// Newman's discrete assortativity over the weight-normalised mixing matrix
/// of ordered node pairs. `weighted == false` uses binary adjacency.
double assortativity_discrete(const LabeledGraph& g, std::span<const std::string> labels,
                              bool weighted = true);

/// sd / mean over every off-diagonal cell, both triangles, zeros included.
double cv_offdiag(const RealMatrix& w);

/// sd / mean over the nonzero cells.
double cv_nonzero(const RealMatrix& w);

/// sd / mean of node strengths (row sums).
double cv_strength(const RealMatrix& w);

/// Slope of a one-factor linear model with the lexicographically first level
/// as baseline: mean(second level) - mean(first level).
double group_coeff(std::span<const double> values, std::span<const std::string> labels);

struct MantelResult {
    double r = 0.0;
    double p = 1.0;
};

/// Pearson correlation over off-diagonal cells.
double offdiag_correlation(const RealMatrix& a, const RealMatrix& b);

/// Mantel test: r plus the one-sided permutation p (1 + #{r_perm >= r}) /
/// (n_perm + 1), permuting rows and columns of `b` together.
MantelResult matrix_correlation(const RealMatrix& a, const RealMatrix& b, std::size_t n_perm,
                                Rng& rng);

struct MatrixDiffs {
    double signed_sum = 0.0;
    double absolute_sum = 0.0;
};

MatrixDiffs matrix_diffs(const RealMatrix& a, const RealMatrix& b);

enum class StatKind {
    assortativity,
    cv_offdiag,
    cv_nonzero,
    cv_strength,
    group_coeff,
    matrix_corr,
    matrix_diff,
    mean_degree,
};

const char* to_string(StatKind kind) noexcept;
StatKind stat_kind_from_string(const std::string& s);

/// A test statistic plus the parameters it needs.
struct StatSpec {
    StatKind kind = StatKind::cv_offdiag;
    std::string attribute;                     // assortativity, group_coeff
    bool weighted = true;                      // assortativity
    StrengthMode mode = StrengthMode::out;     // group_coeff response
    std::map<std::string, std::string> recode; // group_coeff level merging
    RealMatrix comparison;                     // matrix_corr, matrix_diff
    bool absolute = false;                     // matrix_diff component
};

/// Throws ConfigError when a parameter required by `spec.kind` is missing.
void validate(const StatSpec& spec);

/// Applies the statistic to a network. Attribute labels come from `g.attrs`.
double evaluate(const StatSpec& spec, const LabeledGraph& g);

}  // namespace refnet
