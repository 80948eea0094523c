#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "refnet/error.hpp"
#include "refnet/random.hpp"

namespace refnet {

struct ChainConfig {
    std::size_t burn_in = 500;
    std::size_t steps = 10000;
    std::size_t thin = 10;
    std::uint64_t seed = 0;
    /// Record the statistic after every sampling step, not only thinned ones.
    bool keep_trace = false;
};

void validate(const ChainConfig& cfg);

struct ChainResult {
    std::vector<double> series;  // floor(steps / thin) values
    std::size_t accepted = 0;    // over the sampling phase
    std::vector<double> trace;   // per-step values when requested
};

template <class S>
concept ChainSampler = requires(S s, Rng& rng) {
    { s.step(rng) } -> std::convertible_to<bool>;
    s.state();
};

/// Runs `burn_in` discarded steps, then `steps` steps recording
/// `stat(state)` every `thin` steps. Rejections are never retried.
template <ChainSampler Sampler, class Stat>
ChainResult run_chain(Sampler& sampler, const ChainConfig& cfg, Stat&& stat) {
    validate(cfg);
    Rng rng(cfg.seed);
    for (std::size_t i = 0; i < cfg.burn_in; ++i) sampler.step(rng);

    ChainResult out;
    out.series.reserve(cfg.steps / cfg.thin);
    if (cfg.keep_trace) out.trace.reserve(cfg.steps);
    for (std::size_t i = 1; i <= cfg.steps; ++i) {
        if (sampler.step(rng)) ++out.accepted;
        const bool record = i % cfg.thin == 0;
        if (!record && !cfg.keep_trace) continue;
        const double value = stat(sampler.state());
        if (cfg.keep_trace) out.trace.push_back(value);
        if (record) out.series.push_back(value);
    }
    return out;
}

inline void validate(const ChainConfig& cfg) {
    if (cfg.thin < 1) throw ConfigError("thinning interval must be at least 1");
    if (cfg.steps < cfg.thin) throw ConfigError("chain steps must be at least the thinning interval");
}

}  // namespace refnet
