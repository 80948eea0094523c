#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <vector>

#include "refnet/graph.hpp"
#include "refnet/matrix.hpp"
#include "refnet/random.hpp"

// Data-parallel kernels. Each has a serial reference used by the tests and
// the benchmark, and an OpenMP version that the library calls.

namespace refnet::kernels {

using CountMatrix = Matrix<std::uint32_t>;

namespace serial {

/// Co-occurrence counts x_ij = #events containing both i and j, accumulated
/// event by event over member pairs. Diagonal holds n_i.
CountMatrix cooccurrence(const BinaryMatrix& gbi);

/// Raw undirected betweenness (each unordered endpoint pair once), edge
/// length 1/w over positive entries of a symmetric weight matrix.
std::vector<double> betweenness(const RealMatrix& w);

/// Fraction of steps at which two tracks share a coordinate. `tracks` holds
/// `steps` points per individual, individual-major.
RealMatrix colocation(std::span<const Point> tracks, std::size_t steps);

}  // namespace serial

namespace omp {

/// Same result as serial::cooccurrence, computed per individual pair from
/// packed event bitsets.
CountMatrix cooccurrence(const BinaryMatrix& gbi);
std::vector<double> betweenness(const RealMatrix& w);
RealMatrix colocation(std::span<const Point> tracks, std::size_t steps);

}  // namespace omp

int max_threads() noexcept;

/// Evaluates `fn(rng)` for replicates 0..n-1, each with its own stream
/// derived from `seed`, in parallel. Output is independent of thread count.
template <class Fn>
std::vector<double> parallel_replicates(std::size_t n, std::uint64_t seed, Fn&& fn) {
    std::vector<double> out(n);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            Rng rng = make_stream(seed, static_cast<std::uint64_t>(i));
            out[static_cast<std::size_t>(i)] = fn(rng);
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace refnet::kernels
