#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "gme/tensor.hpp"

namespace gme {

struct OptimizerConfig {
    std::size_t restarts = 20;
    std::size_t max_iterations = 500;
    /// Convergence threshold on the change of |lambda| between sweeps.
    double tolerance = 1e-12;
    std::uint64_t seed = 1;
    /// Worker threads for restarts; 0 = hardware concurrency. Results do not
    /// depend on this value.
    unsigned threads = 0;
    /// Keep the per-sweep |lambda| trace of every restart.
    bool record_history = false;

    /// Throws InvalidParams when restarts, max_iterations or tolerance are not positive.
    void validate() const;
};

/// Outcome of one alternating run from a single starting point.
struct RestartOutcome {
    std::vector<ComplexVector> factors;
    double overlap = 0.0;
    std::size_t iterations = 0;
    bool hit_max_iterations = false;
    /// |lambda| at the start and after each sweep (only when recorded).
    std::vector<double> history;
};

struct GmeResult {
    double overlap = 0.0;       // |lambda|
    double entanglement = 1.0;  // 1 - |lambda|^2
    RankOneState best_state;    // gauge-fixed: overlap is real and >= 0
    std::size_t best_restart = 0;
    std::vector<double> restart_overlaps;
    std::vector<std::size_t> iterations_used;
    std::vector<bool> hit_max_iterations;
    std::vector<std::vector<double>> histories;
};

/// Alternating rank-one updates from the given starting factors. Each sweep
/// replaces factor k by the normalized contraction of t with the conjugates
/// of all other factors, which maximizes the overlap over that factor.
RestartOutcome refine_rank_one(const ComplexTensor& t, std::vector<ComplexVector> factors,
                               const OptimizerConfig& cfg);

/// Unit-norm factors with i.i.d. standard complex Gaussian entries.
std::vector<ComplexVector> random_factors(std::span<const std::size_t> dims, std::mt19937_64& rng);

/// Best rank-one approximation of a unit-norm tensor: the largest overlap
/// with a product state over `cfg.restarts` random starts. Throws ZeroTensor
/// for a zero tensor and NotNormalized if ||t|| differs from 1 by more than 1e-9.
/// Restarts that hit max_iterations are flagged, not treated as errors.
GmeResult best_rank_one(const ComplexTensor& t, const OptimizerConfig& cfg = {});

/// Largest singular value of a 2-way tensor, computed by a dense SVD that
/// shares no code with the alternating optimizer. Throws NotMatrix for m != 2.
double matrix_svd_oracle(const ComplexTensor& t);

/// Checks 1/sqrt(n_1 ... n_{m-1}) < overlap <= 1, with dims sorted ascending
/// and the largest one dropped. Meaningful for tensors with real amplitudes.
bool real_bound_check(const GmeResult& result, std::span<const std::size_t> dims);

} // namespace gme
