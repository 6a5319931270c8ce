#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gme/optimizer.hpp"
#include "gme/states.hpp"
#include "gme/tensor.hpp"

namespace gme {

struct SearchConfig {
    std::size_t n_qubits = 4;
    std::size_t ones_count = 4;
    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    /// Per-sample optimizer; the default restart budget is reduced for throughput.
    OptimizerConfig optimizer{.restarts = 8};
    std::size_t keep_top = 10;
    /// Restarts for re-evaluating the survivors; 0 skips the confirmation pass.
    std::size_t confirm_restarts = 30;
    unsigned threads = 0;

    void validate() const;
};

struct SearchHit {
    std::vector<std::size_t> support;  // sorted flat basis indices with amplitude 1
    double overlap = 0.0;
    double entanglement = 0.0;
};

/// Equal-amplitude state on the given basis indices of n qubits.
ComplexTensor support_state(std::size_t n_qubits, const std::vector<std::size_t>& support);

/// Samples `samples` supports of `ones_count` distinct basis indices uniformly
/// without replacement, evaluates each distinct support, and returns the
/// best `keep_top` by descending entanglement. Deterministic in cfg.
std::vector<SearchHit> mc_search(const SearchConfig& cfg);

/// Evaluates every support of size ones_count; all rows, ranked by
/// descending entanglement. Throws CapacityExceeded when C(2^n, ones) > cap.
std::vector<SearchHit> exhaustive_search(std::size_t n_qubits, std::size_t ones_count, const OptimizerConfig& cfg,
                                         std::size_t cap, unsigned threads = 0);

struct SweepSpec {
    StateFamily family;
    std::string parameter;
    std::vector<double> grid;
};

struct SweepRow {
    double value = 0.0;
    double overlap = 0.0;
    double entanglement = 0.0;
};

/// One optimizer run per grid value, rows in grid order. Each point uses its
/// own seed derived from cfg.seed and the grid position.
std::vector<SweepRow> sweep(const SweepSpec& spec, const OptimizerConfig& cfg);

/// `count` evenly spaced values from first to last inclusive.
std::vector<double> linspace(double first, double last, std::size_t count);

} // namespace gme
