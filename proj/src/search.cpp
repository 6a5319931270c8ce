#include "gme/search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "gme/error.hpp"
#include "gme/parallel.hpp"
#include "gme/rng.hpp"

namespace gme {

namespace {

// Floyd's algorithm: k distinct values from [0, n), uniformly.
std::vector<std::size_t> sample_support(std::size_t n, std::size_t k, std::mt19937_64& rng) {
    std::set<std::size_t> chosen;
    for (std::size_t j = n - k; j < n; ++j) {
        std::uniform_int_distribution<std::size_t> pick(0, j);
        const std::size_t v = pick(rng);
        if (!chosen.insert(v).second) chosen.insert(j);
    }
    return {chosen.begin(), chosen.end()};
}

SearchHit evaluate(std::size_t n_qubits, const std::vector<std::size_t>& support, OptimizerConfig cfg,
                   std::uint64_t stream) {
    cfg.seed = splitmix64(cfg.seed ^ splitmix64(stream));
    cfg.threads = 1;
    const auto r = best_rank_one(support_state(n_qubits, support), cfg);
    return {support, r.overlap, r.entanglement};
}

void rank(std::vector<SearchHit>& hits) {
    std::stable_sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
        if (a.entanglement != b.entanglement) return a.entanglement > b.entanglement;
        return a.support < b.support;
    });
}

double binomial_bound(std::size_t n, std::size_t k) {
    double c = 1.0;
    for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    return c;
}

} // namespace

void SearchConfig::validate() const {
    if (n_qubits < 2 || n_qubits > 20) throw Error(ErrorCode::InvalidParams, "n_qubits must lie in [2, 20]");
    if (ones_count < 1 || ones_count > (std::size_t{1} << n_qubits)) {
        throw Error(ErrorCode::InvalidParams, "ones_count must lie in [1, 2^n]");
    }
    if (samples == 0) throw Error(ErrorCode::InvalidParams, "samples must be >= 1");
    if (keep_top == 0) throw Error(ErrorCode::InvalidParams, "keep_top must be >= 1");
    optimizer.validate();
}

ComplexTensor support_state(std::size_t n_qubits, const std::vector<std::size_t>& support) {
    if (n_qubits == 0 || n_qubits > 30) throw Error(ErrorCode::InvalidParams, "qubit count out of range");
    const std::size_t size = std::size_t{1} << n_qubits;
    if (support.empty()) throw Error(ErrorCode::ZeroTensor, "empty support");
    ComplexVector data(size);
    const double amp = 1.0 / std::sqrt(static_cast<double>(support.size()));
    for (auto idx : support) {
        if (idx >= size) throw Error(ErrorCode::InvalidParams, "support index out of range");
        if (data[idx] != Complex{}) throw Error(ErrorCode::InvalidParams, "duplicate support index");
        data[idx] = amp;
    }
    return ComplexTensor(std::vector<std::size_t>(n_qubits, 2), std::move(data));
}

std::vector<SearchHit> mc_search(const SearchConfig& cfg) {
    cfg.validate();
    const std::size_t space = std::size_t{1} << cfg.n_qubits;

    // Draw serially so the sample sequence never depends on the thread count.
    std::vector<std::vector<std::size_t>> distinct;
    std::vector<std::uint64_t> first_sample;
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        auto rng = substream(cfg.seed, i);
        auto support = sample_support(space, cfg.ones_count, rng);
        if (seen.insert(support).second) {
            distinct.push_back(std::move(support));
            first_sample.push_back(i);
        }
    }

    std::vector<SearchHit> hits(distinct.size());
    parallel_for(distinct.size(), cfg.threads, [&](std::size_t j) {
        hits[j] = evaluate(cfg.n_qubits, distinct[j], cfg.optimizer, first_sample[j]);
    });
    rank(hits);
    if (hits.size() > cfg.keep_top) hits.resize(cfg.keep_top);

    if (cfg.confirm_restarts > 0) {
        OptimizerConfig confirm = cfg.optimizer;
        confirm.restarts = cfg.confirm_restarts;
        confirm.seed = splitmix64(cfg.optimizer.seed + 0x636f6e6669726dULL);
        std::vector<SearchHit> confirmed(hits.size());
        parallel_for(hits.size(), cfg.threads, [&](std::size_t j) {
            confirmed[j] = evaluate(cfg.n_qubits, hits[j].support, confirm, j);
            // More restarts can only find a larger overlap; keep the better estimate.
            if (hits[j].overlap > confirmed[j].overlap) confirmed[j] = hits[j];
        });
        hits = std::move(confirmed);
        rank(hits);
    }
    return hits;
}

std::vector<SearchHit> exhaustive_search(std::size_t n_qubits, std::size_t ones_count, const OptimizerConfig& cfg,
                                         std::size_t cap, unsigned threads) {
    cfg.validate();
    if (n_qubits < 1 || n_qubits > 20) throw Error(ErrorCode::InvalidParams, "n_qubits must lie in [1, 20]");
    const std::size_t space = std::size_t{1} << n_qubits;
    if (ones_count < 1 || ones_count > space) throw Error(ErrorCode::InvalidParams, "ones_count out of range");
    if (binomial_bound(space, ones_count) > static_cast<double>(cap)) {
        throw Error(ErrorCode::CapacityExceeded, "C(" + std::to_string(space) + "," + std::to_string(ones_count) +
                                                     ") supports exceeds the cap of " + std::to_string(cap));
    }

    std::vector<std::vector<std::size_t>> supports;
    std::vector<std::size_t> combo(ones_count);
    for (std::size_t i = 0; i < ones_count; ++i) combo[i] = i;
    while (true) {
        supports.push_back(combo);
        std::size_t i = ones_count;
        while (i-- > 0) {
            if (combo[i] < space - ones_count + i) break;
        }
        if (i == static_cast<std::size_t>(-1)) break;
        ++combo[i];
        for (std::size_t j = i + 1; j < ones_count; ++j) combo[j] = combo[j - 1] + 1;
    }

    std::vector<SearchHit> hits(supports.size());
    parallel_for(supports.size(), threads, [&](std::size_t j) { hits[j] = evaluate(n_qubits, supports[j], cfg, j); });
    rank(hits);
    return hits;
}

std::vector<SweepRow> sweep(const SweepSpec& spec, const OptimizerConfig& cfg) {
    cfg.validate();
    if (spec.grid.empty()) throw Error(ErrorCode::InvalidParams, "sweep grid is empty");
    // Validates the parameter name and every grid value before any optimizer work.
    std::vector<ComplexTensor> states;
    states.reserve(spec.grid.size());
    for (double v : spec.grid) states.push_back(family_state(spec.family.with(spec.parameter, v)));

    std::vector<SweepRow> rows(spec.grid.size());
    parallel_for(spec.grid.size(), cfg.threads, [&](std::size_t i) {
        OptimizerConfig point = cfg;
        point.threads = 1;
        point.seed = splitmix64(cfg.seed ^ splitmix64(i));
        const auto r = best_rank_one(states[i], point);
        rows[i] = {spec.grid[i], r.overlap, r.entanglement};
    });
    return rows;
}

std::vector<double> linspace(double first, double last, std::size_t count) {
    if (count == 0) throw Error(ErrorCode::InvalidParams, "grid needs at least one point");
    if (count == 1) return {first};
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = first + (last - first) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return out;
}

} // namespace gme
