#include "gme/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "gme/error.hpp"
#include "gme/parallel.hpp"
#include "gme/rng.hpp"

namespace gme {

namespace {

double vector_norm(const ComplexVector& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

} // namespace

void OptimizerConfig::validate() const {
    if (restarts == 0) throw Error(ErrorCode::InvalidParams, "restarts must be >= 1");
    if (max_iterations == 0) throw Error(ErrorCode::InvalidParams, "max_iterations must be >= 1");
    if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidParams, "tolerance must be > 0");
}

std::vector<ComplexVector> random_factors(std::span<const std::size_t> dims, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<ComplexVector> factors;
    factors.reserve(dims.size());
    for (auto d : dims) {
        ComplexVector v(d);
        double norm = 0.0;
        // A zero draw has probability zero, but a degenerate start would stall the sweep.
        while (norm == 0.0) {
            for (auto& z : v) z = {normal(rng), normal(rng)};
            norm = vector_norm(v);
        }
        for (auto& z : v) z /= norm;
        factors.push_back(std::move(v));
    }
    return factors;
}

RestartOutcome refine_rank_one(const ComplexTensor& t, std::vector<ComplexVector> factors,
                               const OptimizerConfig& cfg) {
    cfg.validate();
    RestartOutcome out;
    double lambda = std::abs(full_overlap(t, factors));
    if (cfg.record_history) out.history.push_back(lambda);

    bool converged = false;
    std::size_t sweep = 0;
    while (sweep < cfg.max_iterations && !converged) {
        ++sweep;
        double current = lambda;
        for (std::size_t mode = 0; mode < t.order(); ++mode) {
            ComplexVector g = contract_all_but(t, factors, mode);
            const double norm = vector_norm(g);
            // g == 0 means the overlap vanishes for every choice of this factor.
            if (norm == 0.0) {
                current = 0.0;
                continue;
            }
            for (auto& z : g) z /= norm;
            factors[mode] = std::move(g);
            current = norm;
        }
        converged = std::abs(current - lambda) < cfg.tolerance;
        lambda = current;
        if (cfg.record_history) out.history.push_back(lambda);
    }
    out.factors = std::move(factors);
    out.overlap = lambda;
    out.iterations = sweep;
    out.hit_max_iterations = !converged;
    return out;
}

GmeResult best_rank_one(const ComplexTensor& t, const OptimizerConfig& cfg) {
    cfg.validate();
    const double norm = frobenius_norm(t);
    if (norm == 0.0) throw Error(ErrorCode::ZeroTensor, "state tensor is zero");
    if (std::abs(norm - 1.0) > 1e-9) {
        throw Error(ErrorCode::NotNormalized, "state tensor has norm " + std::to_string(norm));
    }

    std::vector<RestartOutcome> outcomes(cfg.restarts);
    parallel_for(cfg.restarts, cfg.threads, [&](std::size_t r) {
        auto rng = substream(cfg.seed, r);
        outcomes[r] = refine_rank_one(t, random_factors(t.dims(), rng), cfg);
    });

    GmeResult result;
    double best = 0.0;
    for (const auto& o : outcomes) best = std::max(best, o.overlap);
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
        if (outcomes[r].overlap >= best - 1e-12) {
            result.best_restart = r;
            break;
        }
    }
    for (auto& o : outcomes) {
        result.restart_overlaps.push_back(o.overlap);
        result.iterations_used.push_back(o.iterations);
        result.hit_max_iterations.push_back(o.hit_max_iterations);
        if (cfg.record_history) result.histories.push_back(std::move(o.history));
    }

    RankOneState state;
    state.factors = std::move(outcomes[result.best_restart].factors);
    const Complex raw = full_overlap(t, state.factors);
    if (std::abs(raw) > 0.0) {
        const Complex phase = raw / std::abs(raw);
        for (auto& z : state.factors.front()) z *= phase;
    }
    state.overlap = full_overlap(t, state.factors);
    result.best_state = std::move(state);
    result.overlap = result.restart_overlaps[result.best_restart];
    result.entanglement = std::max(0.0, 1.0 - result.overlap * result.overlap);
    return result;
}

double matrix_svd_oracle(const ComplexTensor& t) {
    if (t.order() != 2) {
        throw Error(ErrorCode::NotMatrix, "expected a 2-way tensor, got order " + std::to_string(t.order()));
    }
    const auto rows = static_cast<Eigen::Index>(t.dims()[0]);
    const auto cols = static_cast<Eigen::Index>(t.dims()[1]);
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMajor> m(t.data().data(), rows, cols);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
}

bool real_bound_check(const GmeResult& result, std::span<const std::size_t> dims) {
    std::vector<std::size_t> sorted(dims.begin(), dims.end());
    std::sort(sorted.begin(), sorted.end());
    double product = 1.0;
    for (std::size_t l = 0; l + 1 < sorted.size(); ++l) product *= static_cast<double>(sorted[l]);
    const double upper = 1.0 + 1e-12;
    if (product <= 1.0) {
        // No strict lower bound survives; only the trivial overlap of 1 is possible.
        return result.overlap >= 1.0 - 1e-12 && result.overlap <= upper;
    }
    return 1.0 / std::sqrt(product) < result.overlap && result.overlap <= upper;
}

} // namespace gme
