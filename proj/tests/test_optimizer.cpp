#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gme/error.hpp"
#include "gme/optimizer.hpp"
#include "gme/states.hpp"
#include "support.hpp"

using namespace gme;
using namespace gme::testing;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no gme::Error thrown";
    return ErrorCode::MalformedInput;
}

OptimizerConfig with_restarts(std::size_t r, std::uint64_t seed = 1) {
    OptimizerConfig cfg;
    cfg.restarts = r;
    cfg.seed = seed;
    return cfg;
}

} // namespace

TEST(Optimizer, ProductStateHasZeroEntanglement) {
    std::mt19937_64 rng(1);
    const auto t = product_tensor(random_unit_factors({2, 3, 2}, rng));
    const auto r = best_rank_one(t);
    EXPECT_NEAR(r.overlap, 1.0, 1e-12);
    EXPECT_NEAR(r.entanglement, 0.0, 1e-12);
    EXPECT_GE(r.entanglement, 0.0);
}

TEST(Optimizer, GhzOverlap) {
    const auto r = best_rank_one(ghz_state(3));
    EXPECT_NEAR(r.overlap, 1.0 / std::sqrt(2.0), 1e-10);
    EXPECT_NEAR(r.entanglement, 0.5, 1e-10);
}

TEST(Optimizer, SingleIndexTensor) {
    std::mt19937_64 rng(2);
    const auto t = random_tensor({5}, rng);
    EXPECT_NEAR(best_rank_one(t).overlap, 1.0, 1e-14);
}

TEST(Optimizer, BestStateIsGaugeFixed) {
    std::mt19937_64 rng(3);
    const auto t = random_tensor({2, 3, 2}, rng);
    const auto r = best_rank_one(t);
    const Complex lambda = full_overlap(t, r.best_state);
    EXPECT_NEAR(lambda.imag(), 0.0, 1e-12);
    EXPECT_NEAR(lambda.real(), r.overlap, 1e-12);
    EXPECT_NEAR(std::abs(r.best_state.overlap - lambda), 0.0, 1e-12);
    for (const auto& f : r.best_state.factors) {
        double n = 0.0;
        for (const auto& z : f) n += std::norm(z);
        EXPECT_NEAR(n, 1.0, 1e-12);
    }
}

TEST(Optimizer, BestRestartIsFirstWithinTieWindow) {
    const auto r = best_rank_one(dicke_state(4, 2));
    const double top = *std::max_element(r.restart_overlaps.begin(), r.restart_overlaps.end());
    for (std::size_t i = 0; i < r.best_restart; ++i) EXPECT_LT(r.restart_overlaps[i], top - 1e-12);
    EXPECT_GE(r.restart_overlaps[r.best_restart], top - 1e-12);
    EXPECT_EQ(r.restart_overlaps.size(), 20u);
}

TEST(Optimizer, RejectsBadInput) {
    EXPECT_EQ(code_of([] { best_rank_one(ComplexTensor::zeros({2, 2})); }), ErrorCode::ZeroTensor);
    const ComplexTensor unnormalized({2}, {Complex{1.0, 0.0}, Complex{1.0, 0.0}});
    EXPECT_EQ(code_of([&] { best_rank_one(unnormalized); }), ErrorCode::NotNormalized);
    EXPECT_EQ(code_of([] { best_rank_one(ghz_state(3), with_restarts(0)); }), ErrorCode::InvalidParams);
    OptimizerConfig bad_tol;
    bad_tol.tolerance = 0.0;
    EXPECT_EQ(code_of([&] { best_rank_one(ghz_state(3), bad_tol); }), ErrorCode::InvalidParams);
    EXPECT_EQ(code_of([] { matrix_svd_oracle(ghz_state(3)); }), ErrorCode::NotMatrix);
}

TEST(Optimizer, MaxIterationsIsFlaggedNotFatal) {
    OptimizerConfig cfg;
    cfg.max_iterations = 1;
    cfg.restarts = 3;
    std::mt19937_64 rng(4);
    const auto r = best_rank_one(random_tensor({3, 3, 3}, rng), cfg);
    EXPECT_EQ(r.hit_max_iterations.size(), 3u);
    EXPECT_TRUE(std::any_of(r.hit_max_iterations.begin(), r.hit_max_iterations.end(), [](bool b) { return b; }));
    EXPECT_GT(r.overlap, 0.0);
}

TEST(Optimizer, SvdOracleMatchesClosedForm2x2) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto t = random_tensor({2, 2}, rng);
        const double expected = sigma_max_2x2(t[0], t[1], t[2], t[3]);
        EXPECT_NEAR(matrix_svd_oracle(t), expected, 1e-12);
        EXPECT_NEAR(best_rank_one(t, with_restarts(5)).overlap, expected, 1e-8);
    }
}

TEST(Optimizer, RealBoundCheck) {
    const auto s42 = best_rank_one(dicke_state(4, 2));
    const std::vector<std::size_t> qubits4(4, 2);
    EXPECT_TRUE(real_bound_check(s42, qubits4));

    std::mt19937_64 rng(6);
    const std::vector<std::size_t> dims{2, 3};
    const auto product = best_rank_one(product_tensor(random_unit_factors(dims, rng)));
    EXPECT_TRUE(real_bound_check(product, dims));

    GmeResult fake;
    fake.overlap = 0.1;  // below 1/sqrt(8)
    EXPECT_FALSE(real_bound_check(fake, qubits4));
}

// ---- properties ----

TEST(OptimizerProperty, MonotoneAscentWithinRestart) {
    std::mt19937_64 rng(100);
    OptimizerConfig cfg = with_restarts(3);
    cfg.record_history = true;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t order = 3 + static_cast<std::size_t>(trial) % 3;
        const auto t = random_tensor(random_dims(order, 2, 4, rng), rng);
        const auto r = best_rank_one(t, cfg);
        ASSERT_EQ(r.histories.size(), cfg.restarts);
        for (const auto& h : r.histories) {
            ASSERT_GE(h.size(), 2u);
            for (std::size_t i = 1; i < h.size(); ++i) EXPECT_GE(h[i], h[i - 1] - 1e-12) << "trial " << trial;
        }
    }
}

TEST(OptimizerProperty, AgreesWithSvdOnMatrices) {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        const auto t = random_tensor(random_dims(2, 1, 6, rng), rng);
        EXPECT_NEAR(best_rank_one(t, with_restarts(5)).overlap, matrix_svd_oracle(t), 1e-8)
            << "dims " << t.dims()[0] << "x" << t.dims()[1];
    }
}

TEST(OptimizerProperty, LocalUnitaryInvariance) {
    std::mt19937_64 rng(102);
    for (int trial = 0; trial < 20; ++trial) {
        const auto dims = random_dims(3, 2, 3, rng);
        const auto t = random_tensor(dims, rng);
        std::vector<ComplexVector> ops;
        for (std::size_t d : dims) ops.push_back(random_unitary(d, rng));
        const auto u = apply_local_operators(t, ops);
        EXPECT_NEAR(frobenius_norm(u), 1.0, 1e-12);
        const auto a = best_rank_one(t, with_restarts(20));
        const auto b = best_rank_one(u, with_restarts(20, 77));
        EXPECT_NEAR(a.overlap, b.overlap, 1e-6) << "trial " << trial;
    }
}

TEST(OptimizerProperty, DiagonalPhaseLeavesEntanglementUnchanged) {
    for (double phi : {0.0, 0.7, 2.0, 4.0}) {
        EXPECT_NEAR(best_rank_one(w_superposition_state(0.3, phi)).entanglement,
                    best_rank_one(w_superposition_state(0.3, 0.0)).entanglement, 1e-6);
    }
}

TEST(OptimizerProperty, PartyPermutationInvariance) {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 20; ++trial) {
        const auto dims = random_dims(4, 2, 3, rng);
        const auto t = random_tensor(dims, rng);
        std::vector<std::size_t> order(4);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        const auto p = permute_parties(t, order);
        EXPECT_NEAR(best_rank_one(t, with_restarts(30)).overlap, best_rank_one(p, with_restarts(30)).overlap, 1e-8)
            << "trial " << trial;
    }
}

TEST(OptimizerProperty, DeterministicAcrossThreadCounts) {
    std::mt19937_64 rng(104);
    for (int trial = 0; trial < 5; ++trial) {
        const auto t = random_tensor(random_dims(4, 2, 3, rng), rng);
        OptimizerConfig a = with_restarts(12, 9), b = a;
        a.threads = 1;
        b.threads = 4;
        const auto ra = best_rank_one(t, a), rb = best_rank_one(t, b);
        EXPECT_EQ(ra.restart_overlaps, rb.restart_overlaps);
        EXPECT_EQ(ra.best_restart, rb.best_restart);
        EXPECT_EQ(ra.best_state.factors, rb.best_state.factors);
    }
}

TEST(OptimizerProperty, ResultBounds) {
    std::mt19937_64 rng(105);
    for (int trial = 0; trial < 50; ++trial) {
        const auto t = random_tensor(random_dims(3, 1, 4, rng), rng);
        const auto r = best_rank_one(t, with_restarts(4));
        EXPECT_GT(r.overlap, 0.0);
        EXPECT_LE(r.overlap, 1.0 + 1e-12);
        EXPECT_GE(r.entanglement, 0.0);
        // a random product state can only do worse
        const double probe = std::abs(naive_overlap(t, random_unit_factors(t.dims(), rng)));
        EXPECT_LE(probe, r.overlap + 1e-12);
    }
}

TEST(OptimizerProperty, RealTensorsSatisfyLowerBound) {
    std::mt19937_64 rng(106);
    for (int trial = 0; trial < 100; ++trial) {
        const auto dims = random_dims(3 + static_cast<std::size_t>(trial) % 2, 2, 3, rng);
        const auto t = random_tensor(dims, rng, true);
        EXPECT_TRUE(real_bound_check(best_rank_one(t, with_restarts(10)), dims)) << "trial " << trial;
    }
}
