#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <numbers>

#include "gme/error.hpp"
#include "gme/optimizer.hpp"
#include "gme/partition.hpp"
#include "gme/states.hpp"
#include "support.hpp"

using namespace gme;
using namespace gme::testing;

namespace {

constexpr double pi = std::numbers::pi;

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no gme::Error thrown";
    return ErrorCode::MalformedInput;
}

// Symmetric states reach their best overlap on symmetric product states
// (cos t, sin t)^{(x)n}; these are 1-d maximizations done by grid search.
double dicke_by_grid(std::size_t n, std::size_t k) {
    const double c = std::sqrt(binomial(n, k));
    return grid_max([&](double t) { return c * std::pow(std::cos(t), k) * std::pow(std::sin(t), n - k); }, 0.0,
                    pi / 2);
}

double wsup_by_grid(double s) {
    return grid_max(
        [&](double t) {
            const double a = std::cos(t), b = std::sin(t);
            return std::sqrt(3 * s) * a * a * b + std::sqrt(3 * (1 - s)) * a * b * b;
        },
        0.0, pi / 2);
}

double w_like_by_grid(std::size_t n) {
    return grid_max([&](double t) { return std::sqrt(double(n)) * std::pow(std::cos(t), n - 1) * std::sin(t); },
                    0.0, pi / 2);
}

} // namespace

TEST(States, ConstructorsHaveUnitNorm) {
    std::vector<ComplexTensor> all{dicke_state(6, 2),       w_superposition_state(0.3, 1.1), qudit_symmetric_state(4, 5),
                                   weighted_w_state({1, 2, 3}), ghz_state(4),                hs_state(1.0),
                                   l_state(2.0),             bssb4_family_state(0.4),       bssb4_state(),
                                   bssb5_state()};
    for (const auto& [q, i] : phi_catalog()) all.push_back(phi_state(q, i));
    for (const auto& t : all) EXPECT_NEAR(frobenius_norm(t), 1.0, 1e-14);
}

TEST(States, DickeLayout) {
    // k counts zeros; |0011> + permutations for n=4, k=2
    const auto t = dicke_state(4, 2);
    for (std::size_t i = 0; i < 16; ++i) {
        const bool expect = std::popcount(i) == 2;
        EXPECT_NEAR(std::abs(t[i]), expect ? 1.0 / std::sqrt(6.0) : 0.0, 1e-15);
    }
    EXPECT_NEAR(std::abs(dicke_state(3, 3)[0]), 1.0, 1e-15);
}

TEST(States, DickeOracleAgainstGrid) {
    for (std::size_t n = 2; n <= 10; ++n) {
        for (std::size_t k = 0; k <= n; ++k) {
            EXPECT_NEAR(dicke_overlap_oracle(n, k), dicke_by_grid(n, k), 1e-9) << n << "," << k;
            EXPECT_EQ(dicke_overlap_oracle(n, k), dicke_overlap_oracle(n, n - k));
        }
    }
    EXPECT_EQ(dicke_overlap_oracle(5, 0), 1.0);
    EXPECT_EQ(dicke_overlap_oracle(5, 5), 1.0);
}

TEST(States, DickeTableValues) {
    EXPECT_NEAR(dicke_overlap_oracle(4, 2), 0.6124, 5e-5);
    EXPECT_NEAR(dicke_overlap_oracle(6, 3), 0.5590, 5e-5);
    EXPECT_NEAR(dicke_overlap_oracle(3, 1), 0.6667, 5e-5);
    for (auto [n, k] : {std::pair<std::size_t, std::size_t>{4, 2}, {5, 2}, {6, 3}, {6, 1}}) {
        EXPECT_NEAR(best_rank_one(dicke_state(n, k)).overlap, dicke_overlap_oracle(n, k), 5e-4);
    }
}

TEST(States, WSuperpositionOracleAgainstGrid) {
    for (std::size_t i = 0; i <= 200; ++i) {
        const double s = static_cast<double>(i) / 200.0;
        const auto ctx = w_superposition_overlap_oracle(s);
        EXPECT_NEAR(ctx.lambda, wsup_by_grid(s), 1e-9) << "s=" << s;
        const double a = std::sqrt(1 - s), b = std::sqrt(s), t = ctx.t;
        EXPECT_LT(std::abs(a * t * t * t + 2 * b * t * t - 2 * a * t - b), 1e-10) << "s=" << s;
        const auto c = w_superposition_cubic(s);
        EXPECT_LT(std::abs(c[0] * t * t * t + c[1] * t * t + c[2] * t + c[3]), 1e-10);
    }
    EXPECT_NEAR(w_superposition_overlap_oracle(0.0).lambda, 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(w_superposition_overlap_oracle(1.0).lambda, 2.0 / 3.0, 1e-12);
}

TEST(States, WSuperpositionOptimizerMatchesOracle) {
    for (double s : {0.0, 0.2, 0.5, 0.9, 1.0}) {
        EXPECT_NEAR(best_rank_one(w_superposition_state(s, 0.0)).overlap, w_superposition_overlap_oracle(s).lambda,
                    1e-8);
    }
}

TEST(States, QuditOracle) {
    for (std::size_t n = 2; n <= 9; ++n) EXPECT_NEAR(qudit_overlap_oracle(n), w_like_by_grid(n), 1e-9);
    for (std::size_t n : {4, 5}) {
        const double a = best_rank_one(qudit_symmetric_state(n, n)).overlap;
        const double b = best_rank_one(qudit_symmetric_state(n, 10)).overlap;
        EXPECT_NEAR(a, qudit_overlap_oracle(n), 5e-4);
        EXPECT_NEAR(a, b, 5e-4);
    }
    EXPECT_EQ(code_of([] { qudit_symmetric_state(6, 20, 1000); }), ErrorCode::CapacityExceeded);
}

TEST(States, WeightedWOracleAgainstSvd) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> g(0.1, 3.0);
    for (std::size_t m : {3u, 4u}) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<double> gammas(m);
            for (auto& x : gammas) x = g(rng);
            const auto t = weighted_w_state(gammas);
            for (const auto& p : enumerate_partitions(m, 2)) {
                const double svd = matrix_svd_oracle(merge_indices(t, p));
                EXPECT_NEAR(weighted_w_overlap_oracle(gammas, p), svd * svd, 1e-10) << p.label();
            }
        }
    }
    EXPECT_NEAR(weighted_w_overlap_oracle({1, 2, 3}, Partition(3, {{2}, {0, 1}})), 0.6428, 5e-4);
    EXPECT_NEAR(weighted_w_overlap_oracle({1, 2, 3, 4}, Partition(4, {{2, 3}, {0, 1}})), 0.8333, 5e-4);
}

TEST(States, WeightedWPartyConvention) {
    // gamma_i sits on the basis state where party i alone is excited
    const auto t = weighted_w_state({1, 2, 3});
    const double norm = std::sqrt(14.0);
    EXPECT_NEAR(t[0b100].real(), 1 / norm, 1e-15);
    EXPECT_NEAR(t[0b010].real(), 2 / norm, 1e-15);
    EXPECT_NEAR(t[0b001].real(), 3 / norm, 1e-15);
}

TEST(States, KetBuilder) {
    const auto t = state_from_kets(3, {{"000", 1.0}, {"111", 1.0}});
    EXPECT_EQ(t, ghz_state(3));
    // short labels are padded on the left
    EXPECT_EQ(state_from_kets(3, {{"1", 1.0}}), state_from_kets(3, {{"001", 1.0}}));
    EXPECT_EQ(code_of([] { state_from_kets(2, {{"012", 1.0}}); }), ErrorCode::InvalidParams);
}

TEST(States, CatalogValues) {
    struct Row {
        std::size_t q, i;
        double lambda;
    };
    for (const Row& r : {Row{4, 1, 0.5}, Row{4, 4, 0.5}, Row{4, 7, 0.5}, Row{5, 1, 0.4329}, Row{5, 2, 0.5},
                         Row{6, 1, 0.3780}, Row{6, 2, 0.3954}}) {
        EXPECT_NEAR(best_rank_one(phi_state(r.q, r.i)).overlap, r.lambda, 5e-4) << r.q << "," << r.i;
    }
    EXPECT_EQ(phi_catalog().size(), 13u);
    EXPECT_EQ(code_of([] { phi_state(4, 8); }), ErrorCode::UnknownCatalogIndex);
    EXPECT_EQ(code_of([] { phi_state(8, 1); }), ErrorCode::UnknownCatalogIndex);
}

TEST(States, NamedFamilyValues) {
    EXPECT_NEAR(best_rank_one(hs_state(2 * pi / 3)).entanglement, 0.7778, 1e-3);
    EXPECT_NEAR(best_rank_one(bssb4_state()).entanglement, 0.75, 1e-3);
    EXPECT_NEAR(best_rank_one(bssb5_state()).entanglement, 0.75, 5e-4);
    for (int j = 0; j < 8; ++j) EXPECT_NEAR(best_rank_one(l_state(j * pi / 4)).entanglement, 0.6667, 1e-3);
}

TEST(States, FamilyParsing) {
    auto f = StateFamily::parse("dicke").with("n", 4).with("k", 2);
    EXPECT_EQ(f.name(), "dicke");
    EXPECT_EQ(family_state(f), dicke_state(4, 2));
    EXPECT_EQ(family_state(StateFamily::parse("hs")), hs_state(2 * pi / 3));
    EXPECT_EQ(code_of([] { StateFamily::parse("nope"); }), ErrorCode::InvalidParams);
    EXPECT_EQ(code_of([] { family_state(StateFamily::parse("dicke").with("n", 3).with("k", 4)); }),
              ErrorCode::InvalidParams);
    EXPECT_EQ(code_of([] { family_state(StateFamily::parse("wsup").with("s", 1.5)); }), ErrorCode::InvalidParams);
    EXPECT_EQ(code_of([] { family_state(StateFamily::parse("ghz").with("n", 3).with("bogus", 1)); }),
              ErrorCode::InvalidParams);
    EXPECT_EQ(code_of([] { family_state(StateFamily::parse("dicke").with("n", 3.5).with("k", 1)); }),
              ErrorCode::InvalidParams);
}
