#include <gtest/gtest.h>

#include <filesystem>

#include "gme/error.hpp"
#include "gme/state_io.hpp"
#include "gme/states.hpp"
#include "support.hpp"

using namespace gme;

namespace {

ErrorCode code_of(std::string_view text, bool normalize = true) {
    try {
        parse_state_json(text, normalize);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "accepted: " << text;
    return ErrorCode::InvalidParams;
}

} // namespace

TEST(StateIo, ParsesAndNormalizes) {
    const auto t = parse_state_json(R"({"dims":[2,2],"amplitudes":[{"idx":[0,0],"re":1,"im":0},
                                        {"idx":[1,1],"re":0,"im":1}]})");
    EXPECT_NEAR(frobenius_norm(t), 1.0, 1e-15);
    EXPECT_NEAR(t[3].imag(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_EQ(t[1], Complex{});
    const auto raw = parse_state_json(R"({"dims":[2],"amplitudes":[{"idx":[1],"re":3,"im":4}]})", false);
    EXPECT_EQ(raw[1], (Complex{3, 4}));
}

TEST(StateIo, MissingImaginaryPartDefaultsToZero) {
    const auto t = parse_state_json(R"({"dims":[2],"amplitudes":[{"idx":[0],"re":1}]})");
    EXPECT_EQ(t[0], (Complex{1, 0}));
}

TEST(StateIo, RejectsMalformed) {
    EXPECT_EQ(code_of("not json"), ErrorCode::MalformedInput);
    EXPECT_EQ(code_of(R"({"amplitudes":[]})"), ErrorCode::MalformedInput);
    EXPECT_EQ(code_of(R"({"dims":[2,0],"amplitudes":[]})"), ErrorCode::MalformedInput);
    EXPECT_EQ(code_of(R"({"dims":[2],"amplitudes":[{"idx":[2],"re":1}]})"), ErrorCode::MalformedInput);
    EXPECT_EQ(code_of(R"({"dims":[2],"amplitudes":[{"idx":[0,0],"re":1}]})"), ErrorCode::MalformedInput);
    EXPECT_EQ(code_of(R"({"dims":[2],"amplitudes":[{"idx":[0],"re":1},{"idx":[0],"re":2}]})"),
              ErrorCode::MalformedInput);
    EXPECT_EQ(code_of(R"({"dims":[2],"amplitudes":[{"idx":[0],"re":"x"}]})"), ErrorCode::MalformedInput);
    EXPECT_EQ(code_of(R"({"dims":[2],"amplitudes":[]})"), ErrorCode::ZeroTensor);
}

TEST(StateIo, RoundTripFidelity) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const auto t = gme::testing::random_tensor(gme::testing::random_dims(3, 1, 4, rng), rng);
        const auto back = parse_state_json(state_to_json(t), false);
        ASSERT_EQ(back.dims(), t.dims());
        for (std::size_t i = 0; i < t.size(); ++i) EXPECT_LT(std::abs(back[i] - t[i]), 1e-10);
        EXPECT_EQ(tensor_digest(back), tensor_digest(t));
    }
}

TEST(StateIo, FileRoundTrip) {
    const auto path = std::filesystem::temp_directory_path() / "gme_state_io_test.json";
    const auto t = hs_state(1.0);
    save_state_file(path, t);
    const auto back = load_state_file(path);
    for (std::size_t i = 0; i < t.size(); ++i) EXPECT_LT(std::abs(back[i] - t[i]), 1e-10);
    std::filesystem::remove(path);
    EXPECT_THROW(load_state_file(path), Error);
}

TEST(StateIo, DigestSeesEveryAmplitude) {
    EXPECT_NE(tensor_digest(ghz_state(3)), tensor_digest(dicke_state(3, 1)));
    EXPECT_NE(tensor_digest(w_superposition_state(0.5, 0.0)), tensor_digest(w_superposition_state(0.5, 0.1)));
}
