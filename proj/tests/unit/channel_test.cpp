#include <radiosteg/channel.hpp>
#include <radiosteg/error.hpp>
#include <radiosteg/rng.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

using namespace radiosteg;

namespace {

std::vector<IQPoint> random_samples(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<IQPoint> out(n);
    for (auto& x : out) x = {u(gen), u(gen)};
    return out;
}

ChannelConfig noiseless() {
    ChannelConfig cfg;
    cfg.noise = false;
    return cfg;
}

} // namespace

TEST(Channel, NoiseDisabledIsIdentity) {
    const auto x = random_samples(1000, 1);
    EXPECT_EQ(apply_channel(x, noiseless()), x);
}

TEST(Channel, NoiseSigmaClosedForm) {
    EXPECT_NEAR(noise_sigma(25.0), 0.03976353643835254, 1e-15);
    EXPECT_NEAR(noise_power(0.0), 1.0, 1e-15);
    EXPECT_NEAR(noise_power(10.0), 0.1, 1e-15);
}

TEST(Channel, NoisePowerCalibration) {
    const std::size_t n = 1'000'000;
    const std::vector<IQPoint> zeros(n);
    ChannelConfig cfg;
    cfg.snr_db = 25.0;
    cfg.seed = 99;
    const auto y = apply_channel(zeros, cfg);

    double power = 0.0, sum_i = 0.0, sum_q = 0.0, var_i = 0.0;
    for (auto v : y) {
        power += std::norm(v);
        sum_i += v.real();
        sum_q += v.imag();
        var_i += v.real() * v.real();
    }
    const double n0 = noise_power(25.0);
    EXPECT_NEAR(power / n, n0, 0.01 * n0);
    EXPECT_NEAR(std::sqrt(var_i / n), 0.03976353643835254, 0.01 * 0.03976353643835254);
    EXPECT_NEAR(sum_i / n, 0.0, 5 * 0.0398 / std::sqrt(n));
    EXPECT_NEAR(sum_q / n, 0.0, 5 * 0.0398 / std::sqrt(n));
}

TEST(Channel, QuarterTurnPhaseOffset) {
    auto cfg = noiseless();
    cfg.phase_offset = std::numbers::pi / 2;
    const auto x = random_samples(100, 2);
    const auto y = apply_channel(x, cfg);
    for (std::size_t t = 0; t < x.size(); ++t) {
        EXPECT_NEAR(y[t].real(), -x[t].imag(), 1e-15);
        EXPECT_NEAR(y[t].imag(), x[t].real(), 1e-15);
    }
}

TEST(Channel, DeterministicUnderSeed) {
    const auto x = random_samples(4096, 3);
    ChannelConfig cfg;
    cfg.snr_db = 12.0;
    cfg.seed = 77;
    cfg.multipath = Multipath{2, {0.3, -0.1}};
    EXPECT_EQ(apply_channel(x, cfg), apply_channel(x, cfg));
    auto other = cfg;
    other.seed = 78;
    EXPECT_NE(apply_channel(x, cfg), apply_channel(x, other));
}

TEST(Channel, EchoStartsAfterDelay) {
    auto cfg = noiseless();
    cfg.multipath = Multipath{3, {0.5, 0.25}};
    const auto x = random_samples(16, 4);
    const auto y = apply_channel(x, cfg);
    for (std::size_t t = 0; t < x.size(); ++t) {
        const IQPoint want = t < 3 ? x[t] : x[t] + IQPoint{0.5, 0.25} * x[t - 3];
        EXPECT_NEAR(std::abs(y[t] - want), 0.0, 1e-15);
    }
}

TEST(Channel, NoiselessChannelIsLinear) {
    auto cfg = noiseless();
    cfg.phase_offset = 0.7;
    cfg.multipath = Multipath{1, {-0.4, 0.2}};
    const IQPoint alpha{0.8, -1.3}, beta{-0.25, 0.6};
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        const auto x = random_samples(256, 10 + trial);
        const auto z = random_samples(256, 100 + trial);
        std::vector<IQPoint> mix(x.size());
        for (std::size_t t = 0; t < x.size(); ++t) mix[t] = alpha * x[t] + beta * z[t];
        const auto hx = apply_channel(x, cfg);
        const auto hz = apply_channel(z, cfg);
        const auto hmix = apply_channel(mix, cfg);
        for (std::size_t t = 0; t < x.size(); ++t) {
            EXPECT_LT(std::abs(hmix[t] - (alpha * hx[t] + beta * hz[t])), 1e-12);
        }
    }
}

TEST(Channel, RejectsUnstableEcho) {
    auto cfg = noiseless();
    cfg.multipath = Multipath{1, {0.8, 0.6}};
    const std::vector<IQPoint> x(4);
    EXPECT_THROW(apply_channel(x, cfg), ParameterError);
    cfg.multipath = Multipath{0, {0.1, 0.0}};
    EXPECT_THROW(apply_channel(x, cfg), ParameterError);
}

TEST(Rng, DerivedSeedsAreDistinct) {
    std::set<std::uint64_t> seeds;
    for (std::uint64_t t = 0; t < 8; ++t)
        for (std::uint64_t p = 0; p < 64; ++p)
            for (std::uint64_t tag = 0; tag < 2; ++tag) seeds.insert(derive_seed(5, {t, p, tag}));
    EXPECT_EQ(seeds.size(), 8u * 64u * 2u);
    EXPECT_NE(derive_seed(5, {1, 0}), derive_seed(5, {0, 1}));
    EXPECT_NE(derive_seed(5, {0}), derive_seed(6, {0}));
}

TEST(Rng, UniformStaysInHalfOpenInterval) {
    Rng rng(1);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}
