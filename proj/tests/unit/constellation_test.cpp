#include <radiosteg/constellation.hpp>
#include <radiosteg/error.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <set>

using namespace radiosteg;

namespace {

constexpr double kPi = std::numbers::pi;
const double a = 1.0 / std::sqrt(2.0);

std::vector<double> beta_grid() {
    std::vector<double> betas;
    for (int i = 1; i <= 20; ++i) betas.push_back(0.05 * i);
    return betas;
}

std::vector<std::pair<std::string, std::function<StegoConstellation(double)>>> schemes() {
    return {
        {"square", [](double b) { return build_square_stego(b); }},
        {"circular", [](double b) { return build_circular_stego(b); }},
        {"circular_rotated", [](double b) { return build_circular_stego(b, 0.3); }},
        {"psk", [](double b) { return build_psk_stego(b); }},
    };
}

// Sorted copy for point-set comparisons.
std::vector<IQPoint> sorted_points(std::span<const IQPoint> pts, double scale = 1.0) {
    std::vector<IQPoint> out;
    for (auto p : pts) out.push_back(p * scale);
    std::sort(out.begin(), out.end(), [](IQPoint x, IQPoint y) {
        if (std::abs(x.real() - y.real()) > 1e-6) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return out;
}

double max_mismatch(std::span<const IQPoint> x, std::span<const IQPoint> y) {
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
    return worst;
}

bool is_bijective(const Constellation& c) {
    std::set<std::uint32_t> seen(c.labels().begin(), c.labels().end());
    return seen.size() == c.size() && *seen.rbegin() == c.size() - 1;
}

} // namespace

TEST(Psk, FourPointsAtOddQuarterPhases) {
    const auto c = build_psk(2);
    ASSERT_EQ(c.size(), 4u);
    const double expected_deg[] = {45, 135, 225, 315};
    for (std::size_t j = 0; j < 4; ++j) {
        EXPECT_NEAR(std::abs(c.point(j)), 1.0, 1e-15);
        double deg = std::arg(c.point(j)) * 180.0 / kPi;
        if (deg < 0) deg += 360.0;
        EXPECT_NEAR(deg, expected_deg[j], 1e-12);
    }
    // 00, 01, 11, 10 counter-clockwise from 45 degrees.
    EXPECT_EQ(c.label(0), 0b00u);
    EXPECT_EQ(c.label(1), 0b01u);
    EXPECT_EQ(c.label(2), 0b11u);
    EXPECT_EQ(c.label(3), 0b10u);
}

TEST(Psk, SixteenPointsAtOddMultiplesOfPiOver16) {
    const auto c = build_psk(4);
    ASSERT_EQ(c.size(), 16u);
    for (std::size_t j = 0; j < 16; ++j) {
        const double expected = static_cast<double>(2 * j + 1) * kPi / 16.0;
        EXPECT_NEAR(std::abs(std::polar(1.0, expected) - c.point(j)), 0.0, 1e-15);
        const auto next = c.label((j + 1) % 16);
        EXPECT_EQ(oracle::popcount(c.label(j) ^ next), 1) << "around the circle at " << j;
    }
}

TEST(Psk, RejectsInvalidOrder) {
    EXPECT_THROW(build_psk(0), ParameterError);
    EXPECT_THROW(build_psk(9), ParameterError);
    for (unsigned n = 1; n <= 8; ++n) {
        EXPECT_TRUE(is_bijective(build_psk(n))) << n;
    }
}

TEST(RectQam, FourQamMatchesFourPskPointSet) {
    const auto qam = sorted_points(build_rect_qam(2).points());
    const auto psk = sorted_points(build_psk(2).points());
    EXPECT_LT(max_mismatch(qam, psk), 1e-15);
}

TEST(RectQam, SixteenQamGridHasUnitEnergy) {
    const auto c = build_rect_qam(4);
    const double unit = 1.0 / std::sqrt(10.0);
    double energy = 0.0;
    for (auto p : c.points()) {
        energy += p.real() * p.real() + p.imag() * p.imag();
        for (double v : {p.real(), p.imag()}) {
            const double level = v / unit;
            EXPECT_NEAR(std::abs(level), std::round(std::abs(level)), 1e-12);
            EXPECT_TRUE(std::abs(std::abs(level) - 1.0) < 1e-12 || std::abs(std::abs(level) - 3.0) < 1e-12);
        }
    }
    EXPECT_NEAR(energy / 16.0, 1.0, 1e-12);
    EXPECT_NEAR(build_rect_qam(8).average_energy(), 1.0, 1e-12);
}

TEST(RectQam, NeighboursDifferInOneBit) {
    for (unsigned n : {2u, 4u, 6u, 8u}) {
        const auto c = build_rect_qam(n);
        ASSERT_TRUE(is_bijective(c));
        const double side = std::sqrt(static_cast<double>(c.size()));
        const double step = 2.0 / std::sqrt(2.0 * (side * side - 1.0) / 3.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            for (std::size_t j = i + 1; j < c.size(); ++j) {
                if (std::abs(std::abs(c.point(i) - c.point(j)) - step) < 1e-9) {
                    EXPECT_EQ(oracle::popcount(c.label(i) ^ c.label(j)), 1) << "n=" << n;
                }
            }
        }
    }
}

TEST(RectQam, RejectsOddOrSizeOutOfRange) {
    EXPECT_THROW(build_rect_qam(3), ParameterError);
    EXPECT_THROW(build_rect_qam(0), ParameterError);
    EXPECT_THROW(build_rect_qam(10), ParameterError);
}

TEST(Constellation, RejectsDuplicateLabelsAndNonFinitePoints) {
    EXPECT_THROW(Constellation({{1, 0}, {-1, 0}}, {0, 0}, 1), ParameterError);
    EXPECT_THROW(Constellation({{1, 0}, {std::numeric_limits<double>::quiet_NaN(), 0}}, {0, 1}, 1),
                 ParameterError);
    EXPECT_THROW(Constellation({{1, 0}}, {0}, 1), ParameterError);
}

TEST(SquareStego, CollapsesAtZeroBlatancy) {
    const auto s = build_square_stego(0.0);
    for (std::size_t i = 0; i < s.secret().size(); ++i) {
        EXPECT_LT(std::abs(s.secret().point(i) - s.cover().point(s.cluster_of(i))), 1e-12);
    }
}

TEST(SquareStego, FullBlatancyIsSixteenQamUpToScale) {
    const auto s = build_square_stego(1.0);
    const double d = 1.0 / (2.0 * std::sqrt(2.0));
    for (auto p : s.secret().points()) {
        for (double v : {std::abs(p.real()), std::abs(p.imag())}) {
            EXPECT_TRUE(std::abs(v - d) < 1e-12 || std::abs(v - 3 * d) < 1e-12) << v;
        }
    }
    const auto stego = sorted_points(s.secret().points(), 1.0 / std::sqrt(s.secret().average_energy()));
    const auto qam = sorted_points(build_rect_qam(4).points());
    EXPECT_LT(max_mismatch(stego, qam), 1e-9);
}

TEST(SquareStego, HalfBlatancyOffset) {
    const auto s = build_square_stego(0.5);
    const std::uint32_t label = (0b00u << 2) | 0b00u;
    const auto p = s.secret().point_for_label(label);
    EXPECT_NEAR(p.real(), 0.8838834764831843, 1e-12);
    EXPECT_NEAR(p.imag(), 0.8838834764831843, 1e-12);
    EXPECT_EQ(oracle::nearest_index(p, s.cover().points()), 0u);
    EXPECT_LT(std::abs(s.cover().point(0) - IQPoint(a, a)), 1e-15);
}

TEST(SquareStego, RejectsBlatancyOutsideUnitInterval) {
    EXPECT_THROW(build_square_stego(-0.01), ParameterError);
    EXPECT_THROW(build_square_stego(1.01), ParameterError);
    EXPECT_THROW(build_circular_stego(1.5), ParameterError);
    EXPECT_THROW(build_psk_stego(std::numeric_limits<double>::quiet_NaN()), ParameterError);
}

TEST(CircularStego, FullBlatancyRadiusIsEquidistancePoint) {
    const auto s = build_circular_stego(1.0);
    EXPECT_NEAR(kCircularMaxRadius, 0.4714045207910316, 1e-15);

    // Ring position 3 (angle 3pi/2) carries gray(3) = 10.
    const auto below = s.secret().point_for_label((0b00u << 2) | 0b10u);
    EXPECT_NEAR(below.real(), a, 1e-12);
    EXPECT_NEAR(below.imag(), a - kCircularMaxRadius, 1e-12);
    EXPECT_NEAR(std::abs(below - s.cover().point(0)), kCircularMaxRadius, 1e-12);

    double min_inter = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.secret().size(); ++i) {
        for (std::size_t j = 0; j < s.secret().size(); ++j) {
            if (s.cluster_of(i) == s.cluster_of(j)) continue;
            min_inter = std::min(min_inter, std::abs(s.secret().point(i) - s.secret().point(j)));
        }
    }
    EXPECT_NEAR(min_inter, kCircularMaxRadius, 1e-12);
}

TEST(CircularStego, AxisAlignedRingsGiveSixDistinctCoordinates) {
    const auto s = build_circular_stego(0.6);
    std::set<long long> i_values;
    for (auto p : s.secret().points()) i_values.insert(std::llround(p.real() * 1e9));
    EXPECT_EQ(i_values.size(), 6u);
}

TEST(CircularStego, CollapsesAtZeroBlatancy) {
    const auto s = build_circular_stego(0.0, 1.234);
    for (std::size_t i = 0; i < s.secret().size(); ++i) {
        EXPECT_LT(std::abs(s.secret().point(i) - s.cover().point(s.cluster_of(i))), 1e-12);
    }
}

TEST(PskStego, FullBlatancyIsSixteenPsk) {
    const auto s = build_psk_stego(1.0);
    auto phases = [](std::span<const IQPoint> pts) {
        std::vector<double> out;
        for (auto p : pts) {
            double ph = std::arg(p);
            if (ph < 0) ph += 2 * kPi;
            out.push_back(ph);
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    const auto got = phases(s.secret().points());
    const auto want = phases(build_psk(4).points());
    for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
    for (auto p : s.secret().points()) EXPECT_NEAR(std::abs(p), 1.0, 1e-15);
}

TEST(PskStego, HalfBlatancyPhases) {
    const auto s = build_psk_stego(0.5);
    const double offsets[] = {-3 * kPi / 32, -kPi / 32, kPi / 32, 3 * kPi / 32};
    for (std::size_t j = 0; j < 4; ++j) {
        const auto p = s.secret().point(j);
        ASSERT_EQ(s.cluster_of(j), 0u);
        EXPECT_NEAR(std::arg(p), kPi / 4 + offsets[j], 1e-12);
        EXPECT_EQ(oracle::nearest_index(p, s.cover().points()), 0u);
    }
}

TEST(StegoProperties, CollapseAtZeroForEveryScheme) {
    for (const auto& [name, build] : schemes()) {
        const auto s = build(0.0);
        for (std::size_t i = 0; i < s.secret().size(); ++i) {
            EXPECT_LT(std::abs(s.secret().point(i) - s.cover().point(s.cluster_of(i))), 1e-12) << name;
        }
    }
}

TEST(StegoProperties, LegacySafetyOverBetaGrid) {
    for (const auto& [name, build] : schemes()) {
        for (double beta : beta_grid()) {
            EXPECT_TRUE(oracle::legacy_safe(build(beta))) << name << " beta=" << beta;
        }
    }
}

TEST(StegoProperties, LabelsBijectiveWithCoverPrefix) {
    for (const auto& [name, build] : schemes()) {
        for (double beta : beta_grid()) {
            const auto s = build(beta);
            ASSERT_TRUE(is_bijective(s.secret())) << name;
            for (std::size_t i = 0; i < s.secret().size(); ++i) {
                EXPECT_EQ(s.secret().label(i) >> 2, s.cover().label(s.cluster_of(i))) << name;
            }
        }
    }
}

TEST(StegoProperties, GrayAdjacencyWithinClusters) {
    // Geometric neighbours inside a cluster are the pairs at the minimum
    // intra-cluster distance.
    for (const auto& [name, build] : schemes()) {
        for (double beta : {0.2, 0.6, 1.0}) {
            const auto s = build(beta);
            for (std::size_t c = 0; c < 4; ++c) {
                std::vector<std::size_t> members;
                for (std::size_t i = 0; i < s.secret().size(); ++i) {
                    if (s.cluster_of(i) == c) members.push_back(i);
                }
                double min_d = std::numeric_limits<double>::infinity();
                for (auto i : members)
                    for (auto j : members)
                        if (i != j) min_d = std::min(min_d, std::abs(s.secret().point(i) - s.secret().point(j)));
                int neighbour_pairs = 0;
                for (auto i : members) {
                    for (auto j : members) {
                        if (i >= j) continue;
                        if (std::abs(std::abs(s.secret().point(i) - s.secret().point(j)) - min_d) > 1e-9) continue;
                        ++neighbour_pairs;
                        EXPECT_EQ(oracle::popcount((s.secret().label(i) ^ s.secret().label(j)) & 3u), 1)
                            << name << " beta=" << beta;
                    }
                }
                EXPECT_GE(neighbour_pairs, 3) << name;
            }
        }
    }
}

TEST(NearestPoint, ExactHitReturnsThatIndex) {
    const auto c = build_rect_qam(4);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto d = nearest_point(c.point(i), c);
        EXPECT_EQ(d.index, i);
        EXPECT_EQ(d.label, c.label(i));
    }
}

TEST(NearestPoint, FourPskFirstQuadrant) {
    EXPECT_EQ(nearest_point({0.9, 0.1}, build_psk(2)).index, 0u);
}

TEST(NearestPoint, TieAtClusterCentreResolvesToLowestIndex) {
    const auto s = build_square_stego(0.6);
    const auto d = nearest_point(s.cover().point(0), s.secret());
    EXPECT_EQ(d.index, 0u);
    EXPECT_EQ(s.cluster_of(d.index), 0u);
    // Cover point 2 sits at the centre of cluster 2, whose lowest index is 8.
    EXPECT_EQ(nearest_point(s.cover().point(2), s.secret()).index, 8u);
}

TEST(NearestPoint, MatchesBruteForceOnRandomPoints) {
    std::vector<Constellation> all;
    for (unsigned n = 1; n <= 8; ++n) all.push_back(build_psk(n));
    for (unsigned n = 2; n <= 8; n += 2) all.push_back(build_rect_qam(n));
    for (const auto& [name, build] : schemes()) all.push_back(build(0.6).secret());

    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> coord(-1.6, 1.6);
    for (const auto& c : all) {
        for (int i = 0; i < 10000; ++i) {
            const IQPoint p{coord(gen), coord(gen)};
            ASSERT_EQ(nearest_point(p, c).index, oracle::nearest_index(p, c.points()));
        }
    }
}

TEST(Scheme, NamesRoundTrip) {
    for (auto s : {Scheme::square_qam, Scheme::circular_qam, Scheme::psk, Scheme::shifted_qam}) {
        EXPECT_EQ(parse_scheme(to_string(s)), s);
    }
    EXPECT_THROW(parse_scheme("hubbed"), ParameterError);
}
