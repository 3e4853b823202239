#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

namespace radiosteg {

/// A complex baseband coordinate: real part is in-phase (I), imaginary part is
/// quadrature (Q).
using IQPoint = std::complex<double>;

/// Per-axis amplitude of the unit-energy 4-point cover constellation.
inline constexpr double kCoverAmplitude = std::numbers::sqrt2 / 2.0;

/// Ring radius at blatancy 1 for circular clusters. At this radius a secret
/// point is as far from its own cover point as from the nearest secret point
/// of the neighbouring cluster: 2a - 2r = r.
inline constexpr double kCircularMaxRadius = 2.0 * kCoverAmplitude / 3.0;

/// Reflected binary code of `value`.
constexpr std::uint32_t gray_encode(std::uint32_t value) noexcept { return value ^ (value >> 1); }

/// An ordered set of labelled points. Labels are a bijection onto all
/// `bits_per_symbol`-bit patterns; the constructor enforces this.
class Constellation {
public:
    Constellation(std::vector<IQPoint> points, std::vector<std::uint32_t> labels, unsigned bits_per_symbol);

    std::size_t size() const noexcept { return points_.size(); }
    unsigned bits_per_symbol() const noexcept { return bits_; }

    std::span<const IQPoint> points() const noexcept { return points_; }
    std::span<const std::uint32_t> labels() const noexcept { return labels_; }

    const IQPoint& point(std::size_t index) const { return points_.at(index); }
    std::uint32_t label(std::size_t index) const { return labels_.at(index); }

    std::size_t index_of_label(std::uint32_t label) const;
    const IQPoint& point_for_label(std::uint32_t label) const { return points_[index_of_label(label)]; }

    double average_energy() const noexcept;

private:
    std::vector<IQPoint> points_;
    std::vector<std::uint32_t> labels_;
    std::vector<std::size_t> index_by_label_;
    unsigned bits_;
};

struct Decision {
    std::size_t index;
    std::uint32_t label;
};

/// Squared distances within this of the running best count as ties.
inline constexpr double kTieTolerance = 1e-12;

/// Minimum Euclidean distance decision. Ties, taken as squared distances
/// within kTieTolerance, resolve to the lowest index.
Decision nearest_point(IQPoint p, const Constellation& c);

/// 2^n points on the unit circle at odd multiples of pi/2^n, gray labelled
/// counter-clockwise from the first quadrant. 1 <= n <= 8.
Constellation build_psk(unsigned n);

/// Square grid QAM with odd-integer axis levels, scaled to unit average energy.
/// Label = (gray(I level) << n/2) | gray(Q level). n even, 2 <= n <= 8.
Constellation build_rect_qam(unsigned n);

enum class Scheme { square_qam, circular_qam, psk, shifted_qam };

std::string_view to_string(Scheme scheme) noexcept;
Scheme parse_scheme(std::string_view name);

/// A cover constellation plus, for every cover point, a cluster of 2^k secret
/// points. Secret label = (cover label << k) | intra-cluster label.
class StegoConstellation {
public:
    StegoConstellation(Constellation cover, Constellation secret, unsigned secret_bits, double beta,
                       std::vector<std::size_t> cluster_of);

    const Constellation& cover() const noexcept { return cover_; }
    const Constellation& secret() const noexcept { return secret_; }
    unsigned cover_bits() const noexcept { return cover_.bits_per_symbol(); }
    unsigned secret_bits() const noexcept { return secret_bits_; }
    double beta() const noexcept { return beta_; }

    /// Cover index owning secret point `secret_index`.
    std::size_t cluster_of(std::size_t secret_index) const { return cluster_of_.at(secret_index); }

private:
    Constellation cover_;
    Constellation secret_;
    unsigned secret_bits_;
    double beta_;
    std::vector<std::size_t> cluster_of_;
};

/// Square 4x4-QAM: each cover point (+-a, +-a) carries four secret points at
/// offsets beta * (a/2) * (+-1, +-1). Blatancy 1 is 16-QAM up to scale.
StegoConstellation build_square_stego(double beta);

/// Circular 4x4-QAM: four secret points on a ring of radius
/// beta * kCircularMaxRadius around each cover point, at angles
/// shift_angle + {0, pi/2, pi, 3pi/2}.
StegoConstellation build_circular_stego(double beta, double shift_angle = 0.0);

/// 4x4-PSK: secret points on the unit circle at cover phase
/// + beta * {-3, -1, 1, 3} * pi/16. Blatancy 1 is exactly 16-PSK.
StegoConstellation build_psk_stego(double beta);

/// Static constellation for a scheme; shifted_qam yields its unshifted ring.
StegoConstellation build_stego(Scheme scheme, double beta);

} // namespace radiosteg
