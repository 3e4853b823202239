#include "radiosteg/constellation.hpp"

#include "radiosteg/error.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace radiosteg {

namespace {

constexpr double kPi = std::numbers::pi;

void require_beta(double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw ParameterError("blatancy must lie in [0, 1], got " + std::to_string(beta));
    }
}

// Builds the 16-point secret constellation from per-cluster offsets. The
// offset at position j of every cluster carries intra-cluster label gray(j).
template <typename OffsetFn>
StegoConstellation assemble_clusters(double beta, OffsetFn&& offset) {
    Constellation cover = build_psk(2);
    constexpr unsigned k = 2;
    constexpr std::size_t per_cluster = 1u << k;

    std::vector<IQPoint> points;
    std::vector<std::uint32_t> labels;
    std::vector<std::size_t> cluster_of;
    points.reserve(cover.size() * per_cluster);
    labels.reserve(cover.size() * per_cluster);
    cluster_of.reserve(cover.size() * per_cluster);

    for (std::size_t c = 0; c < cover.size(); ++c) {
        for (std::size_t j = 0; j < per_cluster; ++j) {
            points.push_back(offset(cover.point(c), c, j));
            labels.push_back((cover.label(c) << k) | gray_encode(static_cast<std::uint32_t>(j)));
            cluster_of.push_back(c);
        }
    }
    Constellation secret(std::move(points), std::move(labels), cover.bits_per_symbol() + k);
    return StegoConstellation(std::move(cover), std::move(secret), k, beta, std::move(cluster_of));
}

} // namespace

Constellation::Constellation(std::vector<IQPoint> points, std::vector<std::uint32_t> labels,
                             unsigned bits_per_symbol)
    : points_(std::move(points)), labels_(std::move(labels)), bits_(bits_per_symbol) {
    if (bits_ < 1 || bits_ > 16) {
        throw ParameterError("bits per symbol must lie in [1, 16]");
    }
    const std::size_t m = std::size_t{1} << bits_;
    if (points_.size() != m || labels_.size() != m) {
        throw ParameterError("constellation must hold exactly 2^n points and labels");
    }
    index_by_label_.assign(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!std::isfinite(points_[i].real()) || !std::isfinite(points_[i].imag())) {
            throw ParameterError("constellation point is not finite");
        }
        const auto label = labels_[i];
        if (label >= m || index_by_label_[label] != m) {
            throw ParameterError("constellation labels are not a bijection");
        }
        index_by_label_[label] = i;
    }
}

std::size_t Constellation::index_of_label(std::uint32_t label) const {
    if (label >= index_by_label_.size()) {
        throw ParameterError("label out of range");
    }
    return index_by_label_[label];
}

double Constellation::average_energy() const noexcept {
    double sum = 0.0;
    for (const auto& p : points_) sum += std::norm(p);
    return sum / static_cast<double>(points_.size());
}

Decision nearest_point(IQPoint p, const Constellation& c) {
    const auto points = c.points();
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double d = std::norm(p - points[i]);
        if (d < best_d - kTieTolerance) {
            best_d = d;
            best = i;
        }
    }
    return {best, c.label(best)};
}

Constellation build_psk(unsigned n) {
    if (n < 1 || n > 8) {
        throw ParameterError("PSK bits per symbol must lie in [1, 8]");
    }
    const std::size_t m = std::size_t{1} << n;
    std::vector<IQPoint> points(m);
    std::vector<std::uint32_t> labels(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double phase = static_cast<double>(2 * j + 1) * kPi / static_cast<double>(m);
        points[j] = std::polar(1.0, phase);
        labels[j] = gray_encode(static_cast<std::uint32_t>(j));
    }
    if (n == 2) {
        // Pin the quadrature points exactly so derived clusters stay symmetric.
        const double a = kCoverAmplitude;
        points = {{a, a}, {-a, a}, {-a, -a}, {a, -a}};
    }
    return Constellation(std::move(points), std::move(labels), n);
}

Constellation build_rect_qam(unsigned n) {
    if (n < 2 || n > 8 || n % 2 != 0) {
        throw ParameterError("rectangular QAM needs an even bits per symbol in [2, 8]");
    }
    const unsigned half = n / 2;
    const std::size_t side = std::size_t{1} << half;
    const double s = static_cast<double>(side);
    const double scale = 1.0 / std::sqrt(2.0 * (s * s - 1.0) / 3.0);

    std::vector<IQPoint> points;
    std::vector<std::uint32_t> labels;
    points.reserve(side * side);
    labels.reserve(side * side);
    for (std::size_t iu = 0; iu < side; ++iu) {
        for (std::size_t qu = 0; qu < side; ++qu) {
            const double i_level = 2.0 * static_cast<double>(iu) - (s - 1.0);
            const double q_level = 2.0 * static_cast<double>(qu) - (s - 1.0);
            points.emplace_back(i_level * scale, q_level * scale);
            labels.push_back((gray_encode(static_cast<std::uint32_t>(iu)) << half) |
                             gray_encode(static_cast<std::uint32_t>(qu)));
        }
    }
    return Constellation(std::move(points), std::move(labels), n);
}

std::string_view to_string(Scheme scheme) noexcept {
    switch (scheme) {
    case Scheme::square_qam: return "square_qam";
    case Scheme::circular_qam: return "circular_qam";
    case Scheme::psk: return "psk";
    case Scheme::shifted_qam: return "shifted_qam";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name) {
    for (auto s : {Scheme::square_qam, Scheme::circular_qam, Scheme::psk, Scheme::shifted_qam}) {
        if (name == to_string(s)) return s;
    }
    throw ParameterError("unknown scheme '" + std::string(name) + "'");
}

StegoConstellation::StegoConstellation(Constellation cover, Constellation secret, unsigned secret_bits,
                                       double beta, std::vector<std::size_t> cluster_of)
    : cover_(std::move(cover)),
      secret_(std::move(secret)),
      secret_bits_(secret_bits),
      beta_(beta),
      cluster_of_(std::move(cluster_of)) {
    require_beta(beta_);
    if (secret_.bits_per_symbol() != cover_.bits_per_symbol() + secret_bits_) {
        throw ParameterError("secret constellation must carry n + k bits");
    }
    if (cluster_of_.size() != secret_.size()) {
        throw ParameterError("cluster map must cover every secret point");
    }
    std::vector<std::size_t> members(cover_.size(), 0);
    for (std::size_t i = 0; i < secret_.size(); ++i) {
        const std::size_t c = cluster_of_[i];
        if (c >= cover_.size()) throw ParameterError("cluster index out of range");
        if ((secret_.label(i) >> secret_bits_) != cover_.label(c)) {
            throw ParameterError("secret label prefix does not match its cover label");
        }
        ++members[c];
    }
    for (auto count : members) {
        if (count != (std::size_t{1} << secret_bits_)) {
            throw ParameterError("every cluster must hold exactly 2^k secret points");
        }
    }
}

StegoConstellation build_square_stego(double beta) {
    require_beta(beta);
    // ++, -+, --, +- in gray order around the square.
    static constexpr double sx[] = {1.0, -1.0, -1.0, 1.0};
    static constexpr double sy[] = {1.0, 1.0, -1.0, -1.0};
    const double d = beta * kCoverAmplitude / 2.0;
    return assemble_clusters(beta, [d](IQPoint c, std::size_t, std::size_t j) {
        return IQPoint{c.real() + d * sx[j], c.imag() + d * sy[j]};
    });
}

StegoConstellation build_circular_stego(double beta, double shift_angle) {
    require_beta(beta);
    if (!std::isfinite(shift_angle)) {
        throw ParameterError("shift angle must be finite");
    }
    const double r = beta * kCircularMaxRadius;
    return assemble_clusters(beta, [r, shift_angle](IQPoint c, std::size_t, std::size_t j) {
        return c + std::polar(r, shift_angle + static_cast<double>(j) * kPi / 2.0);
    });
}

StegoConstellation build_psk_stego(double beta) {
    require_beta(beta);
    static constexpr double steps[] = {-3.0, -1.0, 1.0, 3.0};
    return assemble_clusters(beta, [beta](IQPoint, std::size_t c, std::size_t j) {
        const double cover_phase = static_cast<double>(2 * c + 1) * kPi / 4.0;
        return std::polar(1.0, cover_phase + beta * steps[j] * kPi / 16.0);
    });
}

StegoConstellation build_stego(Scheme scheme, double beta) {
    switch (scheme) {
    case Scheme::square_qam: return build_square_stego(beta);
    case Scheme::circular_qam:
    case Scheme::shifted_qam: return build_circular_stego(beta);
    case Scheme::psk: return build_psk_stego(beta);
    }
    throw ParameterError("unknown scheme");
}

} // namespace radiosteg
