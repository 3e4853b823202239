#pragma once

#include "radiosteg/channel.hpp"
#include "radiosteg/constellation.hpp"
#include "radiosteg/shift.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace radiosteg {

inline constexpr double kAxisHistogramLimit = 2.0;
inline constexpr std::size_t kAxisHistogramBins = 100;
inline constexpr std::size_t kRadialBins = 50;
inline constexpr double kRadialLimit = 2.0 * kCircularMaxRadius;
inline constexpr std::size_t kAngularBins = 36;

inline constexpr int kDefaultPeakWindow = 5;
inline constexpr double kDefaultPeakProminence = 0.1;

/// Uniform bins over [lo, hi). Values outside the range are tallied separately.
class Histogram {
public:
    Histogram(double lo, double hi, std::size_t bins);

    void add(double value);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    std::size_t bins() const noexcept { return counts_.size(); }
    double bin_width() const noexcept { return (hi_ - lo_) / static_cast<double>(counts_.size()); }
    double bin_center(std::size_t i) const noexcept { return lo_ + (static_cast<double>(i) + 0.5) * bin_width(); }
    std::vector<double> edges() const;

    std::span<const std::uint64_t> counts() const noexcept { return counts_; }
    std::uint64_t binned() const noexcept;
    std::uint64_t out_of_range() const noexcept { return out_of_range_; }

private:
    double lo_;
    double hi_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t out_of_range_ = 0;
};

struct AppearanceRequest {
    Scheme scheme = Scheme::square_qam;
    double beta = 0.6;
    /// Used when scheme is shifted_qam.
    ShiftState shift{};
    double snr_db = 25.0;
    bool noise = true;
    double phase_offset = 0.0;
    std::optional<Multipath> multipath;
    std::size_t n_symbols = 16384;
    std::uint64_t seed = 1;
};

struct AppearanceData {
    std::vector<IQPoint> points;
    Histogram i_hist{-kAxisHistogramLimit, kAxisHistogramLimit, kAxisHistogramBins};
    Histogram q_hist{-kAxisHistogramLimit, kAxisHistogramLimit, kAxisHistogramBins};
    /// Distance from the nearest cover point, one histogram per cover index.
    std::vector<Histogram> radial_profile;
    /// Angle about the nearest cover point, pooled over clusters, on [-pi, pi).
    Histogram angular_hist;
    std::vector<std::size_t> cover_counts;
};

/// Modulates n_symbols of random payload, passes them through an AWGN channel
/// and bins the raw received points. No demodulation happens here.
AppearanceData collect(const AppearanceRequest& request);

/// Centred moving average; windows are truncated at the edges.
std::vector<double> smooth(std::span<const std::uint64_t> hist, int window);

/// Peaks of the smoothed histogram whose topographic prominence exceeds
/// min_prominence times the smoothed maximum. A flat top counts once.
int count_peaks(std::span<const std::uint64_t> hist, int window = kDefaultPeakWindow,
                double min_prominence = kDefaultPeakProminence);

/// count_peaks for a histogram whose last bin neighbours its first.
int count_peaks_circular(std::span<const std::uint64_t> hist, int window = kDefaultPeakWindow,
                         double min_prominence = kDefaultPeakProminence);

/// Centre of the fullest radial bin for the cluster around `cover_index`.
/// Needs at least 100 points in that cluster.
double radial_mode(const AppearanceData& data, std::size_t cover_index);

void write_scatter_csv(std::ostream& os, std::span<const IQPoint> points);
void write_histogram_csv(std::ostream& os, const Histogram& hist);

} // namespace radiosteg
