#include "radiosteg/appearance.hpp"

#include "radiosteg/channel.hpp"
#include "radiosteg/error.hpp"
#include "radiosteg/modem.hpp"
#include "radiosteg/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <ostream>

namespace radiosteg {

namespace {

void require_window(int window, double min_prominence) {
    if (window < 1 || window % 2 == 0) throw ParameterError("smoothing window must be odd and >= 1");
    if (!(min_prominence > 0.0 && min_prominence < 1.0)) {
        throw ParameterError("minimum prominence must lie in (0, 1)");
    }
}

// Plateau-aware peak scan over an already smoothed sequence.
int count_smoothed_peaks(std::span<const double> s, double min_prominence) {
    if (s.size() < 3) return 0;
    const double threshold = min_prominence * *std::max_element(s.begin(), s.end());
    int peaks = 0;
    std::size_t i = 1;
    while (i + 1 < s.size()) {
        if (!(s[i] > s[i - 1])) {
            ++i;
            continue;
        }
        std::size_t end = i;
        while (end + 1 < s.size() && s[end + 1] == s[i]) ++end;
        if (end + 1 >= s.size() || !(s[end + 1] < s[i])) {
            i = end + 1;
            continue;
        }
        const double top = s[i];
        double left_min = top;
        for (std::size_t j = i; j-- > 0;) {
            if (s[j] > top) break;
            left_min = std::min(left_min, s[j]);
        }
        double right_min = top;
        for (std::size_t j = end + 1; j < s.size(); ++j) {
            if (s[j] > top) break;
            right_min = std::min(right_min, s[j]);
        }
        if (top - std::max(left_min, right_min) > threshold) ++peaks;
        i = end + 1;
    }
    return peaks;
}

} // namespace

Histogram::Histogram(double lo, double hi, std::size_t bins) : lo_(lo), hi_(hi), counts_(bins, 0) {
    if (bins == 0 || !(hi > lo)) throw ParameterError("histogram needs bins > 0 and hi > lo");
}

void Histogram::add(double value) {
    if (!(value >= lo_ && value < hi_)) {
        ++out_of_range_;
        return;
    }
    auto idx = static_cast<std::size_t>((value - lo_) / bin_width());
    if (idx >= counts_.size()) idx = counts_.size() - 1;
    ++counts_[idx];
}

std::vector<double> Histogram::edges() const {
    std::vector<double> e(counts_.size() + 1);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = lo_ + static_cast<double>(i) * bin_width();
    return e;
}

std::uint64_t Histogram::binned() const noexcept {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

AppearanceData collect(const AppearanceRequest& request) {
    if (request.n_symbols < 1) throw ParameterError("appearance needs at least one symbol");
    const bool shifted = request.scheme == Scheme::shifted_qam;
    if (shifted) {
        validate(request.shift);
    } else if (!(request.beta >= 0.0 && request.beta <= 1.0)) {
        throw ParameterError("blatancy must lie in [0, 1]");
    }

    Rng rng(derive_seed(request.seed, {0}));
    const std::size_t bytes = (request.n_symbols + 3) / 4;
    DualPayload payload;
    payload.cover.resize(bytes);
    payload.secret.resize(bytes);
    for (auto& b : payload.cover) b = rng.next_byte();
    for (auto& b : payload.secret) b = rng.next_byte();

    std::vector<IQPoint> tx;
    Constellation cover = build_psk(2);
    if (shifted) {
        tx = modulate_shifted(payload, request.shift).first;
    } else {
        tx = modulate(payload, build_stego(request.scheme, request.beta));
    }
    tx.resize(request.n_symbols);

    ChannelConfig channel;
    channel.snr_db = request.snr_db;
    channel.noise = request.noise;
    channel.phase_offset = request.phase_offset;
    channel.multipath = request.multipath;
    channel.seed = derive_seed(request.seed, {1});

    AppearanceData data{
        .points = apply_channel(tx, channel),
        .radial_profile = std::vector<Histogram>(cover.size(), Histogram(0.0, kRadialLimit, kRadialBins)),
        .angular_hist = Histogram(-std::numbers::pi, std::numbers::pi, kAngularBins),
        .cover_counts = std::vector<std::size_t>(cover.size(), 0),
    };
    for (const auto& p : data.points) {
        data.i_hist.add(p.real());
        data.q_hist.add(p.imag());
        const auto c = nearest_point(p, cover).index;
        const IQPoint rel = p - cover.point(c);
        data.radial_profile[c].add(std::abs(rel));
        double angle = std::arg(rel);
        if (angle >= std::numbers::pi) angle -= 2.0 * std::numbers::pi;
        data.angular_hist.add(angle);
        ++data.cover_counts[c];
    }
    return data;
}

std::vector<double> smooth(std::span<const std::uint64_t> hist, int window) {
    if (window < 1 || window % 2 == 0) throw ParameterError("smoothing window must be odd and >= 1");
    const auto half = static_cast<std::ptrdiff_t>(window / 2);
    const auto n = static_cast<std::ptrdiff_t>(hist.size());
    std::vector<double> out(hist.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto lo = std::max<std::ptrdiff_t>(0, i - half);
        const auto hi = std::min<std::ptrdiff_t>(n - 1, i + half);
        std::uint64_t sum = 0;
        for (auto j = lo; j <= hi; ++j) sum += hist[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = static_cast<double>(sum) / static_cast<double>(hi - lo + 1);
    }
    return out;
}

int count_peaks(std::span<const std::uint64_t> hist, int window, double min_prominence) {
    require_window(window, min_prominence);
    const auto s = smooth(hist, window);
    return count_smoothed_peaks(s, min_prominence);
}

int count_peaks_circular(std::span<const std::uint64_t> hist, int window, double min_prominence) {
    require_window(window, min_prominence);
    const std::size_t n = hist.size();
    if (n < 3) return 0;
    const std::size_t half = static_cast<std::size_t>(window / 2) % n;
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t sum = 0;
        for (std::size_t d = 0; d < static_cast<std::size_t>(window); ++d) {
            sum += hist[(i + n - half + d) % n];
        }
        s[i] = static_cast<double>(sum) / window;
    }
    // Start the scan at the global minimum so no peak straddles the seam.
    const auto start = static_cast<std::size_t>(std::min_element(s.begin(), s.end()) - s.begin());
    std::rotate(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(start), s.end());
    s.push_back(s.front());
    return count_smoothed_peaks(s, min_prominence);
}

double radial_mode(const AppearanceData& data, std::size_t cover_index) {
    if (cover_index >= data.radial_profile.size()) throw ParameterError("cover index out of range");
    const Histogram& h = data.radial_profile[cover_index];
    if (h.binned() + h.out_of_range() < 100) {
        throw ParameterError("radial mode needs at least 100 points in the cluster");
    }
    const auto counts = h.counts();
    const auto best = static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
    return h.bin_center(best);
}

void write_scatter_csv(std::ostream& os, std::span<const IQPoint> points) {
    os << "i,q\n";
    char buf[96];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof buf, "%.9f,%.9f\n", p.real(), p.imag());
        os << buf;
    }
}

void write_histogram_csv(std::ostream& os, const Histogram& hist) {
    os << "bin_center,count\n";
    char buf[64];
    for (std::size_t i = 0; i < hist.bins(); ++i) {
        std::snprintf(buf, sizeof buf, "%.6f,", hist.bin_center(i));
        os << buf << hist.counts()[i] << '\n';
    }
}

} // namespace radiosteg
