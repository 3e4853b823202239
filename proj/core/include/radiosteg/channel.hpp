#pragma once

#include "radiosteg/constellation.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace radiosteg {

/// Two-tap echo: y[t] = x[t] + gain * x[t - delay].
struct Multipath {
    std::uint32_t delay = 1;
    std::complex<double> gain{0.0, 0.0};

    bool operator==(const Multipath&) const = default;
};

/// SNR is the ratio of the unit cover symbol energy to the complex noise power
/// N0, so N0 = 10^(-snr_db/10) whatever the transmitted constellation.
struct ChannelConfig {
    double snr_db = 25.0;
    bool noise = true;
    double phase_offset = 0.0;
    std::optional<Multipath> multipath;
    std::uint64_t seed = 0;

    bool operator==(const ChannelConfig&) const = default;
};

void validate(const ChannelConfig& cfg);

/// Complex noise power N0 for an SNR in dB.
double noise_power(double snr_db);

/// Per-component (I or Q) noise standard deviation, sqrt(N0 / 2).
double noise_sigma(double snr_db);

/// out[t] = e^{j phase} (x[t] + gain x[t - delay]) + n[t], with x[t] = 0 before
/// the start of the block and n[t] circular Gaussian drawn from Rng(cfg.seed),
/// I then Q per sample.
std::vector<IQPoint> apply_channel(std::span<const IQPoint> samples, const ChannelConfig& cfg);

} // namespace radiosteg
