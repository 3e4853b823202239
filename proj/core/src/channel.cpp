#include "radiosteg/channel.hpp"

#include "radiosteg/error.hpp"
#include "radiosteg/rng.hpp"

#include <cmath>

namespace radiosteg {

void validate(const ChannelConfig& cfg) {
    if (cfg.noise && !std::isfinite(cfg.snr_db)) {
        throw ParameterError("snr_db must be finite when noise is enabled");
    }
    if (!std::isfinite(cfg.phase_offset)) {
        throw ParameterError("phase offset must be finite");
    }
    if (cfg.multipath) {
        if (cfg.multipath->delay < 1) throw ParameterError("multipath delay must be at least one symbol");
        if (!(std::abs(cfg.multipath->gain) < 1.0)) throw ParameterError("multipath gain magnitude must be below 1");
    }
}

double noise_power(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

double noise_sigma(double snr_db) { return std::sqrt(noise_power(snr_db) / 2.0); }

std::vector<IQPoint> apply_channel(std::span<const IQPoint> samples, const ChannelConfig& cfg) {
    validate(cfg);
    std::vector<IQPoint> out(samples.begin(), samples.end());

    if (cfg.multipath) {
        const std::size_t delay = cfg.multipath->delay;
        for (std::size_t t = delay; t < samples.size(); ++t) {
            out[t] += cfg.multipath->gain * samples[t - delay];
        }
    }
    if (cfg.phase_offset != 0.0) {
        const IQPoint rot = std::polar(1.0, cfg.phase_offset);
        for (auto& x : out) x *= rot;
    }
    if (cfg.noise) {
        Rng rng(cfg.seed);
        const double sigma = noise_sigma(cfg.snr_db);
        for (auto& x : out) {
            const double ni = rng.normal();
            const double nq = rng.normal();
            x += IQPoint{sigma * ni, sigma * nq};
        }
    }
    return out;
}

} // namespace radiosteg
