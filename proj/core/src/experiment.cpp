#include "radiosteg/experiment.hpp"

#include "radiosteg/error.hpp"
#include "radiosteg/modem.hpp"
#include "radiosteg/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

namespace radiosteg {

namespace {

Bytes random_bytes(Rng& rng, std::size_t count) {
    Bytes out(count);
    for (auto& b : out) b = rng.next_byte();
    return out;
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

// Applies `body(i)` for i in [0, count) on up to `threads` workers.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

std::vector<SweepRow> run_grid(std::vector<RunConfig> configs, std::span<const double> xs, unsigned threads) {
    for (const auto& c : configs) validate(c);
    std::vector<SweepRow> rows(configs.size());
    parallel_for(configs.size(), threads, [&](std::size_t i) {
        rows[i] = SweepRow{xs[i], configs[i], run_point(configs[i])};
    });
    return rows;
}

} // namespace

void validate(const RunConfig& cfg) {
    if (cfg.trials < 1 || cfg.packets_per_trial < 1 || cfg.packet_bytes < 1) {
        throw ParameterError("trials, packets per trial and packet bytes must be positive");
    }
    if (cfg.scheme == Scheme::shifted_qam) {
        validate(initial_shift(cfg));
        if (!std::isfinite(cfg.rx_sigma_offset) || !std::isfinite(cfg.rx_epsilon_scale)) {
            throw ParameterError("receiver desync parameters must be finite");
        }
    } else if (!(cfg.beta >= 0.0 && cfg.beta <= 1.0)) {
        throw ParameterError("blatancy must lie in [0, 1]");
    }
    validate(cfg.channel);
}

ShiftState initial_shift(const RunConfig& cfg) {
    ShiftState s;
    s.sigma = 0.0;
    s.epsilon = cfg.epsilon;
    s.beta_lo = cfg.beta_lo;
    s.beta_hi = cfg.beta_hi;
    s.beta_phase = 0.0;
    s.beta_rate = cfg.beta_rate;
    return s;
}

double nominal_beta(const RunConfig& cfg) {
    return cfg.scheme == Scheme::shifted_qam ? (cfg.beta_lo + cfg.beta_hi) / 2.0 : cfg.beta;
}

std::uint64_t payload_seed(std::uint64_t base_seed, std::uint64_t trial, std::uint64_t packet) noexcept {
    return derive_seed(base_seed, {trial, packet, 0});
}

std::uint64_t channel_seed(std::uint64_t base_seed, std::uint64_t trial, std::uint64_t packet) noexcept {
    return derive_seed(base_seed, {trial, packet, 1});
}

std::uint64_t grid_seed(std::uint64_t base_seed, std::size_t index) noexcept {
    return derive_seed(base_seed, {0xC0FFEEULL, index});
}

TrialResult run_point(const RunConfig& cfg) {
    validate(cfg);
    const bool shifted = cfg.scheme == Scheme::shifted_qam;
    const StegoConstellation stego = build_stego(cfg.scheme, shifted ? cfg.beta_lo : cfg.beta);
    const auto bytes = static_cast<std::size_t>(cfg.packet_bytes);
    const std::uint64_t symbols_per_packet = bytes * 8 / 2;

    TrialResult r;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        const ShiftState start = initial_shift(cfg);
        for (int packet = 0; packet < cfg.packets_per_trial; ++packet) {
            const auto t = static_cast<std::uint64_t>(trial);
            const auto p = static_cast<std::uint64_t>(packet);

            Rng rng(payload_seed(cfg.base_seed, t, p));
            DualPayload sent;
            sent.cover = random_bytes(rng, bytes);
            sent.secret = random_bytes(rng, bytes);

            ChannelConfig channel = cfg.channel;
            channel.seed = channel_seed(cfg.base_seed, t, p);

            DualPayload received;
            std::vector<IQPoint> rx;
            if (shifted) {
                const ShiftState tx_state = p == 0 ? start : advance_shift(start, p * symbols_per_packet);
                ShiftState rx_state = tx_state;
                rx_state.sigma = std::fmod(rx_state.sigma + cfg.rx_sigma_offset, 1.0);
                if (rx_state.sigma < 0.0) rx_state.sigma += 1.0;
                rx_state.epsilon *= cfg.rx_epsilon_scale;
                rx = apply_channel(modulate_shifted(sent, tx_state).first, channel);
                received = demodulate_secret_shifted(rx, rx_state).first;
            } else {
                rx = apply_channel(modulate(sent, stego), channel);
                received = demodulate_secret(rx, stego);
            }
            if (cfg.legacy_cover) {
                received.cover = demodulate_legacy(rx, stego.cover());
            }

            r.cover_packets_failed += received.cover != sent.cover;
            r.secret_packets_failed += received.secret != sent.secret;
            ++r.packets;
        }
    }
    r.cover_per = static_cast<double>(r.cover_packets_failed) / static_cast<double>(r.packets);
    r.secret_per = static_cast<double>(r.secret_packets_failed) / static_cast<double>(r.packets);
    return r;
}

std::vector<SweepRow> sweep_beta(const RunConfig& cfg, std::span<const double> betas, unsigned threads) {
    if (betas.empty()) throw ParameterError("blatancy grid is empty");
    std::vector<RunConfig> configs;
    configs.reserve(betas.size());
    for (std::size_t i = 0; i < betas.size(); ++i) {
        RunConfig c = cfg;
        c.beta = betas[i];
        if (cfg.scheme == Scheme::shifted_qam) {
            const double half = (cfg.beta_hi - cfg.beta_lo) / 2.0;
            c.beta_lo = std::clamp(betas[i] - half, 0.0, 1.0);
            c.beta_hi = std::clamp(betas[i] + half, 0.0, 1.0);
        }
        c.base_seed = grid_seed(cfg.base_seed, i);
        configs.push_back(c);
    }
    return run_grid(std::move(configs), betas, threads);
}

std::vector<SweepRow> sweep_snr(const RunConfig& cfg, std::span<const double> snrs, unsigned threads) {
    if (snrs.empty()) throw ParameterError("SNR grid is empty");
    std::vector<RunConfig> configs;
    configs.reserve(snrs.size());
    for (std::size_t i = 0; i < snrs.size(); ++i) {
        RunConfig c = cfg;
        c.channel.snr_db = snrs[i];
        c.base_seed = grid_seed(cfg.base_seed, i);
        configs.push_back(c);
    }
    return run_grid(std::move(configs), snrs, threads);
}

double waterfall(std::span<const SweepRow> rows, Stream stream) {
    double found = std::numeric_limits<double>::infinity();
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        const double per = stream == Stream::cover ? it->result.cover_per : it->result.secret_per;
        if (per > 0.5) break;
        found = it->x;
    }
    return found;
}

void write_results_csv(std::ostream& os, std::span<const SweepRow> rows) {
    os << "scheme,beta,snr_db,packets,cover_failed,secret_failed,cover_per,secret_per,base_seed\n";
    for (const auto& row : rows) {
        const auto& c = row.config;
        const auto& r = row.result;
        os << to_string(c.scheme) << ',' << fixed6(nominal_beta(c)) << ',' << fixed6(c.channel.snr_db) << ','
           << r.packets << ',' << r.cover_packets_failed << ',' << r.secret_packets_failed << ','
           << fixed6(r.cover_per) << ',' << fixed6(r.secret_per) << ',' << c.base_seed << '\n';
    }
}

} // namespace radiosteg
