#pragma once

#include "radiosteg/channel.hpp"
#include "radiosteg/constellation.hpp"
#include "radiosteg/shift.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace radiosteg {

/// One Monte-Carlo experiment configuration. By default a grid point is 4
/// trials of 32 packets of 128 bytes.
///
/// Static schemes use `beta`. shifted_qam uses [beta_lo, beta_hi] together
/// with `epsilon` and `beta_rate`; every trial starts from sigma = 0 and
/// beta_phase = 0 and the shift runs continuously across the trial's packets.
struct RunConfig {
    Scheme scheme = Scheme::square_qam;
    double beta = 0.6;
    double beta_lo = 0.5;
    double beta_hi = 0.7;
    double epsilon = 0.001;
    double beta_rate = 0.0007;
    int trials = 4;
    int packets_per_trial = 32;
    int packet_bytes = 128;
    /// `channel.seed` is ignored: every packet draws its own noise seed.
    ChannelConfig channel;
    std::uint64_t base_seed = 1;
    /// Measure cover PER with the independent legacy demodulator instead of
    /// the steganographic receiver's cover prefix.
    bool legacy_cover = false;
    /// Deliberate receiver desynchronisation for shifted_qam: the receiver's
    /// sigma is offset by this many turns and its epsilon scaled by
    /// rx_epsilon_scale.
    double rx_sigma_offset = 0.0;
    double rx_epsilon_scale = 1.0;

    bool operator==(const RunConfig&) const = default;
};

void validate(const RunConfig& cfg);

/// Shift state a trial starts from.
ShiftState initial_shift(const RunConfig& cfg);

/// Nominal blatancy reported for a configuration (range midpoint for
/// shifted_qam).
double nominal_beta(const RunConfig& cfg);

struct TrialResult {
    std::int64_t cover_packets_failed = 0;
    std::int64_t secret_packets_failed = 0;
    std::int64_t packets = 0;
    double cover_per = 0.0;
    double secret_per = 0.0;

    bool operator==(const TrialResult&) const = default;
};

/// Seeds for packet `packet` of trial `trial`. Payload bytes come from
/// Rng(payload seed); channel noise from the channel seed.
std::uint64_t payload_seed(std::uint64_t base_seed, std::uint64_t trial, std::uint64_t packet) noexcept;
std::uint64_t channel_seed(std::uint64_t base_seed, std::uint64_t trial, std::uint64_t packet) noexcept;

/// Runs every trial and packet of `cfg`. A packet fails on a channel when any
/// recovered byte differs. PER values are failures / packets over all trials.
TrialResult run_point(const RunConfig& cfg);

struct SweepRow {
    double x;
    RunConfig config;
    TrialResult result;
};

/// Seed used for grid point `index` of a sweep.
std::uint64_t grid_seed(std::uint64_t base_seed, std::size_t index) noexcept;

/// run_point for each blatancy in order. For shifted_qam the [beta_lo,
/// beta_hi] window is recentred on each grid value, keeping its width and
/// clamping to [0, 1]. `threads` = 0 uses the hardware concurrency; output
/// is identical for any thread count.
std::vector<SweepRow> sweep_beta(const RunConfig& cfg, std::span<const double> betas, unsigned threads = 0);

/// run_point for each SNR in order.
std::vector<SweepRow> sweep_snr(const RunConfig& cfg, std::span<const double> snrs, unsigned threads = 0);

enum class Stream { cover, secret };

/// Smallest grid value from which PER stays <= 0.5 for the rest of the grid;
/// +infinity if there is none. Rows must be ordered by x.
double waterfall(std::span<const SweepRow> rows, Stream stream);

/// Header: scheme,beta,snr_db,packets,cover_failed,secret_failed,cover_per,secret_per,base_seed
void write_results_csv(std::ostream& os, std::span<const SweepRow> rows);

} // namespace radiosteg
