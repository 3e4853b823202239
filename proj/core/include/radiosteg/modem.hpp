#pragma once

#include "radiosteg/constellation.hpp"
#include "radiosteg/shift.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace radiosteg {

using Bytes = std::vector<std::uint8_t>;

struct DualPayload {
    Bytes cover;
    Bytes secret;

    bool operator==(const DualPayload&) const = default;
};

/// Splits a byte stream, MSB first, into `width`-bit chunks. The bit count
/// must be a multiple of `width`.
std::vector<std::uint32_t> unpack_bits(std::span<const std::uint8_t> bytes, unsigned width);

/// Inverse of unpack_bits. chunks.size() * width must be a multiple of 8.
Bytes pack_bits(std::span<const std::uint32_t> chunks, unsigned width);

/// Symbol t carries label (next n cover bits << k) | next k secret bits.
std::vector<IQPoint> modulate(const DualPayload& payload, const StegoConstellation& stego);

/// Plain modulation of cover bytes onto a legacy constellation.
std::vector<IQPoint> modulate_legacy(std::span<const std::uint8_t> cover, const Constellation& constellation);

/// As modulate, but symbol t uses materialize_shifted(state_t) and the state
/// advances one step per symbol. Returns the state after the last symbol.
std::pair<std::vector<IQPoint>, ShiftState> modulate_shifted(const DualPayload& payload, const ShiftState& state);

/// Full n + k bit decisions against the secret constellation, split into
/// cover and secret streams.
DualPayload demodulate_secret(std::span<const IQPoint> samples, const StegoConstellation& stego);

/// Lockstep mirror of modulate_shifted. A receiver state that differs from the
/// transmitter's is not detected; it yields wrong secret bits.
std::pair<DualPayload, ShiftState> demodulate_secret_shifted(std::span<const IQPoint> samples,
                                                             const ShiftState& state);

/// Decisions against the cover constellation only.
Bytes demodulate_legacy(std::span<const IQPoint> samples, const Constellation& cover);

} // namespace radiosteg
