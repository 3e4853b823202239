#include "radiosteg/modem.hpp"

#include "radiosteg/error.hpp"

#include <string>

namespace radiosteg {

namespace {

std::size_t symbol_count(const DualPayload& payload, unsigned n, unsigned k) {
    const std::size_t cover_bits = payload.cover.size() * 8;
    const std::size_t secret_bits = payload.secret.size() * 8;
    if (cover_bits % n != 0 || secret_bits % k != 0 || cover_bits / n != secret_bits / k) {
        throw ParameterError("cover and secret payloads need the same symbol count (" +
                             std::to_string(payload.cover.size()) + " vs " +
                             std::to_string(payload.secret.size()) + " bytes)");
    }
    return cover_bits / n;
}

void require_whole_bytes(std::size_t samples, unsigned width) {
    if ((samples * width) % 8 != 0) {
        throw ParameterError("sample count does not fill whole bytes");
    }
}

std::vector<std::uint32_t> labels_for(const DualPayload& payload, unsigned n, unsigned k) {
    const std::size_t count = symbol_count(payload, n, k);
    const auto cover = unpack_bits(payload.cover, n);
    const auto secret = unpack_bits(payload.secret, k);
    std::vector<std::uint32_t> labels(count);
    for (std::size_t t = 0; t < count; ++t) {
        labels[t] = (cover[t] << k) | secret[t];
    }
    return labels;
}

} // namespace

std::vector<std::uint32_t> unpack_bits(std::span<const std::uint8_t> bytes, unsigned width) {
    if (width < 1 || width > 16) throw ParameterError("chunk width must lie in [1, 16]");
    const std::size_t total = bytes.size() * 8;
    if (total % width != 0) throw ParameterError("byte stream does not split into whole chunks");

    std::vector<std::uint32_t> chunks;
    chunks.reserve(total / width);
    std::uint32_t acc = 0;
    unsigned have = 0;
    for (auto byte : bytes) {
        for (int bit = 7; bit >= 0; --bit) {
            acc = (acc << 1) | ((byte >> bit) & 1u);
            if (++have == width) {
                chunks.push_back(acc);
                acc = 0;
                have = 0;
            }
        }
    }
    return chunks;
}

Bytes pack_bits(std::span<const std::uint32_t> chunks, unsigned width) {
    if (width < 1 || width > 16) throw ParameterError("chunk width must lie in [1, 16]");
    require_whole_bytes(chunks.size(), width);

    Bytes bytes;
    bytes.reserve(chunks.size() * width / 8);
    std::uint32_t acc = 0;
    unsigned have = 0;
    for (auto chunk : chunks) {
        for (int bit = static_cast<int>(width) - 1; bit >= 0; --bit) {
            acc = (acc << 1) | ((chunk >> bit) & 1u);
            if (++have == 8) {
                bytes.push_back(static_cast<std::uint8_t>(acc));
                acc = 0;
                have = 0;
            }
        }
    }
    return bytes;
}

std::vector<IQPoint> modulate(const DualPayload& payload, const StegoConstellation& stego) {
    const auto labels = labels_for(payload, stego.cover_bits(), stego.secret_bits());
    std::vector<IQPoint> out;
    out.reserve(labels.size());
    for (auto label : labels) out.push_back(stego.secret().point_for_label(label));
    return out;
}

std::vector<IQPoint> modulate_legacy(std::span<const std::uint8_t> cover, const Constellation& constellation) {
    const auto labels = unpack_bits(cover, constellation.bits_per_symbol());
    std::vector<IQPoint> out;
    out.reserve(labels.size());
    for (auto label : labels) out.push_back(constellation.point_for_label(label));
    return out;
}

std::pair<std::vector<IQPoint>, ShiftState> modulate_shifted(const DualPayload& payload, const ShiftState& state) {
    validate(state);
    // Shifted constellations are circular 4x4-QAM: n = k = 2.
    const auto labels = labels_for(payload, 2, 2);
    std::vector<IQPoint> out;
    out.reserve(labels.size());
    ShiftState s = state;
    for (auto label : labels) {
        out.push_back(materialize_shifted(s).secret().point_for_label(label));
        s = advance_shift(s, 1);
    }
    return {std::move(out), s};
}

DualPayload demodulate_secret(std::span<const IQPoint> samples, const StegoConstellation& stego) {
    const unsigned n = stego.cover_bits();
    const unsigned k = stego.secret_bits();
    require_whole_bytes(samples.size(), n);
    require_whole_bytes(samples.size(), k);

    std::vector<std::uint32_t> cover(samples.size());
    std::vector<std::uint32_t> secret(samples.size());
    const std::uint32_t mask = (1u << k) - 1u;
    for (std::size_t t = 0; t < samples.size(); ++t) {
        const auto label = nearest_point(samples[t], stego.secret()).label;
        cover[t] = label >> k;
        secret[t] = label & mask;
    }
    return {pack_bits(cover, n), pack_bits(secret, k)};
}

std::pair<DualPayload, ShiftState> demodulate_secret_shifted(std::span<const IQPoint> samples,
                                                             const ShiftState& state) {
    validate(state);
    require_whole_bytes(samples.size(), 2);

    std::vector<std::uint32_t> cover(samples.size());
    std::vector<std::uint32_t> secret(samples.size());
    ShiftState s = state;
    for (std::size_t t = 0; t < samples.size(); ++t) {
        const auto label = nearest_point(samples[t], materialize_shifted(s).secret()).label;
        cover[t] = label >> 2;
        secret[t] = label & 3u;
        s = advance_shift(s, 1);
    }
    return {DualPayload{pack_bits(cover, 2), pack_bits(secret, 2)}, s};
}

Bytes demodulate_legacy(std::span<const IQPoint> samples, const Constellation& cover) {
    const unsigned n = cover.bits_per_symbol();
    require_whole_bytes(samples.size(), n);
    std::vector<std::uint32_t> labels(samples.size());
    for (std::size_t t = 0; t < samples.size(); ++t) {
        labels[t] = nearest_point(samples[t], cover).label;
    }
    return pack_bits(labels, n);
}

} // namespace radiosteg
