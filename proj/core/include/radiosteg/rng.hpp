#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace radiosteg {

/// SplitMix64 finaliser.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Deterministic seed derivation: folds each index into the running state with
/// state = splitmix64(state ^ splitmix64(index + 1)), starting from
/// splitmix64(base). Distinct index tuples give unrelated seeds.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> indices) noexcept;

/// Seeded source for simulation randomness. Engine is mt19937_64; the
/// distributions are implemented here rather than taken from <random> so the
/// stream does not depend on the standard library vendor.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    std::uint8_t next_byte() { return static_cast<std::uint8_t>(engine_() >> 56); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal via the Marsaglia polar method; the spare deviate is
    /// cached.
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace radiosteg
