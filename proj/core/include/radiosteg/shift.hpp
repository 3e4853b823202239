#pragma once

#include "radiosteg/constellation.hpp"

#include <cstdint>

namespace radiosteg {

/// State of a dynamically rotating circular constellation. `sigma` is the
/// ring rotation in turns; `beta_phase` drives a raised-cosine sweep of the
/// blatancy between beta_lo and beta_hi. Both advance once per symbol.
struct ShiftState {
    double sigma = 0.0;
    double epsilon = 0.001;
    double beta_lo = 0.6;
    double beta_hi = 0.6;
    double beta_phase = 0.0;
    double beta_rate = 0.0007;

    bool operator==(const ShiftState&) const = default;
};

/// Throws ParameterError unless the state satisfies its invariants.
void validate(const ShiftState& state);

/// Pure advance by `steps` symbols (steps >= 1); sigma and beta_phase are
/// reduced mod 1.
ShiftState advance_shift(const ShiftState& state, std::uint64_t steps);

/// beta_lo + (beta_hi - beta_lo) * (1 - cos(2 pi beta_phase)) / 2
double effective_beta(const ShiftState& state);

/// Circular 4x4-QAM at effective_beta(state), rotated by 2 pi sigma.
StegoConstellation materialize_shifted(const ShiftState& state);

} // namespace radiosteg
