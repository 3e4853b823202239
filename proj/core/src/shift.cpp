#include "radiosteg/shift.hpp"

#include "radiosteg/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace radiosteg {

namespace {

// Reduce into [0, 1).
double wrap_unit(double x) {
    double r = std::fmod(x, 1.0);
    if (r < 0.0) r += 1.0;
    if (r >= 1.0) r = 0.0;
    return r;
}

} // namespace

void validate(const ShiftState& s) {
    if (!std::isfinite(s.sigma) || !std::isfinite(s.beta_phase) || !std::isfinite(s.epsilon) ||
        !std::isfinite(s.beta_rate)) {
        throw ParameterError("shift state fields must be finite");
    }
    if (!(s.beta_lo >= 0.0 && s.beta_lo <= s.beta_hi && s.beta_hi <= 1.0)) {
        throw ParameterError("shift state needs 0 <= beta_lo <= beta_hi <= 1");
    }
}

ShiftState advance_shift(const ShiftState& state, std::uint64_t steps) {
    if (steps == 0) {
        throw ParameterError("advance_shift needs at least one step");
    }
    ShiftState next = state;
    const auto n = static_cast<double>(steps);
    next.sigma = wrap_unit(state.sigma + n * state.epsilon);
    next.beta_phase = wrap_unit(state.beta_phase + n * state.beta_rate);
    return next;
}

double effective_beta(const ShiftState& state) {
    const double swing = (1.0 - std::cos(2.0 * std::numbers::pi * state.beta_phase)) / 2.0;
    return std::clamp(state.beta_lo + (state.beta_hi - state.beta_lo) * swing, state.beta_lo, state.beta_hi);
}

StegoConstellation materialize_shifted(const ShiftState& state) {
    validate(state);
    const double sigma = wrap_unit(state.sigma);
    return build_circular_stego(effective_beta(state), 2.0 * std::numbers::pi * sigma);
}

} // namespace radiosteg
