#pragma once

#include <radiosteg/experiment.hpp>

#include <nlohmann/json.hpp>

#include <cstddef>
#include <string_view>
#include <vector>

namespace radiosteg::cli {

/// Full effective configuration of one command-line run.
struct Settings {
    RunConfig run;
    std::vector<double> betas;
    std::vector<double> snrs;
    std::size_t n_symbols = 16384;

    bool operator==(const Settings&) const = default;
};

/// RunConfig defaults plus beta grid 0:1:0.05 and SNR grid 0:40:1.
Settings default_settings();

/// Parses "lo:hi:step" or a single number. Grid values are snapped to 1e-9.
std::vector<double> parse_grid(std::string_view text);

nlohmann::json to_json(const Settings& s);

/// Overlays the keys present in `j` onto `s`. Accepts either a bare config
/// object or a run manifest with a "config" member. Unknown keys and
/// mistyped values raise ParameterError.
void apply_json(Settings& s, const nlohmann::json& j);

} // namespace radiosteg::cli
