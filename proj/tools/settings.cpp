#include "settings.hpp"

#include <radiosteg/error.hpp>

#include <charconv>
#include <cmath>
#include <string>

namespace radiosteg::cli {
namespace {

using nlohmann::json;

constexpr std::size_t kMaxGridPoints = 100000;

double parse_number(std::string_view text) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw ParameterError("not a number: '" + std::string(text) + "'");
    }
    return value;
}

double snap(double v) { return std::round(v * 1e9) / 1e9; }

double get_real(const json& j, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_number()) throw ParameterError(std::string("'") + key + "' must be a number");
    return v.get<double>();
}

long long get_int(const json& j, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw ParameterError(std::string("'") + key + "' must be an integer");
    return v.get<long long>();
}

int get_count(const json& j, const char* key) {
    const auto v = get_int(j, key);
    if (v < 1 || v > 1'000'000'000) throw ParameterError(std::string("'") + key + "' must be a positive count");
    return static_cast<int>(v);
}

std::uint64_t get_seed(const json& j, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_number_unsigned()) throw ParameterError(std::string("'") + key + "' must be a non-negative integer");
    return v.get<std::uint64_t>();
}

bool get_bool(const json& j, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_boolean()) throw ParameterError(std::string("'") + key + "' must be true or false");
    return v.get<bool>();
}

std::vector<double> get_grid(const json& j, const char* key) {
    const auto& v = j.at(key);
    if (v.is_string()) return parse_grid(v.get<std::string>());
    if (!v.is_array()) throw ParameterError(std::string("'") + key + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw ParameterError(std::string("'") + key + "' must be an array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const char* where) {
    for (const auto& item : j.items()) {
        bool found = false;
        for (const char* k : known) found |= item.key() == k;
        if (!found) throw ParameterError("unknown key '" + item.key() + "' in " + where);
    }
}

void apply_channel(ChannelConfig& c, std::optional<std::uint64_t>& channel_seed, const json& j) {
    if (!j.is_object()) throw ParameterError("'channel' must be an object");
    reject_unknown(j, {"snr_db", "noise", "phase_offset_rad", "multipath", "seed"}, "channel");
    if (j.contains("snr_db")) c.snr_db = get_real(j, "snr_db");
    if (j.contains("noise")) c.noise = get_bool(j, "noise");
    if (j.contains("phase_offset_rad")) c.phase_offset = get_real(j, "phase_offset_rad");
    if (j.contains("seed")) channel_seed = get_seed(j, "seed");
    if (j.contains("multipath")) {
        const auto& m = j.at("multipath");
        if (m.is_null()) {
            c.multipath.reset();
        } else {
            if (!m.is_object()) throw ParameterError("'multipath' must be null or an object");
            reject_unknown(m, {"delay", "gain_re", "gain_im"}, "multipath");
            Multipath mp = c.multipath.value_or(Multipath{});
            if (m.contains("delay")) {
                const auto d = get_int(m, "delay");
                if (d < 1 || d > 1'000'000) throw ParameterError("'delay' must be between 1 and 1000000");
                mp.delay = static_cast<std::uint32_t>(d);
            }
            double re = mp.gain.real(), im = mp.gain.imag();
            if (m.contains("gain_re")) re = get_real(m, "gain_re");
            if (m.contains("gain_im")) im = get_real(m, "gain_im");
            mp.gain = {re, im};
            c.multipath = mp;
        }
    }
}

} // namespace

Settings default_settings() {
    Settings s;
    s.betas = parse_grid("0:1:0.05");
    s.snrs = parse_grid("0:40:1");
    return s;
}

std::vector<double> parse_grid(std::string_view text) {
    const auto first = text.find(':');
    if (first == std::string_view::npos) return {parse_number(text)};
    const auto second = text.find(':', first + 1);
    if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
        throw ParameterError("range must look like lo:hi:step, got '" + std::string(text) + "'");
    }
    const double lo = parse_number(text.substr(0, first));
    const double hi = parse_number(text.substr(first + 1, second - first - 1));
    const double step = parse_number(text.substr(second + 1));
    if (!(step > 0.0) || hi < lo) throw ParameterError("range needs lo <= hi and step > 0: '" + std::string(text) + "'");
    const double span = std::floor((hi - lo) / step + 1e-9);
    if (span + 1 > static_cast<double>(kMaxGridPoints)) throw ParameterError("range has too many points");
    std::vector<double> out;
    for (std::size_t i = 0; i <= static_cast<std::size_t>(span); ++i) out.push_back(snap(lo + static_cast<double>(i) * step));
    return out;
}

json to_json(const Settings& s) {
    const auto& r = s.run;
    json channel = {
        {"snr_db", r.channel.snr_db},
        {"noise", r.channel.noise},
        {"phase_offset_rad", r.channel.phase_offset},
        {"multipath", nullptr},
        {"seed", r.base_seed},
    };
    if (r.channel.multipath) {
        channel["multipath"] = {
            {"delay", r.channel.multipath->delay},
            {"gain_re", r.channel.multipath->gain.real()},
            {"gain_im", r.channel.multipath->gain.imag()},
        };
    }
    return {
        {"scheme", to_string(r.scheme)},
        {"beta", r.beta},
        {"beta_lo", r.beta_lo},
        {"beta_hi", r.beta_hi},
        {"epsilon", r.epsilon},
        {"beta_rate", r.beta_rate},
        {"trials", r.trials},
        {"packets_per_trial", r.packets_per_trial},
        {"packet_bytes", r.packet_bytes},
        {"base_seed", r.base_seed},
        {"legacy_cover", r.legacy_cover},
        {"rx_sigma_offset", r.rx_sigma_offset},
        {"rx_epsilon_scale", r.rx_epsilon_scale},
        {"channel", channel},
        {"betas", s.betas},
        {"snrs", s.snrs},
        {"n_symbols", s.n_symbols},
    };
}

void apply_json(Settings& s, const json& input) {
    if (!input.is_object()) throw ParameterError("configuration must be a JSON object");
    const json& j = input.contains("config") ? input.at("config") : input;
    if (!j.is_object()) throw ParameterError("'config' must be an object");
    reject_unknown(j,
                   {"scheme", "beta", "beta_lo", "beta_hi", "epsilon", "beta_rate", "trials", "packets_per_trial",
                    "packet_bytes", "base_seed", "legacy_cover", "rx_sigma_offset", "rx_epsilon_scale", "channel",
                    "betas", "snrs", "n_symbols"},
                   "configuration");

    auto& r = s.run;
    if (j.contains("scheme")) {
        if (!j.at("scheme").is_string()) throw ParameterError("'scheme' must be a string");
        r.scheme = parse_scheme(j.at("scheme").get<std::string>());
    }
    if (j.contains("beta")) r.beta = get_real(j, "beta");
    if (j.contains("beta_lo")) r.beta_lo = get_real(j, "beta_lo");
    if (j.contains("beta_hi")) r.beta_hi = get_real(j, "beta_hi");
    if (j.contains("epsilon")) r.epsilon = get_real(j, "epsilon");
    if (j.contains("beta_rate")) r.beta_rate = get_real(j, "beta_rate");
    if (j.contains("trials")) r.trials = get_count(j, "trials");
    if (j.contains("packets_per_trial")) r.packets_per_trial = get_count(j, "packets_per_trial");
    if (j.contains("packet_bytes")) r.packet_bytes = get_count(j, "packet_bytes");
    if (j.contains("legacy_cover")) r.legacy_cover = get_bool(j, "legacy_cover");
    if (j.contains("rx_sigma_offset")) r.rx_sigma_offset = get_real(j, "rx_sigma_offset");
    if (j.contains("rx_epsilon_scale")) r.rx_epsilon_scale = get_real(j, "rx_epsilon_scale");

    std::optional<std::uint64_t> channel_seed;
    if (j.contains("channel")) apply_channel(r.channel, channel_seed, j.at("channel"));
    if (j.contains("base_seed")) {
        r.base_seed = get_seed(j, "base_seed");
    } else if (channel_seed) {
        r.base_seed = *channel_seed;
    }

    if (j.contains("betas")) s.betas = get_grid(j, "betas");
    if (j.contains("snrs")) s.snrs = get_grid(j, "snrs");
    if (j.contains("n_symbols")) {
        const auto n = get_int(j, "n_symbols");
        if (n < 1) throw ParameterError("'n_symbols' must be positive");
        s.n_symbols = static_cast<std::size_t>(n);
    }
}

} // namespace radiosteg::cli
