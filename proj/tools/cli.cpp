#include "cli.hpp"

#include "settings.hpp"
#include "svg.hpp"

#include <radiosteg/appearance.hpp>
#include <radiosteg/error.hpp>
#include <radiosteg/experiment.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef RADIOSTEG_VERSION
#define RADIOSTEG_VERSION "unknown"
#endif

namespace radiosteg::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RuntimeFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Flags {
    std::optional<std::string> config;
    std::optional<std::string> output_dir;
    std::optional<std::string> scheme;
    std::optional<double> beta, beta_lo, beta_hi, epsilon, beta_rate;
    std::optional<std::string> snr, betas;
    std::optional<bool> noise;
    std::optional<double> phase_offset;
    std::optional<std::uint32_t> multipath_delay;
    std::optional<double> multipath_gain_re, multipath_gain_im;
    std::optional<int> trials, packets, packet_bytes;
    std::optional<std::uint64_t> seed;
    std::optional<bool> legacy_cover;
    std::optional<double> rx_sigma_offset, rx_epsilon_scale;
    std::optional<std::size_t> symbols;
    unsigned threads = 0;
    bool svg = false;
};

enum class Command { constellation, sweep_beta, sweep_snr, appearance, demo };

const char* kFooter = R"(Ranges are written lo:hi:step, both ends inclusive, e.g. --snr 0:40:1.
--config takes a JSON object with any of the keys
  scheme, beta, beta_lo, beta_hi, epsilon, beta_rate, trials,
  packets_per_trial, packet_bytes, base_seed, legacy_cover,
  rx_sigma_offset, rx_epsilon_scale, betas, snrs, n_symbols,
  channel: {snr_db, noise, phase_offset_rad,
            multipath: null | {delay, gain_re, gain_im}, seed}
or a manifest.json written by an earlier run. Flags override file values.
Outputs go to --output-dir, else $RADIOSTEG_OUTPUT_DIR, else the current
directory.)";

void add_model_flags(CLI::App& app, Flags& f, bool with_scheme = true) {
    if (with_scheme) {
        app.add_option("--scheme", f.scheme, "Constellation scheme")
            ->check(CLI::IsMember({"square_qam", "circular_qam", "psk", "shifted_qam"}));
    }
    app.add_option("--beta", f.beta, "Blatancy in [0, 1]");
    app.add_option("--beta-lo", f.beta_lo, "Lower blatancy bound (shifted_qam)");
    app.add_option("--beta-hi", f.beta_hi, "Upper blatancy bound (shifted_qam)");
    app.add_option("--epsilon", f.epsilon, "Shift per symbol in turns (shifted_qam)");
    app.add_option("--beta-rate", f.beta_rate, "Blatancy oscillation phase per symbol (shifted_qam)");
}

void add_channel_flags(CLI::App& app, Flags& f) {
    app.add_flag("--noise,!--no-noise", f.noise, "Enable or disable channel noise");
    app.add_option("--phase-offset", f.phase_offset, "Carrier phase offset in radians");
    app.add_option("--multipath-delay", f.multipath_delay, "Echo delay in symbols");
    app.add_option("--multipath-gain-re", f.multipath_gain_re, "Echo gain, real part");
    app.add_option("--multipath-gain-im", f.multipath_gain_im, "Echo gain, imaginary part");
}

void add_run_flags(CLI::App& app, Flags& f) {
    app.add_option("--trials", f.trials, "Trials per grid point");
    app.add_option("--packets", f.packets, "Packets per trial");
    app.add_option("--packet-bytes", f.packet_bytes, "Bytes per packet");
    app.add_flag("--legacy-cover,!--prefix-cover", f.legacy_cover,
                 "Measure cover PER with the legacy demodulator");
    app.add_option("--rx-sigma-offset", f.rx_sigma_offset, "Receiver shift offset in turns (shifted_qam)");
    app.add_option("--rx-epsilon-scale", f.rx_epsilon_scale, "Receiver shift rate scale (shifted_qam)");
    app.add_option("--threads", f.threads, "Worker threads, 0 = all cores");
}

void add_io_flags(CLI::App& app, Flags& f) {
    app.add_option("--seed", f.seed, "Base seed");
    app.add_option("--config", f.config, "JSON run configuration or manifest");
    app.add_option("--output-dir", f.output_dir, "Directory for output files");
    app.add_flag("--svg", f.svg, "Also write SVG plots");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot read config file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParameterError("config file '" + path + "' is not valid JSON: " + e.what());
    }
}

double single_value(const std::string& text, const char* flag) {
    const auto grid = parse_grid(text);
    if (grid.size() != 1) throw ParameterError(std::string(flag) + " takes a single value here");
    return grid.front();
}

Settings resolve(const Flags& f, Command cmd) {
    Settings s = default_settings();
    if (f.config) apply_json(s, read_json_file(*f.config));

    auto& r = s.run;
    if (f.scheme) r.scheme = parse_scheme(*f.scheme);
    if (f.beta) r.beta = *f.beta;
    if (f.beta_lo) r.beta_lo = *f.beta_lo;
    if (f.beta_hi) r.beta_hi = *f.beta_hi;
    if (f.epsilon) r.epsilon = *f.epsilon;
    if (f.beta_rate) r.beta_rate = *f.beta_rate;
    if (f.trials) r.trials = *f.trials;
    if (f.packets) r.packets_per_trial = *f.packets;
    if (f.packet_bytes) r.packet_bytes = *f.packet_bytes;
    if (f.seed) r.base_seed = *f.seed;
    if (f.legacy_cover) r.legacy_cover = *f.legacy_cover;
    if (f.rx_sigma_offset) r.rx_sigma_offset = *f.rx_sigma_offset;
    if (f.rx_epsilon_scale) r.rx_epsilon_scale = *f.rx_epsilon_scale;
    if (f.noise) r.channel.noise = *f.noise;
    if (f.phase_offset) r.channel.phase_offset = *f.phase_offset;
    if (f.multipath_delay || f.multipath_gain_re || f.multipath_gain_im) {
        Multipath mp = r.channel.multipath.value_or(Multipath{});
        if (f.multipath_delay) mp.delay = *f.multipath_delay;
        mp.gain = {f.multipath_gain_re.value_or(mp.gain.real()), f.multipath_gain_im.value_or(mp.gain.imag())};
        r.channel.multipath = mp;
    }
    if (f.snr) {
        if (cmd == Command::sweep_snr || cmd == Command::demo) {
            s.snrs = parse_grid(*f.snr);
        } else {
            r.channel.snr_db = single_value(*f.snr, "--snr");
        }
    }
    if (f.betas) s.betas = parse_grid(*f.betas);
    if (f.symbols) {
        if (*f.symbols < 1) throw ParameterError("--symbols must be positive");
        s.n_symbols = *f.symbols;
    }

    validate(r);
    if (s.betas.empty() || s.snrs.empty()) throw ParameterError("sweep grids must not be empty");
    for (double b : s.betas) {
        if (!(b >= 0.0 && b <= 1.0)) throw ParameterError("beta grid values must lie in [0, 1]");
    }
    for (double v : s.snrs) {
        if (!std::isfinite(v)) throw ParameterError("SNR grid values must be finite");
    }
    return s;
}

fs::path output_dir(const Flags& f) {
    if (f.output_dir) return *f.output_dir;
    if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return env;
    return ".";
}

fs::path prepare_output_dir(const Flags& f) {
    const fs::path dir = output_dir(f);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw RuntimeFailure("cannot create output directory '" + dir.string() + "'" +
                             (ec ? ": " + ec.message() : std::string()));
    }
    return dir;
}

class OutputSet {
public:
    OutputSet(fs::path dir, std::ostream& log) : dir_(std::move(dir)), log_(log) {}

    void write(const std::string& name, const std::string& content) {
        const fs::path path = dir_ / name;
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        os << content;
        os.close();
        if (!os) throw RuntimeFailure("cannot write '" + path.string() + "'");
        names_.push_back(name);
        log_ << "wrote " << path.string() << '\n';
    }

    void write_manifest(const char* command, const Settings& s, json summary) {
        auto outputs = names_;
        outputs.push_back("manifest.json");
        const json manifest = {
            {"tool", "radiosteg"},
            {"version", RADIOSTEG_VERSION},
            {"command", command},
            {"config", to_json(s)},
            {"outputs", outputs},
            {"summary", std::move(summary)},
        };
        write("manifest.json", manifest.dump(2) + "\n");
    }

private:
    fs::path dir_;
    std::ostream& log_;
    std::vector<std::string> names_;
};

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

std::string describe_beta(const RunConfig& r) {
    if (r.scheme == Scheme::shifted_qam) return "beta in [" + fmt("%g", r.beta_lo) + ", " + fmt("%g", r.beta_hi) + "]";
    return "beta = " + fmt("%g", r.beta);
}

std::string results_csv(std::span<const SweepRow> rows) {
    std::ostringstream os;
    write_results_csv(os, rows);
    return os.str();
}

std::string per_svg(std::span<const SweepRow> rows, const std::string& title, const char* x_label) {
    svg::Series cover{"cover", {}, {}}, secret{"secret", {}, {}};
    for (const auto& row : rows) {
        cover.x.push_back(row.x);
        cover.y.push_back(row.result.cover_per);
        secret.x.push_back(row.x);
        secret.y.push_back(row.result.secret_per);
    }
    const std::vector<svg::Series> series{cover, secret};
    return svg::per_chart(title, x_label, series);
}

std::string snr_title(const RunConfig& r) { return std::string(to_string(r.scheme)) + ", " + describe_beta(r); }
std::string beta_title(const RunConfig& r) {
    return std::string(to_string(r.scheme)) + ", SNR = " + fmt("%g", r.channel.snr_db) + " dB";
}

json waterfall_summary(std::span<const SweepRow> rows) {
    return {{"cover_waterfall", finite_or_null(waterfall(rows, Stream::cover))},
            {"secret_waterfall", finite_or_null(waterfall(rows, Stream::secret))}};
}

void print_waterfalls(std::ostream& out, const std::string& prefix, std::span<const SweepRow> rows,
                      const char* unit) {
    for (auto [name, stream] : {std::pair{"cover", Stream::cover}, std::pair{"secret", Stream::secret}}) {
        const double w = waterfall(rows, stream);
        out << prefix << name << " waterfall: " << (std::isfinite(w) ? fmt("%g", w) + unit : "none") << '\n';
    }
}

int cmd_constellation(const Flags& f, std::ostream& out) {
    const Settings s = resolve(f, Command::constellation);
    const auto stego = build_stego(s.run.scheme, nominal_beta(s.run));
    const auto& secret = stego.secret();
    out << "index,label_bits,i,q\n";
    for (std::size_t i = 0; i < secret.size(); ++i) {
        std::string bits;
        for (unsigned b = secret.bits_per_symbol(); b-- > 0;) bits += (secret.label(i) >> b) & 1u ? '1' : '0';
        char buf[96];
        std::snprintf(buf, sizeof buf, ",%.17g,%.17g\n", secret.point(i).real(), secret.point(i).imag());
        out << i << ',' << bits << buf;
    }
    return 0;
}

int cmd_sweep(const Flags& f, Command cmd, std::ostream& out) {
    const Settings s = resolve(f, cmd);
    const bool over_snr = cmd == Command::sweep_snr;
    const auto rows = over_snr ? sweep_snr(s.run, s.snrs, f.threads) : sweep_beta(s.run, s.betas, f.threads);

    OutputSet files(prepare_output_dir(f), out);
    files.write("results.csv", results_csv(rows));
    if (f.svg) {
        files.write(over_snr ? "per_vs_snr.svg" : "per_vs_beta.svg",
                    over_snr ? per_svg(rows, snr_title(s.run), "SNR (dB)")
                             : per_svg(rows, beta_title(s.run), "blatancy"));
    }
    files.write_manifest(over_snr ? "sweep-snr" : "sweep-beta", s, waterfall_summary(rows));
    print_waterfalls(out, "", rows, over_snr ? " dB" : "");
    return 0;
}

int cmd_appearance(const Flags& f, std::ostream& out) {
    const Settings s = resolve(f, Command::appearance);
    AppearanceRequest req;
    req.scheme = s.run.scheme;
    req.beta = s.run.beta;
    req.shift = initial_shift(s.run);
    req.snr_db = s.run.channel.snr_db;
    req.noise = s.run.channel.noise;
    req.phase_offset = s.run.channel.phase_offset;
    req.multipath = s.run.channel.multipath;
    req.n_symbols = s.n_symbols;
    req.seed = s.run.base_seed;
    const auto data = collect(req);

    OutputSet files(prepare_output_dir(f), out);
    std::ostringstream scatter, hist_i, hist_q;
    write_scatter_csv(scatter, data.points);
    write_histogram_csv(hist_i, data.i_hist);
    write_histogram_csv(hist_q, data.q_hist);
    files.write("scatter.csv", scatter.str());
    files.write("hist_i.csv", hist_i.str());
    files.write("hist_q.csv", hist_q.str());
    if (f.svg) {
        const std::string title = std::string(to_string(req.scheme)) + ", " + describe_beta(s.run) + ", SNR = " +
                                  fmt("%g", req.snr_db) + " dB";
        files.write("appearance.svg", svg::appearance_chart(title, data));
    }

    json modes = json::array();
    for (std::size_t c = 0; c < data.cover_counts.size(); ++c) {
        try {
            modes.push_back(radial_mode(data, c));
        } catch (const ParameterError&) {
            modes.push_back(nullptr);
        }
    }
    const json summary = {
        {"i_peaks", count_peaks(data.i_hist.counts())},
        {"q_peaks", count_peaks(data.q_hist.counts())},
        {"angular_peaks", count_peaks_circular(data.angular_hist.counts())},
        {"radial_modes", modes},
    };
    files.write_manifest("appearance", s, summary);
    out << "i-axis peaks: " << summary["i_peaks"] << "\nq-axis peaks: " << summary["q_peaks"]
        << "\nangular peaks: " << summary["angular_peaks"] << '\n';
    return 0;
}

int cmd_demo(const Flags& f, std::ostream& out) {
    const Settings s = resolve(f, Command::demo);
    OutputSet files(prepare_output_dir(f), out);
    json summary = json::object();
    for (auto [name, scheme] : {std::pair{"square", Scheme::square_qam}, std::pair{"circular", Scheme::circular_qam}}) {
        RunConfig cfg = s.run;
        cfg.scheme = scheme;

        const auto by_beta = sweep_beta(cfg, s.betas, f.threads);
        const std::string beta_stem = std::string(name) + "_per_vs_beta";
        files.write(beta_stem + ".csv", results_csv(by_beta));
        files.write(beta_stem + ".svg", per_svg(by_beta, beta_title(cfg), "blatancy"));
        summary[beta_stem] = waterfall_summary(by_beta);

        const auto by_snr = sweep_snr(cfg, s.snrs, f.threads);
        const std::string snr_stem = std::string(name) + "_per_vs_snr";
        files.write(snr_stem + ".csv", results_csv(by_snr));
        files.write(snr_stem + ".svg", per_svg(by_snr, snr_title(cfg), "SNR (dB)"));
        summary[snr_stem] = waterfall_summary(by_snr);
        print_waterfalls(out, std::string(name) + " ", by_snr, " dB");
    }
    files.write_manifest("demo", s, summary);
    return 0;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Covert constellation modem simulator", "radiosteg"};
    app.set_version_flag("--version", RADIOSTEG_VERSION);
    app.require_subcommand(1);
    app.footer(kFooter);

    Flags f;
    auto* constellation = app.add_subcommand("constellation", "Print the secret constellation as CSV");
    add_model_flags(*constellation, f);
    constellation->add_option("--config", f.config, "JSON run configuration or manifest");

    auto* sweep_beta = app.add_subcommand("sweep-beta", "Packet error rate against blatancy at a fixed SNR");
    add_model_flags(*sweep_beta, f);
    add_channel_flags(*sweep_beta, f);
    add_run_flags(*sweep_beta, f);
    add_io_flags(*sweep_beta, f);
    sweep_beta->add_option("--snr", f.snr, "SNR in dB (default 25)");
    sweep_beta->add_option("--betas", f.betas, "Blatancy grid lo:hi:step (default 0:1:0.05)");

    auto* sweep_snr = app.add_subcommand("sweep-snr", "Packet error rate against SNR at a fixed blatancy");
    add_model_flags(*sweep_snr, f);
    add_channel_flags(*sweep_snr, f);
    add_run_flags(*sweep_snr, f);
    add_io_flags(*sweep_snr, f);
    sweep_snr->add_option("--snr", f.snr, "SNR grid lo:hi:step or a single value (default 0:40:1)");

    auto* appearance = app.add_subcommand("appearance", "Received scatter and per-axis histograms");
    add_model_flags(*appearance, f);
    add_channel_flags(*appearance, f);
    add_io_flags(*appearance, f);
    appearance->add_option("--snr", f.snr, "SNR in dB (default 25)");
    appearance->add_option("--symbols", f.symbols, "Number of symbols (default 16384)");

    auto* demo = app.add_subcommand("demo", "PER against blatancy and SNR for square and circular schemes");
    add_model_flags(*demo, f, false);
    add_channel_flags(*demo, f);
    add_run_flags(*demo, f);
    add_io_flags(*demo, f);
    demo->add_option("--snr", f.snr, "SNR grid for the SNR sweeps (default 0:40:1)");
    demo->add_option("--betas", f.betas, "Blatancy grid for the blatancy sweeps (default 0:1:0.05)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (constellation->parsed()) return cmd_constellation(f, out);
        if (sweep_beta->parsed()) return cmd_sweep(f, Command::sweep_beta, out);
        if (sweep_snr->parsed()) return cmd_sweep(f, Command::sweep_snr, out);
        if (appearance->parsed()) return cmd_appearance(f, out);
        return cmd_demo(f, out);
    } catch (const ParameterError& e) {
        err << "radiosteg: " << e.what() << "\nRun with --help for more information.\n";
        return 2;
    } catch (const std::exception& e) {
        err << "radiosteg: " << e.what() << '\n';
        return 1;
    }
}

} // namespace radiosteg::cli
