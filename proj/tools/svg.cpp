#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>

namespace radiosteg::svg {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

struct Frame {
    double left, top, width, height;
    double x_lo, x_hi, y_lo, y_hi;

    double px(double x) const { return left + (x - x_lo) / (x_hi - x_lo) * width; }
    double py(double y) const { return top + height - (y - y_lo) / (y_hi - y_lo) * height; }
};

void header(std::ostringstream& os, int w, int h) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
       << ' ' << h << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void text(std::ostringstream& os, double x, double y, std::string_view s, const char* anchor = "middle",
          const char* extra = "") {
    os << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor << "\"" << extra << '>'
       << escape(s) << "</text>\n";
}

void axes(std::ostringstream& os, const Frame& f, int x_ticks, int y_ticks) {
    os << "<rect x=\"" << num(f.left) << "\" y=\"" << num(f.top) << "\" width=\"" << num(f.width) << "\" height=\""
       << num(f.height) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= x_ticks; ++i) {
        const double v = f.x_lo + (f.x_hi - f.x_lo) * i / x_ticks;
        const double x = f.px(v);
        os << "<line x1=\"" << num(x) << "\" y1=\"" << num(f.top) << "\" x2=\"" << num(x) << "\" y2=\""
           << num(f.top + f.height) << "\" stroke=\"#ddd\"/>\n";
        text(os, x, f.top + f.height + 16, tick_label(v));
    }
    for (int i = 0; i <= y_ticks; ++i) {
        const double v = f.y_lo + (f.y_hi - f.y_lo) * i / y_ticks;
        const double y = f.py(v);
        os << "<line x1=\"" << num(f.left) << "\" y1=\"" << num(y) << "\" x2=\"" << num(f.left + f.width) << "\" y2=\""
           << num(y) << "\" stroke=\"#ddd\"/>\n";
        text(os, f.left - 6, y + 4, tick_label(v), "end");
    }
}

// Marginal histogram in the box at (x0, y0). Horizontal bars run along x and
// grow upwards; vertical ones run up the y axis and grow to the right.
void bars(std::ostringstream& os, const Histogram& h, double x0, double y0, double length, double depth,
          bool horizontal) {
    const auto counts = h.counts();
    const auto peak = std::max<std::uint64_t>(1, *std::max_element(counts.begin(), counts.end()));
    const double step = length / static_cast<double>(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double extent = depth * static_cast<double>(counts[i]) / static_cast<double>(peak);
        if (extent <= 0.0) continue;
        const double offset = static_cast<double>(i) * step;
        if (horizontal) {
            os << "<rect x=\"" << num(x0 + offset) << "\" y=\"" << num(y0 + depth - extent) << "\" width=\""
               << num(step) << "\" height=\"" << num(extent) << "\" fill=\"#1f77b4\"/>\n";
        } else {
            os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0 + length - offset - step) << "\" width=\""
               << num(extent) << "\" height=\"" << num(step) << "\" fill=\"#1f77b4\"/>\n";
        }
    }
}

} // namespace

std::string per_chart(std::string_view title, std::string_view x_label, std::span<const Series> series) {
    double x_lo = 0.0, x_hi = 1.0;
    bool first = true;
    for (const auto& s : series) {
        for (double x : s.x) {
            x_lo = first ? x : std::min(x_lo, x);
            x_hi = first ? x : std::max(x_hi, x);
            first = false;
        }
    }
    if (x_hi <= x_lo) x_hi = x_lo + 1.0;

    const Frame f{70, 40, 520, 300, x_lo, x_hi, 0.0, 1.0};
    std::ostringstream os;
    header(os, 640, 420);
    text(os, 320, 24, title, "middle", " font-size=\"15\"");
    axes(os, f, 8, 4);
    text(os, f.left + f.width / 2, f.top + f.height + 36, x_label);
    text(os, 18, f.top + f.height / 2, "PER", "middle", " transform=\"rotate(-90 18 190)\"");

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* colour = kPalette[k % std::size(kPalette)];
        os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) os << num(f.px(s.x[i])) << ',' << num(f.py(s.y[i])) << ' ';
        os << "\"/>\n";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            os << "<circle cx=\"" << num(f.px(s.x[i])) << "\" cy=\"" << num(f.py(s.y[i])) << "\" r=\"2.5\" fill=\""
               << colour << "\"/>\n";
        }
        const double ly = f.top + 16 + 18.0 * static_cast<double>(k);
        os << "<line x1=\"" << num(f.left + f.width - 110) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
           << num(f.left + f.width - 90) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << colour
           << "\" stroke-width=\"2\"/>\n";
        text(os, f.left + f.width - 84, ly, s.name, "start");
    }
    os << "</svg>\n";
    return os.str();
}

std::string appearance_chart(std::string_view title, const AppearanceData& data) {
    constexpr double side = 400.0;
    constexpr double hist_depth = 70.0;
    const double lim = kAxisHistogramLimit;
    const Frame f{60, 40 + hist_depth + 10, side, side, -lim, lim, -lim, lim};

    std::ostringstream os;
    header(os, 600, 580);
    text(os, 300, 24, title, "middle", " font-size=\"15\"");
    bars(os, data.i_hist, f.left, 40, side, hist_depth, true);
    bars(os, data.q_hist, f.left + side + 10, f.top, side, hist_depth, false);
    axes(os, f, 8, 8);
    text(os, f.left + side / 2, f.top + side + 36, "I");
    text(os, 20, f.top + side / 2, "Q");

    const std::size_t stride = std::max<std::size_t>(1, data.points.size() / 8000);
    os << "<g fill=\"#d62728\" fill-opacity=\"0.35\">\n";
    for (std::size_t i = 0; i < data.points.size(); i += stride) {
        const auto p = data.points[i];
        if (std::abs(p.real()) >= lim || std::abs(p.imag()) >= lim) continue;
        os << "<circle cx=\"" << num(f.px(p.real())) << "\" cy=\"" << num(f.py(p.imag())) << "\" r=\"1.2\"/>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

} // namespace radiosteg::svg
