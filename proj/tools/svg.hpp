#pragma once

#include <radiosteg/appearance.hpp>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace radiosteg::svg {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

/// Line chart with markers; y axis fixed to [0, 1].
std::string per_chart(std::string_view title, std::string_view x_label, std::span<const Series> series);

/// Scatter of received points with I and Q marginal histograms.
std::string appearance_chart(std::string_view title, const AppearanceData& data);

} // namespace radiosteg::svg
