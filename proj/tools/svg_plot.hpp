#pragma once

#include <string>
#include <vector>

namespace episource::cli {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> yerr;  // half-width error bars; may be empty
};

/// Renders rank-versus-size line charts as a self-contained SVG: one polyline
/// with point markers and error bars per series, linear axes with ticks, and
/// a legend.
std::string render_line_chart(const std::vector<PlotSeries>& series, const std::string& title,
                              const std::string& x_label, const std::string& y_label);

} // namespace episource::cli
