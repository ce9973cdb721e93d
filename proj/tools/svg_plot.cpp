#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace episource::cli {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Round tick step to 1/2/5 times a power of ten.
double nice_step(double span, int target_ticks) {
    if (span <= 0.0) return 1.0;
    const double raw = span / target_ticks;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= mult * mag) return mult * mag;
    }
    return 10.0 * mag;
}

} // namespace

std::string render_line_chart(const std::vector<PlotSeries>& series, const std::string& title,
                              const std::string& x_label, const std::string& y_label) {
    const double width = 760, height = 520;
    const double ml = 70, mr = 160, mt = 44, mb = 56;
    const double pw = width - ml - mr, ph = height - mt - mb;

    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool any = false;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double lo = s.y[i] - (i < s.yerr.size() ? s.yerr[i] : 0.0);
            const double hi = s.y[i] + (i < s.yerr.size() ? s.yerr[i] : 0.0);
            if (!any) {
                xmin = xmax = s.x[i];
                ymin = lo;
                ymax = hi;
                any = true;
            } else {
                xmin = std::min(xmin, s.x[i]);
                xmax = std::max(xmax, s.x[i]);
                ymin = std::min(ymin, lo);
                ymax = std::max(ymax, hi);
            }
        }
    }
    if (!any) {
        xmin = ymin = 0;
        xmax = ymax = 1;
    }
    if (xmax == xmin) xmax = xmin + 1;
    ymin = std::min(0.0, ymin);
    if (ymax == ymin) ymax = ymin + 1;
    ymax *= 1.05;

    auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    auto Y = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << ml + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // Axes and ticks.
    svg << "<g stroke=\"#333\" stroke-width=\"1\">\n"
        << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
        << mt + ph << "\"/>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
        << "\"/>\n</g>\n";
    const double xs = nice_step(xmax - xmin, 6), ys = nice_step(ymax - ymin, 6);
    svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (double xt = std::ceil(xmin / xs) * xs; xt <= xmax + 1e-9; xt += xs) {
        svg << "<line x1=\"" << X(xt) << "\" y1=\"" << mt + ph << "\" x2=\"" << X(xt) << "\" y2=\""
            << mt + ph + 5 << "\" stroke=\"#333\"/>\n"
            << "<text x=\"" << X(xt) << "\" y=\"" << mt + ph + 18
            << "\" text-anchor=\"middle\">" << fmt(xt) << "</text>\n";
    }
    for (double yt = std::ceil(ymin / ys) * ys; yt <= ymax + 1e-9; yt += ys) {
        svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << Y(yt) << "\" x2=\"" << ml << "\" y2=\""
            << Y(yt) << "\" stroke=\"#333\"/>\n"
            << "<line x1=\"" << ml << "\" y1=\"" << Y(yt) << "\" x2=\"" << ml + pw << "\" y2=\""
            << Y(yt) << "\" stroke=\"#eee\"/>\n"
            << "<text x=\"" << ml - 9 << "\" y=\"" << Y(yt) + 4 << "\" text-anchor=\"end\">"
            << fmt(yt) << "</text>\n";
    }
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 14
        << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n"
        << "<text x=\"18\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " << mt + ph / 2
        << ")\">" << y_label << "</text>\n</g>\n";

    // Series.
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % (sizeof kPalette / sizeof kPalette[0])];
        if (!s.x.empty()) {
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i)
                svg << X(s.x[i]) << ',' << Y(s.y[i]) << ' ';
            svg << "\"/>\n";
        }
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i < s.yerr.size() && s.yerr[i] > 0.0) {
                svg << "<line x1=\"" << X(s.x[i]) << "\" y1=\"" << Y(s.y[i] - s.yerr[i])
                    << "\" x2=\"" << X(s.x[i]) << "\" y2=\"" << Y(s.y[i] + s.yerr[i])
                    << "\" stroke=\"" << color << "\" stroke-width=\"1\"/>\n";
            }
            svg << "<circle cx=\"" << X(s.x[i]) << "\" cy=\"" << Y(s.y[i])
                << "\" r=\"2.6\" fill=\"" << color << "\"/>\n";
        }
        const double ly = mt + 16 + 18 * static_cast<double>(si);
        svg << "<line x1=\"" << ml + pw + 14 << "\" y1=\"" << ly - 4 << "\" x2=\"" << ml + pw + 38
            << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << ml + pw + 44 << "\" y=\"" << ly
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace episource::cli
