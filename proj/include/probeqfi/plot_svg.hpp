// plot_svg.hpp — Minimal SVG line plots (polyline, linear/log axes, legend); CSV stays the artifact of record

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace probeqfi {

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

namespace detail {

inline std::string svg_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string tick_label(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

} // namespace detail

// Renders the series into an SVG string. Log y-axis is used when requested
// and every finite sample is positive.
inline std::string render_svg_plot(const std::vector<SvgSeries>& series, const std::string& title,
                                   const std::string& x_label, bool log_y) {
    static const char* palette[] = {"#000000", "#c0392b", "#2b5fc0", "#1e8e3e",
                                    "#8e44ad", "#d68910", "#148f77", "#7f8c8d"};
    const double width = 840, height = 520;
    const double ml = 86, mr = 24, mt = 42, mb = 62;

    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool any = false;
    bool all_positive = true;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            if (!any) {
                xmin = xmax = s.x[i];
                ymin = ymax = s.y[i];
                any = true;
            }
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
            if (!(s.y[i] > 0.0)) all_positive = false;
        }
    const bool uselog = log_y && all_positive && any && ymax > ymin;
    if (uselog) {
        ymin = std::log10(ymin);
        ymax = std::log10(ymax);
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;

    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto py = [&](double y) {
        const double v = uselog ? std::log10(y) : y;
        return height - mb - (v - ymin) / (ymax - ymin) * (height - mt - mb);
    };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::svg_num(width)
         + "\" height=\"" + detail::svg_num(height) + "\" font-family=\"sans-serif\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + detail::svg_num(width / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
         + title + "</text>\n";

    // frame
    out += "<rect x=\"" + detail::svg_num(ml) + "\" y=\"" + detail::svg_num(mt) + "\" width=\""
         + detail::svg_num(width - ml - mr) + "\" height=\"" + detail::svg_num(height - mt - mb)
         + "\" fill=\"none\" stroke=\"#333\"/>\n";

    // ticks
    for (int k = 0; k <= 5; ++k) {
        const double fx = xmin + (xmax - xmin) * k / 5.0;
        const double gx = px(fx);
        out += "<line x1=\"" + detail::svg_num(gx) + "\" y1=\"" + detail::svg_num(height - mb)
             + "\" x2=\"" + detail::svg_num(gx) + "\" y2=\"" + detail::svg_num(height - mb + 5)
             + "\" stroke=\"#333\"/>\n";
        out += "<text x=\"" + detail::svg_num(gx) + "\" y=\"" + detail::svg_num(height - mb + 20)
             + "\" text-anchor=\"middle\" font-size=\"12\">" + detail::tick_label(fx) + "</text>\n";

        const double fy = ymin + (ymax - ymin) * k / 5.0;
        const double vy = uselog ? std::pow(10.0, fy) : fy;
        const double gy = height - mb - (fy - ymin) / (ymax - ymin) * (height - mt - mb);
        out += "<line x1=\"" + detail::svg_num(ml - 5) + "\" y1=\"" + detail::svg_num(gy) + "\" x2=\""
             + detail::svg_num(ml) + "\" y2=\"" + detail::svg_num(gy) + "\" stroke=\"#333\"/>\n";
        out += "<text x=\"" + detail::svg_num(ml - 8) + "\" y=\"" + detail::svg_num(gy + 4)
             + "\" text-anchor=\"end\" font-size=\"12\">" + detail::tick_label(vy) + "</text>\n";
    }
    out += "<text x=\"" + detail::svg_num(ml + (width - ml - mr) / 2) + "\" y=\""
         + detail::svg_num(height - 16) + "\" text-anchor=\"middle\" font-size=\"13\">" + x_label
         + "</text>\n";

    // curves
    std::size_t ci = 0;
    for (const auto& s : series) {
        std::string pts;
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            if (uselog && !(s.y[i] > 0.0)) continue;
            pts += detail::svg_num(px(s.x[i])) + "," + detail::svg_num(py(s.y[i])) + " ";
        }
        const char* color = palette[ci % (sizeof palette / sizeof *palette)];
        out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color
             + "\" stroke-width=\"1.8\"/>\n";
        const double ly = mt + 18.0 * (static_cast<double>(ci) + 1.0);
        out += "<line x1=\"" + detail::svg_num(width - mr - 150) + "\" y1=\"" + detail::svg_num(ly)
             + "\" x2=\"" + detail::svg_num(width - mr - 124) + "\" y2=\"" + detail::svg_num(ly)
             + "\" stroke=\"" + color + "\" stroke-width=\"1.8\"/>\n";
        out += "<text x=\"" + detail::svg_num(width - mr - 118) + "\" y=\"" + detail::svg_num(ly + 4)
             + "\" font-size=\"12\">" + s.label + "</text>\n";
        ++ci;
    }
    out += "</svg>\n";
    return out;
}

} // namespace probeqfi
