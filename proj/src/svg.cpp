#include "kgl/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace kgl::svg {

namespace {

constexpr double kWidth = 800, kHeight = 500;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), pattern, v);
    return buf;
}

}  // namespace

std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series) {
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
    if (!(x_lo < x_hi)) {
        x_lo -= 1.0;
        x_hi += 1.0;
    }
    if (!(y_lo < y_hi)) {
        y_lo -= 1.0;
        y_hi += 1.0;
    }
    const double y_pad = 0.05 * (y_hi - y_lo);
    y_lo -= y_pad;
    y_hi += y_pad;

    auto px = [&](double x) {
        return kLeft + (x - x_lo) / (x_hi - x_lo) * (kWidth - kLeft - kRight);
    };
    auto py = [&](double y) {
        return kHeight - kBottom - (y - y_lo) / (y_hi - y_lo) * (kHeight - kTop - kBottom);
    };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
           "viewBox=\"0 0 800 500\">\n";
    out += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    out += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">" + title + "</text>\n";

    // axes
    out += "<line x1=\"" + fmt("%.2f", kLeft) + "\" y1=\"" + fmt("%.2f", kHeight - kBottom) +
           "\" x2=\"" + fmt("%.2f", kWidth - kRight) + "\" y2=\"" +
           fmt("%.2f", kHeight - kBottom) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + fmt("%.2f", kLeft) + "\" y1=\"" + fmt("%.2f", kTop) + "\" x2=\"" +
           fmt("%.2f", kLeft) + "\" y2=\"" + fmt("%.2f", kHeight - kBottom) +
           "\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double fx = x_lo + (x_hi - x_lo) * i / 5.0;
        const double fy = y_lo + (y_hi - y_lo) * i / 5.0;
        out += "<line x1=\"" + fmt("%.2f", px(fx)) + "\" y1=\"" +
               fmt("%.2f", kHeight - kBottom) + "\" x2=\"" + fmt("%.2f", px(fx)) +
               "\" y2=\"" + fmt("%.2f", kHeight - kBottom + 5) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + fmt("%.2f", px(fx)) + "\" y=\"" +
               fmt("%.2f", kHeight - kBottom + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               fmt("%.4g", fx) + "</text>\n";
        out += "<line x1=\"" + fmt("%.2f", kLeft - 5) + "\" y1=\"" + fmt("%.2f", py(fy)) +
               "\" x2=\"" + fmt("%.2f", kLeft) + "\" y2=\"" + fmt("%.2f", py(fy)) +
               "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + fmt("%.2f", kLeft - 8) + "\" y=\"" + fmt("%.2f", py(fy) + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               fmt("%.4g", fy) + "</text>\n";
    }

    out += "<text x=\"" + fmt("%.2f", (kLeft + kWidth - kRight) / 2) + "\" y=\"" +
           fmt("%.2f", kHeight - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + x_label +
           "</text>\n";
    out += "<text x=\"18\" y=\"" + fmt("%.2f", (kTop + kHeight - kBottom) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 " +
           fmt("%.2f", (kTop + kHeight - kBottom) / 2) + ")\">" + y_label + "</text>\n";

    double legend_y = kTop + 14;
    for (const auto& s : series) {
        out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (!first) out += ' ';
            out += fmt("%.2f", px(x)) + "," + fmt("%.2f", py(y));
            first = false;
        }
        out += "\"/>\n";
        out += "<line x1=\"" + fmt("%.2f", kWidth - 190) + "\" y1=\"" + fmt("%.2f", legend_y - 4) +
               "\" x2=\"" + fmt("%.2f", kWidth - 165) + "\" y2=\"" + fmt("%.2f", legend_y - 4) +
               "\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"/>\n";
        out += "<text x=\"" + fmt("%.2f", kWidth - 160) + "\" y=\"" + fmt("%.2f", legend_y) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + s.label + "</text>\n";
        legend_y += 16;
    }
    out += "</svg>\n";
    return out;
}

}  // namespace kgl::svg
