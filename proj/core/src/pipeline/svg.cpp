#include "autocast/pipeline/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace autocast::pipeline {

namespace {

constexpr double kWidth = 800.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& text) {
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

void header(std::ostringstream& os, double height, const std::string& title) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(height)
       << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(height) << "\" font-family=\"sans-serif\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << escape(title)
       << "</text>\n";
}

} // namespace

std::string stacked_lines_svg(const std::string& title, const std::vector<SvgPanel>& panels) {
    constexpr double panel_h = 150.0;
    constexpr double gap = 30.0;
    const double height = kTop + static_cast<double>(panels.size()) * (panel_h + gap) + 10.0;
    std::ostringstream os;
    header(os, height, title);
    const double plot_w = kWidth - kLeft - kRight;
    for (std::size_t p = 0; p < panels.size(); ++p) {
        const auto& panel = panels[p];
        const double y0 = kTop + static_cast<double>(p) * (panel_h + gap) + 16.0;
        os << "<text x=\"" << num(kLeft) << "\" y=\"" << num(y0 - 4) << "\" font-size=\"12\">" << escape(panel.title)
           << "</text>\n";
        os << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(y0) << "\" width=\"" << num(plot_w) << "\" height=\""
           << num(panel_h - 16) << "\" fill=\"none\" stroke=\"#999\"/>\n";
        if (panel.values.empty()) continue;
        auto [lo_it, hi_it] = std::minmax_element(panel.values.begin(), panel.values.end());
        double lo = *lo_it;
        double hi = *hi_it;
        if (hi - lo < 1e-12) {
            lo -= 1.0;
            hi += 1.0;
        }
        const double h = panel_h - 16.0;
        const auto x_of = [&](std::size_t i) {
            return panel.values.size() == 1
                       ? kLeft + plot_w / 2
                       : kLeft + plot_w * static_cast<double>(i) / static_cast<double>(panel.values.size() - 1);
        };
        const auto y_of = [&](double v) { return y0 + h - h * (v - lo) / (hi - lo); };
        os << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y0 + 10) << "\" text-anchor=\"end\" font-size=\"10\">"
           << num(hi) << "</text>\n";
        os << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y0 + h) << "\" text-anchor=\"end\" font-size=\"10\">"
           << num(lo) << "</text>\n";
        os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < panel.values.size(); ++i)
            os << (i ? " " : "") << num(x_of(i)) << ',' << num(y_of(panel.values[i]));
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::string boxplot_svg(const std::string& title, const std::vector<BoxGroup>& groups, double clip,
                        double reference_line) {
    constexpr double height = 420.0;
    constexpr double bottom = 50.0;
    const double plot_h = height - kTop - bottom;
    const double plot_w = kWidth - kLeft - kRight;
    std::ostringstream os;
    header(os, height, title);
    const auto y_of = [&](double v) { return kTop + plot_h - plot_h * std::clamp(v, 0.0, clip) / clip; };
    os << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(plot_w) << "\" height=\""
       << num(plot_h) << "\" fill=\"none\" stroke=\"#999\"/>\n";
    for (double tick = 0.0; tick <= clip + 1e-9; tick += 0.5)
        os << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y_of(tick) + 4)
           << "\" text-anchor=\"end\" font-size=\"10\">" << num(tick) << "</text>\n";
    os << "<line x1=\"" << num(kLeft) << "\" x2=\"" << num(kLeft + plot_w) << "\" y1=\"" << num(y_of(reference_line))
       << "\" y2=\"" << num(y_of(reference_line)) << "\" stroke=\"#d62728\" stroke-dasharray=\"4 3\"/>\n";

    const double slot = groups.empty() ? plot_w : plot_w / static_cast<double>(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const double cx = kLeft + slot * (static_cast<double>(g) + 0.5);
        const double half = std::min(40.0, slot * 0.3);
        os << "<text x=\"" << num(cx) << "\" y=\"" << num(kTop + plot_h + 18)
           << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(groups[g].label) << " (n="
           << groups[g].values.size() << ")</text>\n";
        if (groups[g].values.empty()) continue;
        const auto& v = groups[g].values;
        const double q1 = quantile(v, 0.25);
        const double med = quantile(v, 0.5);
        const double q3 = quantile(v, 0.75);
        const double iqr = q3 - q1;
        double lo = q1;
        double hi = q3;
        for (double x : v) {
            if (x >= q1 - 1.5 * iqr) lo = std::min(lo, x);
            if (x <= q3 + 1.5 * iqr) hi = std::max(hi, x);
        }
        os << "<line x1=\"" << num(cx) << "\" x2=\"" << num(cx) << "\" y1=\"" << num(y_of(lo)) << "\" y2=\""
           << num(y_of(hi)) << "\" stroke=\"black\"/>\n";
        os << "<rect x=\"" << num(cx - half) << "\" y=\"" << num(y_of(q3)) << "\" width=\"" << num(2 * half)
           << "\" height=\"" << num(y_of(q1) - y_of(q3)) << "\" fill=\"#aec7e8\" stroke=\"black\"/>\n";
        os << "<line x1=\"" << num(cx - half) << "\" x2=\"" << num(cx + half) << "\" y1=\"" << num(y_of(med))
           << "\" y2=\"" << num(y_of(med)) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        for (double x : v)
            if (x < q1 - 1.5 * iqr || x > q3 + 1.5 * iqr)
                os << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(y_of(x)) << "\" r=\"2.5\" fill=\""
                   << (x > clip ? "#d62728" : "black") << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace autocast::pipeline
