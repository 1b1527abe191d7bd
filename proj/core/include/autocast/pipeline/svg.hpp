#pragma once

#include <string>
#include <vector>

namespace autocast::pipeline {

struct SvgPanel {
    std::string title;
    std::vector<double> values;
};

/// Vertically stacked line charts sharing one x axis.
std::string stacked_lines_svg(const std::string& title, const std::vector<SvgPanel>& panels);

struct BoxGroup {
    std::string label;
    std::vector<double> values;
};

/// Box plots (quartiles, 1.5 IQR whiskers); values above `clip` are drawn at the clip line.
std::string boxplot_svg(const std::string& title, const std::vector<BoxGroup>& groups, double clip,
                        double reference_line = 1.0);

/// Linear-interpolation quantile (type 7) of unsorted values.
double quantile(std::vector<double> values, double q);

} // namespace autocast::pipeline
