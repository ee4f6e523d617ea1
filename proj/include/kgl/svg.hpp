#pragma once

#include <string>
#include <utility>
#include <vector>

namespace kgl::svg {

struct Series {
    std::string label;
    std::string color;  // e.g. "#1f77b4"
    std::vector<std::pair<double, double>> points;
};

// Static 800x500 line chart with axes, ticks and a legend. Output bytes
// depend only on the inputs.
std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series);

}  // namespace kgl::svg
