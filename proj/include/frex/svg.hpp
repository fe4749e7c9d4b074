#pragma once

#include <string>
#include <vector>

namespace frex::svg {

struct Series {
    std::string label;
    std::vector<double> x, y;
    std::string color = "#1f77b4";
    bool dashed = false;
};

/// Straight guide line through (x0, y0); in log-log plots the slope is the
/// power-law exponent.
struct RefLine {
    double slope = 0.0;
    double x0 = 1.0, y0 = 1.0;
    std::string label;
};

struct Plot {
    std::string title, xlabel, ylabel;
    bool logx = false, logy = false;
    std::vector<Series> series;
    std::vector<RefLine> ref_lines;
};

/// Self-contained SVG line plot; no external dependencies.
void write_svg(const std::string& path, const Plot& plot);

}  // namespace frex::svg
