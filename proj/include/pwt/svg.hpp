#ifndef PWT_SVG_HPP
#define PWT_SVG_HPP

#include <string>
#include <vector>

namespace pwt {

// Minimal native SVG rendering: a cell heatmap and a multi-series line plot,
// both with axes, tick labels, and a title. Output is deterministic.

struct SvgAxes {
    std::string title;
    std::string xlabel;
    std::string ylabel;
};

// values[row][col]; row 0 is drawn at the bottom (t axis upward). The color
// scale spans [min, max] of the data.
std::string svg_heatmap(const std::vector<std::vector<double>>& values, double x0, double x1,
                        double y0, double y1, const SvgAxes& axes);

// One shared abscissa, any number of series; series are colored from a fixed
// palette and named in a legend.
std::string svg_line_plot(const std::vector<double>& x,
                          const std::vector<std::vector<double>>& series,
                          const std::vector<std::string>& labels, const SvgAxes& axes);

} // namespace pwt

#endif
