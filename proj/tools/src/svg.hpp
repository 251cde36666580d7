#ifndef OPAMECH_TOOLS_SVG_HPP
#define OPAMECH_TOOLS_SVG_HPP

#include <span>
#include <string>
#include <vector>

namespace opamech::tools {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Minimal deterministic line chart: polylines, axes with ticks, legend.
// NaN samples split the polyline. Throws std::invalid_argument when no
// finite data point exists.
std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label, std::span<const Series> series);

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      std::span<const Series> series);

} // namespace opamech::tools

#endif
