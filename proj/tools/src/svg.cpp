#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace opamech::tools {

namespace {

constexpr double kWidth = 800.0, kHeight = 500.0;
constexpr double kLeft = 80.0, kRight = 30.0, kTop = 50.0, kBottom = 60.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v, const char* spec = "%.2f") {
    char buf[48];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label, std::span<const Series> series) {
    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            x_min = std::min(x_min, s.x[i]);
            x_max = std::max(x_max, s.x[i]);
            y_min = std::min(y_min, s.y[i]);
            y_max = std::max(y_max, s.y[i]);
        }
    if (!std::isfinite(x_min) || !std::isfinite(y_min))
        throw std::invalid_argument("render_line_chart: no finite data");
    if (x_max == x_min) { x_max += 0.5; x_min -= 0.5; }
    if (y_max == y_min) { y_max += 0.5; y_min -= 0.5; }

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double y) { return kTop + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" "
           "font-family=\"monospace\" font-size=\"16\">" << xml_escape(title) << "</text>\n";

    // axes
    svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
    constexpr int kTicks = 6;
    for (int i = 0; i < kTicks; ++i) {
        const double tx = x_min + (x_max - x_min) * i / (kTicks - 1);
        const double ty = y_min + (y_max - y_min) * i / (kTicks - 1);
        svg << "<line x1=\"" << fmt(px(tx)) << "\" y1=\"" << kTop + plot_h << "\" x2=\""
            << fmt(px(tx)) << "\" y2=\"" << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fmt(px(tx)) << "\" y=\"" << kTop + plot_h + 20
            << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">"
            << fmt(tx, "%.4g") << "</text>\n"
            << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fmt(py(ty)) << "\" x2=\"" << kLeft
            << "\" y2=\"" << fmt(py(ty)) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt(py(ty) + 4)
            << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">"
            << fmt(ty, "%.4g") << "</text>\n";
    }
    svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\">"
        << xml_escape(x_label) << "</text>\n"
        << "<text x=\"18\" y=\"" << kTop + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\" "
           "transform=\"rotate(-90 18 " << kTop + plot_h / 2 << ")\">"
        << xml_escape(y_label) << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        std::string points;
        auto flush = [&]() {
            if (!points.empty()) {
                svg << "<polyline fill=\"none\" stroke=\"" << color
                    << "\" stroke-width=\"1.5\" points=\"" << points << "\"/>\n";
                points.clear();
            }
        };
        const auto& sr = series[s];
        for (std::size_t i = 0; i < sr.x.size() && i < sr.y.size(); ++i) {
            if (!std::isfinite(sr.x[i]) || !std::isfinite(sr.y[i])) { flush(); continue; }
            points += fmt(px(sr.x[i])) + "," + fmt(py(sr.y[i])) + " ";
        }
        flush();
        const double ly = kTop + 16.0 + 18.0 * static_cast<double>(s);
        svg << "<line x1=\"" << kLeft + plot_w - 150 << "\" y1=\"" << ly << "\" x2=\""
            << kLeft + plot_w - 120 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"/>\n"
            << "<text x=\"" << kLeft + plot_w - 114 << "\" y=\"" << ly + 4
            << "\" font-family=\"monospace\" font-size=\"12\">" << xml_escape(sr.label)
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      std::span<const Series> series) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << render_line_chart(title, x_label, y_label, series);
}

} // namespace opamech::tools
