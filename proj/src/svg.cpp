#include "pwt/svg.hpp"

#include "pwt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace pwt {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 520;
constexpr int kMarginL = 70;
constexpr int kMarginR = 30;
constexpr int kMarginT = 44;
constexpr int kMarginB = 56;

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string tick_label(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// Piecewise-linear approximation of a perceptually ordered colormap.
struct Rgb {
    double r, g, b;
};

Rgb colormap(double t) {
    static const Rgb anchors[] = {
        {0.267, 0.005, 0.329}, {0.283, 0.141, 0.458}, {0.254, 0.265, 0.530},
        {0.207, 0.372, 0.553}, {0.164, 0.471, 0.558}, {0.128, 0.567, 0.551},
        {0.135, 0.659, 0.518}, {0.267, 0.749, 0.441}, {0.478, 0.821, 0.318},
        {0.741, 0.873, 0.150}, {0.993, 0.906, 0.144}};
    t = std::clamp(t, 0.0, 1.0);
    double u = t * 10.0;
    int i = std::min(static_cast<int>(u), 9);
    double f = u - i;
    Rgb a = anchors[i], b = anchors[i + 1];
    return {a.r + f * (b.r - a.r), a.g + f * (b.g - a.g), a.b + f * (b.b - a.b)};
}

std::string color_hex(const Rgb& c) {
    char buf[8];
    auto ch = [](double v) {
        int x = static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
        return x;
    };
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", ch(c.r), ch(c.g), ch(c.b));
    return buf;
}

const char* kSeriesColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                               "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string svg_open() {
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"";
    s += std::to_string(kWidth);
    s += "\" height=\"";
    s += std::to_string(kHeight);
    s += "\" viewBox=\"0 0 " + std::to_string(kWidth) + " " + std::to_string(kHeight) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return s;
}

std::string text_el(double x, double y, const std::string& body, const std::string& attrs) {
    std::string s = "<text x=\"" + fmt("%.2f", x) + "\" y=\"" + fmt("%.2f", y) + "\" " + attrs +
                    " font-family=\"sans-serif\">" + body + "</text>\n";
    return s;
}

struct Frame {
    double px0, px1, py0, py1; // pixel corners (py0 bottom)
    double x0, x1, y0, y1;     // data ranges

    double px(double x) const { return px0 + (x - x0) / (x1 - x0) * (px1 - px0); }
    double py(double y) const { return py0 - (y - y0) / (y1 - y0) * (py0 - py1); }
};

std::string draw_axes(const Frame& fr, const SvgAxes& axes) {
    std::string s;
    s += "<rect x=\"" + fmt("%.2f", fr.px0) + "\" y=\"" + fmt("%.2f", fr.py1) + "\" width=\"" +
         fmt("%.2f", fr.px1 - fr.px0) + "\" height=\"" + fmt("%.2f", fr.py0 - fr.py1) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        double xv = fr.x0 + (fr.x1 - fr.x0) * i / 4.0;
        double yv = fr.y0 + (fr.y1 - fr.y0) * i / 4.0;
        double px = fr.px(xv), py = fr.py(yv);
        s += "<line x1=\"" + fmt("%.2f", px) + "\" y1=\"" + fmt("%.2f", fr.py0) + "\" x2=\"" +
             fmt("%.2f", px) + "\" y2=\"" + fmt("%.2f", fr.py0 + 5) +
             "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        s += text_el(px, fr.py0 + 20, tick_label(xv),
                     "text-anchor=\"middle\" font-size=\"12\"");
        s += "<line x1=\"" + fmt("%.2f", fr.px0 - 5) + "\" y1=\"" + fmt("%.2f", py) + "\" x2=\"" +
             fmt("%.2f", fr.px0) + "\" y2=\"" + fmt("%.2f", py) +
             "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        s += text_el(fr.px0 - 9, py + 4, tick_label(yv),
                     "text-anchor=\"end\" font-size=\"12\"");
    }
    s += text_el((fr.px0 + fr.px1) / 2, kHeight - 12, axes.xlabel,
                 "text-anchor=\"middle\" font-size=\"14\"");
    s += "<text x=\"18\" y=\"" + fmt("%.2f", (fr.py0 + fr.py1) / 2) +
         "\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\" transform=\"rotate(-90 18 " +
         fmt("%.2f", (fr.py0 + fr.py1) / 2) + ")\">" + axes.ylabel + "</text>\n";
    s += text_el((fr.px0 + fr.px1) / 2, 24, axes.title,
                 "text-anchor=\"middle\" font-size=\"16\" font-weight=\"bold\"");
    return s;
}

} // namespace

std::string svg_heatmap(const std::vector<std::vector<double>>& values, double x0, double x1,
                        double y0, double y1, const SvgAxes& axes) {
    if (values.empty() || values.front().empty()) throw UsageError("heatmap needs data");
    std::size_t rows = values.size(), cols = values.front().size();
    for (const auto& r : values)
        if (r.size() != cols) throw UsageError("heatmap rows must have equal length");

    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& r : values)
        for (double v : r) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (!(hi > lo)) hi = lo + 1.0;

    Frame fr{kMarginL, kWidth - kMarginR - 60.0, kHeight - static_cast<double>(kMarginB),
             static_cast<double>(kMarginT), x0, x1, y0, y1};
    std::string s = svg_open();
    double cw = (fr.px1 - fr.px0) / cols;
    double chh = (fr.py0 - fr.py1) / rows;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            double t = (values[i][j] - lo) / (hi - lo);
            double px = fr.px0 + j * cw;
            double py = fr.py0 - (i + 1) * chh;
            s += "<rect x=\"" + fmt("%.2f", px) + "\" y=\"" + fmt("%.2f", py) + "\" width=\"" +
                 fmt("%.2f", cw + 0.5) + "\" height=\"" + fmt("%.2f", chh + 0.5) + "\" fill=\"" +
                 color_hex(colormap(t)) + "\"/>\n";
        }
    }
    s += draw_axes(fr, axes);

    // Color bar.
    double bx = kWidth - kMarginR - 40.0;
    for (int i = 0; i < 64; ++i) {
        double py = fr.py0 - (i + 1) * (fr.py0 - fr.py1) / 64.0;
        s += "<rect x=\"" + fmt("%.2f", bx) + "\" y=\"" + fmt("%.2f", py) +
             "\" width=\"16\" height=\"" + fmt("%.2f", (fr.py0 - fr.py1) / 64.0 + 0.5) +
             "\" fill=\"" + color_hex(colormap((i + 0.5) / 64.0)) + "\"/>\n";
    }
    s += text_el(bx + 8, fr.py0 + 16, tick_label(lo), "text-anchor=\"middle\" font-size=\"11\"");
    s += text_el(bx + 8, fr.py1 - 6, tick_label(hi), "text-anchor=\"middle\" font-size=\"11\"");
    s += "</svg>\n";
    return s;
}

std::string svg_line_plot(const std::vector<double>& x,
                          const std::vector<std::vector<double>>& series,
                          const std::vector<std::string>& labels, const SvgAxes& axes) {
    if (x.size() < 2 || series.empty()) throw UsageError("line plot needs data");
    for (const auto& sset : series)
        if (sset.size() != x.size()) throw UsageError("series length must match abscissa");

    double ylo = std::numeric_limits<double>::infinity(), yhi = -ylo;
    for (const auto& sset : series)
        for (double v : sset) {
            ylo = std::min(ylo, v);
            yhi = std::max(yhi, v);
        }
    if (!(yhi > ylo)) yhi = ylo + 1.0;
    double pad = 0.05 * (yhi - ylo);

    Frame fr{kMarginL, kWidth - static_cast<double>(kMarginR),
             kHeight - static_cast<double>(kMarginB), static_cast<double>(kMarginT),
             x.front(), x.back(), ylo - pad, yhi + pad};
    std::string s = svg_open();
    s += draw_axes(fr, axes);
    for (std::size_t k = 0; k < series.size(); ++k) {
        std::string pts;
        for (std::size_t i = 0; i < x.size(); ++i) {
            pts += fmt("%.2f", fr.px(x[i]));
            pts += ',';
            pts += fmt("%.2f", fr.py(series[k][i]));
            if (i + 1 < x.size()) pts += ' ';
        }
        s += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" +
             kSeriesColors[k % 8] + "\" stroke-width=\"1.5\"/>\n";
        if (k < labels.size()) {
            double ly = kMarginT + 18.0 + 16.0 * k;
            s += "<line x1=\"" + fmt("%.2f", fr.px1 - 150.0) + "\" y1=\"" + fmt("%.2f", ly - 4) +
                 "\" x2=\"" + fmt("%.2f", fr.px1 - 126.0) + "\" y2=\"" + fmt("%.2f", ly - 4) +
                 "\" stroke=\"" + kSeriesColors[k % 8] + "\" stroke-width=\"2\"/>\n";
            s += text_el(fr.px1 - 120.0, ly, labels[k], "text-anchor=\"start\" font-size=\"12\"");
        }
    }
    s += "</svg>\n";
    return s;
}

} // namespace pwt
