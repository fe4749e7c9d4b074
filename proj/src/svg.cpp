#include "frex/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace frex::svg {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 24, kTop = 40, kBottom = 56;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Axis {
    bool log = false;
    double lo = 0.0, hi = 1.0;

    double map(double v, double pix_lo, double pix_hi) const {
        double t = log ? (std::log10(v) - lo) / (hi - lo) : (v - lo) / (hi - lo);
        return pix_lo + t * (pix_hi - pix_lo);
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// Tick positions: decades for log axes, ~6 round steps otherwise.
std::vector<double> ticks(const Axis& ax) {
    std::vector<double> out;
    if (ax.log) {
        for (int e = static_cast<int>(std::floor(ax.lo)); e <= std::ceil(ax.hi); ++e)
            if (e >= ax.lo - 1e-9 && e <= ax.hi + 1e-9) out.push_back(std::pow(10.0, e));
        if (out.size() < 2) {
            out.clear();
            out.push_back(std::pow(10.0, ax.lo));
            out.push_back(std::pow(10.0, ax.hi));
        }
        return out;
    }
    double span = ax.hi - ax.lo;
    if (span <= 0) return {ax.lo};
    double raw = span / 6.0;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    double first = std::ceil(ax.lo / step) * step;
    for (double v = first; v <= ax.hi + step * 1e-9; v += step) out.push_back(v);
    return out;
}

}  // namespace

void write_svg(const std::string& path, const Plot& plot) {
    Axis xa{plot.logx}, ya{plot.logy};
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : plot.series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double x = s.x[i], y = s.y[i];
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (plot.logx && !(x > 0)) continue;
            if (plot.logy && !(y > 0)) continue;
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!(xmin <= xmax) || !(ymin <= ymax)) {
        xmin = plot.logx ? 1.0 : 0.0;
        xmax = plot.logx ? 10.0 : 1.0;
        ymin = plot.logy ? 1.0 : 0.0;
        ymax = plot.logy ? 10.0 : 1.0;
    }
    if (xmin == xmax) xmax = plot.logx ? xmin * 10 : xmin + 1;
    if (ymin == ymax) ymax = plot.logy ? ymin * 10 : ymin + 1;
    xa.lo = plot.logx ? std::log10(xmin) : xmin;
    xa.hi = plot.logx ? std::log10(xmax) : xmax;
    ya.lo = plot.logy ? std::log10(ymin) : ymin;
    ya.hi = plot.logy ? std::log10(ymax) : ymax;
    if (!plot.logx) {
        double pad = 0.03 * (xa.hi - xa.lo);
        xa.lo -= pad;
        xa.hi += pad;
    }
    double pady = 0.05 * (ya.hi - ya.lo);
    ya.lo -= pady;
    ya.hi += pady;

    auto px = [&](double v) { return xa.map(v, kLeft, kWidth - kRight); };
    auto py = [&](double v) { return ya.map(v, kHeight - kBottom, kTop); };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("svg: cannot open " + path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='"
        << kHeight << "' viewBox='0 0 " << kWidth << " " << kHeight << "'>\n"
        << "<rect width='100%' height='100%' fill='white'/>\n"
        << "<text x='" << kWidth / 2 << "' y='24' text-anchor='middle' font-size='16' "
        << "font-family='sans-serif'>" << plot.title << "</text>\n";

    // frame and ticks
    out << "<rect x='" << kLeft << "' y='" << kTop << "' width='" << kWidth - kLeft - kRight
        << "' height='" << kHeight - kTop - kBottom
        << "' fill='none' stroke='#333' stroke-width='1'/>\n";
    for (double v : ticks(xa)) {
        double x = px(v);
        out << "<line x1='" << x << "' y1='" << kHeight - kBottom << "' x2='" << x << "' y2='"
            << kTop << "' stroke='#ddd'/>\n"
            << "<text x='" << x << "' y='" << kHeight - kBottom + 18
            << "' text-anchor='middle' font-size='11' font-family='sans-serif'>" << fmt(v)
            << "</text>\n";
    }
    for (double v : ticks(ya)) {
        double y = py(v);
        out << "<line x1='" << kLeft << "' y1='" << y << "' x2='" << kWidth - kRight << "' y2='"
            << y << "' stroke='#ddd'/>\n"
            << "<text x='" << kLeft - 6 << "' y='" << y + 4
            << "' text-anchor='end' font-size='11' font-family='sans-serif'>" << fmt(v)
            << "</text>\n";
    }
    out << "<text x='" << (kLeft + kWidth - kRight) / 2 << "' y='" << kHeight - 12
        << "' text-anchor='middle' font-size='13' font-family='sans-serif'>" << plot.xlabel
        << "</text>\n"
        << "<text x='18' y='" << (kTop + kHeight - kBottom) / 2
        << "' text-anchor='middle' font-size='13' font-family='sans-serif' transform='rotate(-90 18 "
        << (kTop + kHeight - kBottom) / 2 << ")'>" << plot.ylabel << "</text>\n";

    // reference lines span the full x range
    for (const auto& r : plot.ref_lines) {
        double x1 = plot.logx ? std::pow(10.0, xa.lo) : xa.lo;
        double x2 = plot.logx ? std::pow(10.0, xa.hi) : xa.hi;
        auto eval = [&](double x) {
            if (plot.logx && plot.logy) return r.y0 * std::pow(x / r.x0, r.slope);
            return r.y0 + r.slope * (x - r.x0);
        };
        out << "<line x1='" << px(x1) << "' y1='" << py(eval(x1)) << "' x2='" << px(x2)
            << "' y2='" << py(eval(x2))
            << "' stroke='#888' stroke-width='1' stroke-dasharray='6 3'/>\n";
        if (!r.label.empty())
            out << "<text x='" << px(x2) - 4 << "' y='" << py(eval(x2)) - 6
                << "' text-anchor='end' font-size='11' font-family='sans-serif' fill='#666'>"
                << r.label << "</text>\n";
    }

    int ci = 0;
    double ly = kTop + 14;
    for (const auto& s : plot.series) {
        std::string color = s.color.empty() ? kPalette[ci % 8] : s.color;
        out << "<polyline fill='none' stroke='" << color << "' stroke-width='1.6'"
            << (s.dashed ? " stroke-dasharray='5 4'" : "") << " points='";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double x = s.x[i], y = s.y[i];
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (plot.logx && !(x > 0)) continue;
            if (plot.logy && !(y > 0)) continue;
            out << px(x) << "," << py(y) << " ";
        }
        out << "'/>\n";
        if (!s.label.empty()) {
            out << "<line x1='" << kWidth - kRight - 130 << "' y1='" << ly << "' x2='"
                << kWidth - kRight - 110 << "' y2='" << ly << "' stroke='" << color
                << "' stroke-width='2'/>\n"
                << "<text x='" << kWidth - kRight - 104 << "' y='" << ly + 4
                << "' font-size='11' font-family='sans-serif'>" << s.label << "</text>\n";
            ly += 16;
        }
        ++ci;
    }
    out << "</svg>\n";
}

}  // namespace frex::svg
