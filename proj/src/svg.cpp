#include "ionread/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ionread::svg {

namespace {

constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 35;
constexpr int kMarginBottom = 55;

struct Axis {
    double lo = 0.0, hi = 1.0;
    bool log = false;

    double map(double v, double pix_lo, double pix_hi) const {
        double u = log ? std::log10(v) : v;
        double a = log ? std::log10(lo) : lo;
        double b = log ? std::log10(hi) : hi;
        if (b == a) b = a + 1.0;
        return pix_lo + (u - a) / (b - a) * (pix_hi - pix_lo);
    }

    std::vector<double> ticks() const {
        std::vector<double> out;
        if (log) {
            const int e0 = static_cast<int>(std::floor(std::log10(lo)));
            const int e1 = static_cast<int>(std::ceil(std::log10(hi)));
            for (int e = e0; e <= e1; ++e) {
                const double v = std::pow(10.0, e);
                if (v >= lo * 0.999 && v <= hi * 1.001) out.push_back(v);
            }
        } else {
            const double span = hi - lo;
            const double step = std::pow(10.0, std::floor(std::log10(span / 4.0)));
            const double mult = span / step > 8 ? 2.0 : 1.0;
            for (double v = std::ceil(lo / (step * mult)) * step * mult; v <= hi;
                 v += step * mult)
                out.push_back(v);
        }
        return out;
    }
};

std::string fmt_tick(double v) {
    std::ostringstream ss;
    ss.precision(3);
    ss << v;
    return ss.str();
}

}  // namespace

std::string Plot::render() const {
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            const double x = s.xs[i], y = s.ys[i];
            if (log_x && x <= 0) continue;
            if (log_y && y <= 0) continue;
            x_lo = std::min(x_lo, x); x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, y); y_hi = std::max(y_hi, y);
        }
    }
    if (!(x_lo < x_hi)) { x_lo = log_x ? 0.1 : 0.0; x_hi = 1.0; }
    if (!(y_lo < y_hi)) { y_lo = log_y ? 0.1 : 0.0; y_hi = 1.0; }

    const Axis ax{x_lo, x_hi, log_x};
    const Axis ay{y_lo, y_hi, log_y};
    const double px0 = kMarginLeft, px1 = width - kMarginRight;
    const double py0 = height - kMarginBottom, py1 = kMarginTop;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
        << title << "</text>\n";

    // frame and ticks
    out << "<rect x=\"" << px0 << "\" y=\"" << py1 << "\" width=\"" << px1 - px0
        << "\" height=\"" << py0 - py1 << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double v : ax.ticks()) {
        const double x = ax.map(v, px0, px1);
        out << "<line x1=\"" << x << "\" y1=\"" << py0 << "\" x2=\"" << x << "\" y2=\""
            << py0 + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << x << "\" y=\"" << py0 + 18 << "\" text-anchor=\"middle\">"
            << fmt_tick(v) << "</text>\n";
    }
    for (double v : ay.ticks()) {
        const double y = ay.map(v, py0, py1);
        out << "<line x1=\"" << px0 - 5 << "\" y1=\"" << y << "\" x2=\"" << px0
            << "\" y2=\"" << y << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px0 - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\">" << fmt_tick(v) << "</text>\n";
    }
    out << "<text x=\"" << (px0 + px1) / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
    out << "<text x=\"18\" y=\"" << (py0 + py1) / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << (py0 + py1) / 2
        << ")\">" << y_label << "</text>\n";

    for (const auto& s : series) {
        if (s.markers) {
            for (std::size_t i = 0; i < s.xs.size(); ++i) {
                if ((log_x && s.xs[i] <= 0) || (log_y && s.ys[i] <= 0)) continue;
                out << "<circle cx=\"" << ax.map(s.xs[i], px0, px1) << "\" cy=\""
                    << ay.map(s.ys[i], py0, py1) << "\" r=\"3\" fill=\"" << s.color
                    << "\"/>\n";
            }
        } else {
            out << "<polyline fill=\"none\" stroke=\"" << s.color
                << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < s.xs.size(); ++i) {
                if ((log_x && s.xs[i] <= 0) || (log_y && s.ys[i] <= 0)) continue;
                out << ax.map(s.xs[i], px0, px1) << ',' << ay.map(s.ys[i], py0, py1) << ' ';
            }
            out << "\"/>\n";
        }
    }

    // legend
    double ly = py1 + 12;
    for (const auto& s : series) {
        const double lx = px1 - 150;
        out << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24
            << "\" y2=\"" << ly << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4 << "\">" << s.label
            << "</text>\n";
        ly += 16;
    }
    out << "</svg>\n";
    return out.str();
}

void Plot::write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write svg '" + path + "'");
    out << render();
}

}  // namespace ionread::svg
