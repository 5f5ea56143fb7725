#pragma once

// Minimal line-plot SVG writer: linear or log axes, multiple series,
// a small legend. Enough for error curves and fit overlays.

#include <string>
#include <vector>

namespace ionread::svg {

struct Series {
    std::string label;
    std::string color = "#1f77b4";
    std::vector<double> xs;
    std::vector<double> ys;
    bool markers = false;  // draw circles instead of a polyline
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    int width = 720;
    int height = 480;
    std::vector<Series> series;

    std::string render() const;
    void write(const std::string& path) const;
};

}  // namespace ionread::svg
