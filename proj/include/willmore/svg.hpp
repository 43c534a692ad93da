#pragma once

#include <array>
#include <string>
#include <vector>

namespace willmore {

/// Minimal SVG writer in data coordinates (x right, y up). Bounds grow with
/// every shape added; the viewport is fixed when str() is called.
class SvgPlot {
public:
    SvgPlot(int width = 640, int height = 480) : width_(width), height_(height) {}

    void polyline(const std::vector<double>& x, const std::vector<double>& y, const std::string& color = "black",
                  double stroke = 1.5, bool dashed = false);
    void marker(double x, double y, const std::string& color = "red", double radius_px = 3.5);
    void label(double x, double y, const std::string& text, int size_px = 12);
    void title(const std::string& text) { title_ = text; }
    /// Keep the x and y scales equal (profiles); off for plots of series.
    void equal_aspect(bool on) { equal_ = on; }
    void axes(const std::string& xlabel, const std::string& ylabel) {
        xlabel_ = xlabel;
        ylabel_ = ylabel;
    }

    std::string str() const;

private:
    struct Shape {
        enum Kind { line, dot, text } kind;
        std::vector<double> x, y;
        std::string color, text_value;
        double stroke = 1.5;
        bool dashed = false;
    };
    void grow(double x, double y);

    int width_, height_;
    bool equal_ = true;
    std::string title_, xlabel_, ylabel_;
    std::vector<Shape> shapes_;
    double xmin_ = 1e300, xmax_ = -1e300, ymin_ = 1e300, ymax_ = -1e300;
};

}  // namespace willmore
