#include "willmore/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "willmore/profile_io.hpp"

namespace willmore {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

}  // namespace

void SvgPlot::grow(double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) return;
    xmin_ = std::min(xmin_, x);
    xmax_ = std::max(xmax_, x);
    ymin_ = std::min(ymin_, y);
    ymax_ = std::max(ymax_, y);
}

void SvgPlot::polyline(const std::vector<double>& x, const std::vector<double>& y, const std::string& color,
                       double stroke, bool dashed) {
    Shape s{Shape::line, x, y, color, "", stroke, dashed};
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) grow(x[i], y[i]);
    shapes_.push_back(std::move(s));
}

void SvgPlot::marker(double x, double y, const std::string& color, double radius_px) {
    shapes_.push_back({Shape::dot, {x}, {y}, color, "", radius_px, false});
    grow(x, y);
}

void SvgPlot::label(double x, double y, const std::string& text, int size_px) {
    shapes_.push_back({Shape::text, {x}, {y}, "black", text, double(size_px), false});
}

std::string SvgPlot::str() const {
    const double margin = 50.0;
    double x0 = xmin_, x1 = xmax_, y0 = ymin_, y1 = ymax_;
    if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
    if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;
    const double pw = width_ - 2 * margin, ph = height_ - 2 * margin;
    double sx = pw / (x1 - x0), sy = ph / (y1 - y0);
    if (equal_) sx = sy = std::min(sx, sy);
    auto X = [&](double x) { return margin + (x - x0) * sx; };
    auto Y = [&](double y) { return height_ - margin - (y - y0) * sy; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\"" << height_
       << "\" viewBox=\"0 0 " << width_ << ' ' << height_ << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title_.empty())
        os << "<text x=\"" << width_ / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           << "font-size=\"15\">" << escape(title_) << "</text>\n";
    if (!xlabel_.empty() || !ylabel_.empty()) {
        os << "<g stroke=\"#888\" stroke-width=\"1\"><line x1=\"" << num(margin) << "\" y1=\"" << num(height_ - margin)
           << "\" x2=\"" << num(width_ - margin) << "\" y2=\"" << num(height_ - margin) << "\"/><line x1=\""
           << num(margin) << "\" y1=\"" << num(margin) << "\" x2=\"" << num(margin) << "\" y2=\""
           << num(height_ - margin) << "\"/></g>\n";
        os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">";
        os << "<text x=\"" << num(width_ - margin) << "\" y=\"" << num(height_ - margin + 28)
           << "\" text-anchor=\"end\">" << escape(xlabel_) << "</text>";
        os << "<text x=\"" << num(margin) << "\" y=\"" << num(margin - 8) << "\">" << escape(ylabel_) << "</text>";
        os << "<text x=\"" << num(margin) << "\" y=\"" << num(height_ - margin + 14) << "\">" << format_double(x0)
           << "</text>";
        os << "<text x=\"" << num(width_ - margin) << "\" y=\"" << num(height_ - margin + 14)
           << "\" text-anchor=\"end\">" << format_double(x1) << "</text>";
        os << "<text x=\"" << num(margin - 4) << "\" y=\"" << num(height_ - margin)
           << "\" text-anchor=\"end\">" << format_double(y0) << "</text>";
        os << "<text x=\"" << num(margin - 4) << "\" y=\"" << num(margin + 10) << "\" text-anchor=\"end\">"
           << format_double(y1) << "</text></g>\n";
    }
    for (const auto& s : shapes_) {
        switch (s.kind) {
            case Shape::line: {
                os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"" << num(s.stroke) << "\"";
                if (s.dashed) os << " stroke-dasharray=\"5,4\"";
                os << " points=\"";
                for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
                    os << (i ? " " : "") << num(X(s.x[i])) << ',' << num(Y(s.y[i]));
                os << "\"/>\n";
                break;
            }
            case Shape::dot:
                os << "<circle cx=\"" << num(X(s.x[0])) << "\" cy=\"" << num(Y(s.y[0])) << "\" r=\"" << num(s.stroke)
                   << "\" fill=\"" << s.color << "\"/>\n";
                break;
            case Shape::text:
                os << "<text x=\"" << num(X(s.x[0]) + 6) << "\" y=\"" << num(Y(s.y[0]) - 6)
                   << "\" font-family=\"sans-serif\" font-size=\"" << int(s.stroke) << "\">" << escape(s.text_value)
                   << "</text>\n";
                break;
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace willmore
