#include "telic/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "telic/io/csv.hpp"

namespace telic::io {

namespace {
std::string num(double v) { return format_double(v); }
}  // namespace

SvgCanvas::SvgCanvas(double width, double height) : width_(width), height_(height) {}

void SvgCanvas::rect(double x, double y, double w, double h, const std::string& fill,
                     const std::string& stroke, double stroke_width) {
    body_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
             "\" height=\"" + num(h) + "\" fill=\"" + fill + "\"";
    if (stroke != "none") {
        body_ += " stroke=\"" + stroke + "\" stroke-width=\"" + num(stroke_width) + "\"";
    }
    body_ += "/>\n";
}

void SvgCanvas::line(double x1, double y1, double x2, double y2, const std::string& stroke,
                     double width, bool dashed) {
    body_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
             "\" y2=\"" + num(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) +
             "\"";
    if (dashed) body_ += " stroke-dasharray=\"4 3\"";
    body_ += "/>\n";
}

void SvgCanvas::polyline(const std::vector<std::pair<double, double>>& points,
                         const std::string& stroke, double width, bool dashed) {
    if (points.size() < 2) return;
    body_ += "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) +
             "\"";
    if (dashed) body_ += " stroke-dasharray=\"4 3\"";
    body_ += " points=\"";
    for (const auto& [x, y] : points) {
        body_ += num(x) + "," + num(y) + " ";
    }
    body_ += "\"/>\n";
}

void SvgCanvas::circle(double cx, double cy, double r, const std::string& fill,
                       const std::string& stroke) {
    body_ += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) +
             "\" fill=\"" + fill + "\"";
    if (stroke != "none") body_ += " stroke=\"" + stroke + "\" stroke-width=\"1\"";
    body_ += "/>\n";
}

void SvgCanvas::text(double x, double y, const std::string& content, double size,
                     const std::string& fill, const std::string& anchor) {
    body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" " +
             "font-size=\"" + num(size) + "\" fill=\"" + fill + "\" text-anchor=\"" + anchor +
             "\">" + content + "</text>\n";
}

std::string SvgCanvas::finish() const {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" "
           "width=\"" +
           num(width_) + "\" height=\"" + num(height_) + "\" viewBox=\"0 0 " + num(width_) + " " +
           num(height_) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" + body_ +
           "</svg>\n";
}

std::string diverging_color(double v) {
    v = std::clamp(v, -1.0, 1.0);
    int r, g, b;
    if (v >= 0.0) {  // white -> red
        r = 255;
        g = static_cast<int>(std::lround(255.0 * (1.0 - v)));
        b = g;
    } else {  // white -> blue
        b = 255;
        g = static_cast<int>(std::lround(255.0 * (1.0 + v)));
        r = g;
    }
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

}  // namespace telic::io
