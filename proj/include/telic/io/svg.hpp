#pragma once

#include <string>
#include <vector>

namespace telic::io {

/// Minimal standalone SVG assembler; coordinates are raw pixels.
class SvgCanvas {
public:
    SvgCanvas(double width, double height);

    void rect(double x, double y, double w, double h, const std::string& fill,
              const std::string& stroke = "none", double stroke_width = 0.0);
    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double width = 1.0, bool dashed = false);
    void polyline(const std::vector<std::pair<double, double>>& points,
                  const std::string& stroke, double width = 1.0, bool dashed = false);
    void circle(double cx, double cy, double r, const std::string& fill,
                const std::string& stroke = "none");
    void text(double x, double y, const std::string& content, double size = 11.0,
              const std::string& fill = "#222", const std::string& anchor = "start");

    std::string finish() const;

private:
    double width_, height_;
    std::string body_;
};

/// Axis-aligned mapping from data coordinates to a pixel viewport.
struct PlotFrame {
    double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;   // data range
    double px = 0.0, py = 0.0, pw = 100.0, ph = 100.0;        // pixel viewport

    double x(double v) const { return px + (v - x_lo) / (x_hi - x_lo) * pw; }
    /// y grows upward in data space, downward in pixels.
    double y(double v) const { return py + ph - (v - y_lo) / (y_hi - y_lo) * ph; }
};

/// Diverging blue-white-red map for values in [-1, 1].
std::string diverging_color(double v);

}  // namespace telic::io
