#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracspec::report {

/// Minimal CSV writer: header row then data rows, RFC-ish quoting not needed
/// for numeric tables.
struct Csv {
  explicit Csv(std::vector<std::string> header) : columns(std::move(header)) {}
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  void write(std::ostream& os) const;
  void save(const std::string& path) const;
};

std::string fmt(double v, int precision = 12);

/// Tiny SVG canvas for diagrams and sweep plots.
class Svg {
 public:
  Svg(double width, double height) : w_(width), h_(height) {}
  void rect(double x, double y, double w, double h, const std::string& fill,
            const std::string& stroke = "none", double stroke_width = 0.0, double opacity = 1.0);
  void circle(double cx, double cy, double r, const std::string& fill,
              const std::string& stroke = "none", double stroke_width = 0.0);
  void line(double x1, double y1, double x2, double y2, const std::string& stroke,
            double width = 1.0);
  void text(double x, double y, const std::string& t, double size = 10.0);
  std::string str() const;
  void save(const std::string& path) const;

 private:
  double w_, h_;
  std::string body_;
};

/// Scatter/line plot of (x, y) series into an SVG file.
std::string plot_xy(const std::vector<std::pair<double, double>>& points,
                    const std::string& x_label, const std::string& y_label,
                    const std::string& title);

}  // namespace fracspec::report
