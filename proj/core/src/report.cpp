#include "fracspec/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fracspec/common.hpp"

namespace fracspec::report {

void Csv::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw Error("csv: row width mismatch");
  rows.push_back(std::move(row));
}

void Csv::write(std::ostream& os) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    os << columns[i] << (i + 1 < columns.size() ? "," : "\n");
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) os << r[i] << (i + 1 < r.size() ? "," : "\n");
}

void Csv::save(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw Error("csv: cannot open " + path);
  write(os);
}

std::string fmt(double v, int precision) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

void Svg::rect(double x, double y, double w, double h, const std::string& fill,
               const std::string& stroke, double stroke_width, double opacity) {
  std::ostringstream os;
  os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << h
     << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\""
     << stroke_width << "\" opacity=\"" << opacity << "\"/>\n";
  body_ += os.str();
}

void Svg::circle(double cx, double cy, double r, const std::string& fill,
                 const std::string& stroke, double stroke_width) {
  std::ostringstream os;
  os << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << r << "\" fill=\"" << fill
     << "\" stroke=\"" << stroke << "\" stroke-width=\"" << stroke_width << "\"/>\n";
  body_ += os.str();
}

void Svg::line(double x1, double y1, double x2, double y2, const std::string& stroke,
               double width) {
  std::ostringstream os;
  os << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
     << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\"/>\n";
  body_ += os.str();
}

void Svg::text(double x, double y, const std::string& t, double size) {
  std::ostringstream os;
  os << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"" << size
     << "\" font-family=\"monospace\">" << t << "</text>\n";
  body_ += os.str();
}

std::string Svg::str() const {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_ << "\" height=\"" << h_
     << "\" viewBox=\"0 0 " << w_ << ' ' << h_ << "\">\n"
     << body_ << "</svg>\n";
  return os.str();
}

void Svg::save(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw Error("svg: cannot open " + path);
  os << str();
}

std::string plot_xy(const std::vector<std::pair<double, double>>& points,
                    const std::string& x_label, const std::string& y_label,
                    const std::string& title) {
  const double W = 480, H = 320, L = 60, B = 40, T = 30, R = 20;
  Svg svg(W, H);
  if (points.empty()) return svg.str();
  double xmin = points[0].first, xmax = xmin, ymin = points[0].second, ymax = ymin;
  for (auto [x, y] : points) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  auto X = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto Y = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - B - T); };
  svg.line(L, H - B, W - R, H - B, "black");
  svg.line(L, H - B, L, T, "black");
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    svg.line(X(points[i].first), Y(points[i].second), X(points[i + 1].first),
             Y(points[i + 1].second), "steelblue", 1.5);
  for (auto [x, y] : points) svg.circle(X(x), Y(y), 3, "steelblue");
  svg.text(W / 2 - 4.0 * title.size() / 2, T - 10, title, 12);
  svg.text(W / 2, H - 8, x_label);
  svg.text(8, T - 10, y_label);
  svg.text(L - 10, H - B + 14, fmt(xmin, 4));
  svg.text(W - R - 30, H - B + 14, fmt(xmax, 4));
  svg.text(4, Y(ymin), fmt(ymin, 4));
  svg.text(4, Y(ymax) + 8, fmt(ymax, 4));
  return svg.str();
}

}  // namespace fracspec::report
