#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracspec {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double t, Point p) { return {t * p.x, t * p.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A witness disk contained no complement node; signals that the supplied
/// radius exceeds the true inradius of the raster.
class NoWitnessError : public Error {
 public:
  NoWitnessError(int j, int m)
      : Error("no complement node in witness disk of cell (" + std::to_string(j) +
              "," + std::to_string(m) + ")"),
        cell_j(j),
        cell_m(m) {}
  int cell_j;
  int cell_m;
};

class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Deterministic pairwise (cascade) summation; fixed association order so
/// repeated evaluations produce bit-identical results.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

inline double sqr(double x) { return x * x; }

}  // namespace fracspec
