#pragma once

#include <cmath>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace shv {

/// A point of a chart: plain coordinates, all finite.
struct Point {
  std::vector<double> coords;

  Point() = default;
  explicit Point(std::vector<double> c) : coords(std::move(c)) { validate(); }
  Point(std::initializer_list<double> c) : coords(c) { validate(); }

  int dim() const { return static_cast<int>(coords.size()); }
  std::span<const double> view() const { return coords; }

  void validate() const {
    if (coords.empty()) throw std::invalid_argument("Point: empty coordinate list");
    for (double c : coords)
      if (!std::isfinite(c)) throw std::invalid_argument("Point: non-finite coordinate");
  }
};

}  // namespace shv
