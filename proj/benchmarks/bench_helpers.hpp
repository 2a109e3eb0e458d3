#pragma once

#include <cmath>

#include "fracspec/geometry.hpp"

namespace benchutil {

inline fracspec::geometry::RasterDomain square(int n) {
  fracspec::geometry::RasterDomain dom;
  dom.h = 1.0 / (n - 1);
  dom.nx = dom.ny = n + 2;
  dom.origin = {-dom.h, -dom.h};
  dom.mask.assign(static_cast<std::size_t>(dom.nx) * dom.ny, 0);
  for (int j = 1; j + 1 < dom.ny; ++j)
    for (int i = 1; i + 1 < dom.nx; ++i)
      if (i >= 1 && i <= n && j >= 1 && j <= n) {
        const auto p = dom.node(i, j);
        if (p.x > 0 && p.x < 1 && p.y > 0 && p.y < 1) dom.mask[dom.index(i, j)] = 1;
      }
  return dom;
}

}  // namespace benchutil
