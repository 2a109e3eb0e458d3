#pragma once

#include <iosfwd>
#include <string>

#include "fracspec/geometry.hpp"

namespace fracspec::geometry {

/// Portable text format:
///   frgeo v1 nx ny h ox oy
///   ny rows of 0/1 characters (top row = j = ny-1 first)
///   zero or more lines "punctures: x y"
void write_frgeo(std::ostream& os, const RasterDomain& dom);
RasterDomain read_frgeo(std::istream& is);

void save_frgeo(const std::string& path, const RasterDomain& dom);
RasterDomain load_frgeo(const std::string& path);

}  // namespace fracspec::geometry
