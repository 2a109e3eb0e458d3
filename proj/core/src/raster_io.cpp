#include "fracspec/raster_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace fracspec::geometry {

void write_frgeo(std::ostream& os, const RasterDomain& dom) {
  os << "frgeo v1 " << dom.nx << ' ' << dom.ny << ' ' << std::setprecision(17)
     << dom.h << ' ' << dom.origin.x << ' ' << dom.origin.y << '\n';
  for (int j = dom.ny - 1; j >= 0; --j) {
    for (int i = 0; i < dom.nx; ++i) os << (dom.mask[dom.index(i, j)] ? '1' : '0');
    os << '\n';
  }
  for (const Point& p : dom.punctures)
    os << "punctures: " << std::setprecision(17) << p.x << ' ' << p.y << '\n';
}

RasterDomain read_frgeo(std::istream& is) {
  std::string magic, version;
  RasterDomain dom;
  is >> magic >> version >> dom.nx >> dom.ny >> dom.h >> dom.origin.x >> dom.origin.y;
  if (magic != "frgeo" || version != "v1") throw Error("frgeo: bad header");
  if (dom.nx <= 0 || dom.ny <= 0) throw Error("frgeo: bad dimensions");
  std::string line;
  std::getline(is, line);  // rest of header line
  dom.mask.assign(static_cast<std::size_t>(dom.nx) * dom.ny, 0);
  for (int j = dom.ny - 1; j >= 0; --j) {
    if (!std::getline(is, line) || static_cast<int>(line.size()) < dom.nx)
      throw Error("frgeo: truncated mask row");
    for (int i = 0; i < dom.nx; ++i) {
      if (line[i] != '0' && line[i] != '1') throw Error("frgeo: mask must be 0/1");
      dom.mask[dom.index(i, j)] = line[i] == '1';
    }
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag != "punctures:") throw Error("frgeo: unexpected trailing line: " + line);
    Point p;
    if (!(ls >> p.x >> p.y)) throw Error("frgeo: bad puncture line");
    dom.punctures.push_back(p);
  }
  dom.validate();
  return dom;
}

void save_frgeo(const std::string& path, const RasterDomain& dom) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open for writing: " + path);
  write_frgeo(os, dom);
}

RasterDomain load_frgeo(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open: " + path);
  return read_frgeo(is);
}

}  // namespace fracspec::geometry
