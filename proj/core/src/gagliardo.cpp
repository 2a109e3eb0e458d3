#include "fracspec/gagliardo.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

#include "stencil_detail.hpp"

namespace fracspec::gagliardo {

LineMesh LineMesh::interval(double a, double b, int n) {
  if (n < 3 || !(b > a)) throw Error("line mesh: need n >= 3 and b > a");
  LineMesh m;
  m.a = a;
  m.n = n;
  m.h = (b - a) / (n - 1);
  m.mask.assign(n, 1);
  m.mask.front() = 0;
  m.mask.back() = 0;
  return m;
}

GridFunction GridFunction::zeros(const geometry::RasterDomain& dom) {
  GridFunction u;
  u.dom = &dom;
  u.values.assign(static_cast<std::size_t>(dom.nx) * dom.ny, 0.0);
  return u;
}

void GridFunction::validate() const {
  if (!dom || values.size() != static_cast<std::size_t>(dom->nx) * dom->ny)
    throw Error("grid function: size mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw Error("grid function: non-finite value");
    if (!dom->mask[i] && values[i] != 0.0)
      throw Error("grid function: nonzero outside mask");
  }
}

NonlocalForm assemble_2d(const geometry::RasterDomain& dom, const FractionalOrder& s,
                         const FormOptions& opt) {
  dom.validate();
  NonlocalForm form;
  form.dim = 2;
  form.s = s.s;
  form.h = dom.h;
  form.nx = dom.nx;
  form.ny = dom.ny;
  form.mask = dom.mask;
  form.region = opt.region;
  form.mass_weight = dom.h * dom.h;
  form.exact_window = opt.window;
  detail::fill_table_2d(form);
  return form;
}

NonlocalForm assemble_1d(const LineMesh& mesh, const FractionalOrder& s,
                         const FormOptions& opt) {
  if (mesh.n < 3) throw Error("assemble_1d: mesh too small");
  NonlocalForm form;
  form.dim = 1;
  form.s = s.s;
  form.h = mesh.h;
  form.nx = mesh.n;
  form.ny = 1;
  form.mask = mesh.mask;
  form.region = opt.region;
  form.mass_weight = mesh.h;
  form.exact_window = opt.window;
  detail::fill_table_1d(form);
  return form;
}

std::vector<double> apply(const NonlocalForm& form, const std::vector<double>& u) {
  const int nx = form.nx, ny = form.ny;
  if (u.size() != static_cast<std::size_t>(nx) * ny) throw Error("apply: dimension mismatch");
  std::vector<double> y(u.size(), 0.0);
  // rows that are entirely zero can be skipped as sources
  std::vector<char> rownz(ny, 0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      if (u[static_cast<std::size_t>(j) * nx + i] != 0.0) {
        rownz[j] = 1;
        break;
      }
  for (int j = 0; j < ny; ++j) {
    double* yj = y.data() + static_cast<std::size_t>(j) * nx;
    for (int j2 = 0; j2 < ny; ++j2) {
      if (!rownz[j2]) continue;
      const double* uj = u.data() + static_cast<std::size_t>(j2) * nx;
      const double* wq = form.w.data() + static_cast<std::size_t>(std::abs(j2 - j)) * nx;
      for (int i = 0; i < nx; ++i) {
        double acc = 0.0;
        for (int i2 = 0; i2 < nx; ++i2) acc += wq[std::abs(i2 - i)] * uj[i2];
        yj[i] -= acc;
      }
    }
  }
  // w[0][0] slot is zero, so the convolution skipped the diagonal implicitly
  for (std::size_t i = 0; i < u.size(); ++i) y[i] += form.G0 * u[i];
  return y;
}

double evaluate_regional(const NonlocalForm& form, const std::vector<double>& u,
                         const std::vector<int>& nodes) {
  const int nx = form.nx;
  std::vector<double> terms;
  terms.reserve(nodes.size());
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    const int ia = nodes[a] % nx, ja = nodes[a] / nx;
    const double ua = u[nodes[a]];
    double acc = 0.0;
    for (std::size_t b = 0; b < nodes.size(); ++b) {
      if (a == b) continue;
      const int ib = nodes[b] % nx, jb = nodes[b] / nx;
      const double d = ua - u[nodes[b]];
      acc += form.weight(ib - ia, jb - ja) * d * d;
    }
    terms.push_back(acc);
  }
  return 0.5 * pairwise_sum(terms);
}

double evaluate(const NonlocalForm& form, const std::vector<double>& u) {
  if (form.region) return evaluate_regional(form, u, *form.region);
  const std::vector<double> y = apply(form, u);
  std::vector<double> terms(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) terms[i] = u[i] * y[i];
  return pairwise_sum(terms);
}

double evaluate(const NonlocalForm& form, const GridFunction& u) {
  u.validate();
  return evaluate(form, u.values);
}

std::vector<double> exterior_kappa(const NonlocalForm& form) {
  const int nx = form.nx, ny = form.ny;
  std::vector<double> kappa(static_cast<std::size_t>(nx) * ny, 0.0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      double rowsum = 0.0;
      for (int j2 = 0; j2 < ny; ++j2)
        for (int i2 = 0; i2 < nx; ++i2) rowsum += form.weight(i2 - i, j2 - j);
      kappa[form.nx * static_cast<std::size_t>(j) + i] = form.G0 - rowsum;
    }
  return kappa;
}

DirectionalResult directional_seminorm(const GridFunction& u, const geometry::Direction& dir,
                                       const FractionalOrder& s) {
  u.validate();
  const geometry::RasterDomain& dom = *u.dom;
  DirectionalResult res;
  const bool along_x = std::fabs(dir.omega.x) > 0.5;

  auto line_form = [&](int n) {
    LineMesh m;
    m.a = 0.0;
    m.h = dom.h;
    m.n = n;
    m.mask.assign(n, 1);
    NonlocalForm f;
    f.dim = 1;
    f.s = s.s;
    f.h = dom.h;
    f.nx = n;
    f.ny = 1;
    f.mass_weight = dom.h;
    f.exact_window = -1;
    detail::fill_table_1d(f);
    return f;
  };

  // regional 1D form over the masked chord nodes of a line: pairs within the
  // domain only, so traces constant along the direction contribute nothing
  auto chord_value = [&](const NonlocalForm& f, const std::vector<std::pair<int, double>>& tr) {
    double acc = 0.0;
    for (std::size_t a = 0; a < tr.size(); ++a)
      for (std::size_t b = a + 1; b < tr.size(); ++b) {
        const double d = tr[a].second - tr[b].second;
        if (d != 0.0) acc += f.w[tr[b].first - tr[a].first] * d * d;
      }
    return acc;
  };

  if (dir.axis_aligned()) {
    // omega = e1 varies the first coordinate along the integral, so the line
    // traces run along x; omega = e2 runs along y.
    const int nline = along_x ? dom.nx : dom.ny;
    const int nrows = along_x ? dom.ny : dom.nx;
    const NonlocalForm f = line_form(nline);
    std::vector<std::pair<int, double>> trace;
    std::vector<double> per_row(nrows, 0.0);
    for (int r = 0; r < nrows; ++r) {
      trace.clear();
      for (int t = 0; t < nline; ++t) {
        const auto idx = along_x ? dom.index(t, r) : dom.index(r, t);
        if (dom.mask[idx]) trace.push_back({t, u.values[idx]});
      }
      per_row[r] = chord_value(f, trace);
    }
    res.value = dom.h * pairwise_sum(per_row);
    return res;
  }

  // approximate path: resample bilinearly along rotated lines with spacing h
  res.approximate = true;
  const Point om = dir.omega;
  const Point perp{-om.y, om.x};
  const double h = dom.h;
  auto sample = [&](Point p) -> double {
    const double fx = (p.x - dom.origin.x) / h, fy = (p.y - dom.origin.y) / h;
    const int i = static_cast<int>(std::floor(fx)), j = static_cast<int>(std::floor(fy));
    if (i < 0 || j < 0 || i + 1 >= dom.nx || j + 1 >= dom.ny) return 0.0;
    const double ax = fx - i, ay = fy - j;
    return (1 - ax) * (1 - ay) * u.values[dom.index(i, j)] +
           ax * (1 - ay) * u.values[dom.index(i + 1, j)] +
           (1 - ax) * ay * u.values[dom.index(i, j + 1)] +
           ax * ay * u.values[dom.index(i + 1, j + 1)];
  };
  const Point c{dom.origin.x + 0.5 * (dom.nx - 1) * h, dom.origin.y + 0.5 * (dom.ny - 1) * h};
  const double radius = 0.5 * std::hypot(dom.nx * h, dom.ny * h);
  const int half = static_cast<int>(std::ceil(radius / h)) + 1;
  const NonlocalForm f = line_form(2 * half + 1);
  std::vector<std::pair<int, double>> trace;
  std::vector<double> per_row;
  for (int r = -half; r <= half; ++r) {
    const Point base = c + (r * h) * perp;
    trace.clear();
    for (int t = -half; t <= half; ++t) {
      const Point p = base + (t * h) * om;
      // keep samples whose bilinear cell has at least one masked corner
      const double fx = (p.x - dom.origin.x) / h, fy = (p.y - dom.origin.y) / h;
      const int ci = static_cast<int>(std::floor(fx)), cj = static_cast<int>(std::floor(fy));
      if (ci < 0 || cj < 0 || ci + 1 >= dom.nx || cj + 1 >= dom.ny) continue;
      if (!(dom.mask[dom.index(ci, cj)] || dom.mask[dom.index(ci + 1, cj)] ||
            dom.mask[dom.index(ci, cj + 1)] || dom.mask[dom.index(ci + 1, cj + 1)]))
        continue;
      trace.push_back({t + half, sample(p)});
    }
    per_row.push_back(trace.empty() ? 0.0 : chord_value(f, trace));
  }
  res.value = h * pairwise_sum(per_row);
  return res;
}

double average(const GridFunction& u, const std::vector<int>& nodes) {
  if (nodes.empty()) throw Error("average: empty node set");
  std::vector<double> terms(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) terms[k] = u.values[nodes[k]];
  return pairwise_sum(terms) / static_cast<double>(nodes.size());
}

namespace {
constexpr char kMagic[8] = {'F', 'S', 'T', 'W', '1', '\n', 0, 0};
}

void dump_stencil(std::ostream& os, const NonlocalForm& form) {
  os.write(kMagic, sizeof(kMagic));
  auto put = [&](const void* p, std::size_t n) { os.write(static_cast<const char*>(p), n); };
  std::int32_t dim = form.dim, nx = form.nx, ny = form.ny, win = form.exact_window;
  put(&dim, 4);
  put(&nx, 4);
  put(&ny, 4);
  put(&win, 4);
  put(&form.s, 8);
  put(&form.h, 8);
  put(&form.G0, 8);
  std::int64_t count = static_cast<std::int64_t>(form.w.size());
  put(&count, 8);
  put(form.w.data(), form.w.size() * 8);
}

NonlocalForm load_stencil(std::istream& is) {
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kMagic, 8) != 0) throw Error("stencil dump: bad magic");
  NonlocalForm form;
  std::int32_t dim, nx, ny, win;
  auto get = [&](void* p, std::size_t n) { is.read(static_cast<char*>(p), n); };
  get(&dim, 4);
  get(&nx, 4);
  get(&ny, 4);
  get(&win, 4);
  get(&form.s, 8);
  get(&form.h, 8);
  get(&form.G0, 8);
  std::int64_t count = 0;
  get(&count, 8);
  if (!is || count < 0 || count != static_cast<std::int64_t>(nx) * (dim == 2 ? ny : 1))
    throw Error("stencil dump: corrupt header");
  form.dim = dim;
  form.nx = nx;
  form.ny = ny;
  form.exact_window = win;
  form.w.resize(count);
  get(form.w.data(), count * 8);
  if (!is) throw Error("stencil dump: truncated table");
  form.mass_weight = dim == 2 ? form.h * form.h : form.h;
  form.mask.assign(static_cast<std::size_t>(nx) * (dim == 2 ? ny : 1), 1);
  return form;
}

}  // namespace fracspec::gagliardo
