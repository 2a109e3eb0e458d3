#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracspec/fatness.hpp"
#include "test_helpers.hpp"

using namespace fracspec;
using namespace fracspec::fatness;

TEST_CASE("tile centers: counts and the first center") {
  // delta = floor(sqrt k) + 1, so k in {1,2,3} all give delta = 2
  CHECK(tile_centers(1, 1.0, {0, 0}).size() == 16);
  CHECK(tile_centers(3, 1.0, {0, 0}).size() == 16);
  CHECK(tile_centers(4, 1.0, {0, 0}).size() == 36);  // delta = 3
  const auto c = tile_centers(1, 1.0, {0, 0});
  CHECK(c[0].x == doctest::Approx(-7.5));  // -5 delta + 5/2 with delta = 2
  CHECK(c[0].y == doctest::Approx(7.5));
  // scaling and translation act by similarity
  const auto cs = tile_centers(1, 2.0, {10.0, -3.0});
  CHECK(cs[0].x == doctest::Approx(10.0 - 15.0));
  CHECK(cs[0].y == doctest::Approx(-3.0 + 15.0));
}

TEST_CASE("reliable-count floor table") {
  CHECK(lambda_k(1) == 1.0);
  CHECK(lambda_k(2) == 1.0);
  CHECK(lambda_k(3) == 1.0);
  CHECK(lambda_k(4) == 1.0);
  CHECK(lambda_k(16) == 2.0);
  for (int k = 1; k <= 60; ++k)
    CHECK(lambda_k(k) >= std::sqrt(static_cast<double>(k)) / 4.0);
}

TEST_CASE("isolated complement points make every cell unreliable") {
  // large open square containing the whole tile; complement inside the tile
  // is exactly one puncture node per cell center
  const double h = 0.25;
  auto dom = testutil::centered_square(9.5, h);
  const auto centers = tile_centers(1, 1.0, {0, 0});
  for (const Point& p : centers) {
    const int i = static_cast<int>(std::lround((p.x - dom.origin.x) / h));
    const int j = static_cast<int>(std::lround((p.y - dom.origin.y) / h));
    dom.punctures.push_back(dom.node(i, j));
  }
  const auto cert = fatness_certificate(dom, {0, 0}, 1, 1.0);
  CHECK(cert.reliable.empty());
  CHECK(cert.witnesses.size() == 16);
  CHECK(cert.sigma.empty());
}

TEST_CASE("a disk without complement points in it raises NoWitness") {
  const double h = 0.25;
  const auto dom = testutil::centered_square(7.0, h);
  CHECK_THROWS_AS(fatness_certificate(dom, {0, 0}, 1, 1.0), NoWitnessError);
}

TEST_CASE("complement lines through every cell: all cells reliable") {
  const double h = 0.25;
  // domain = wide box minus horizontal complement lines at even integers:
  // every witness disk meets a line, and each line crosses its whole cell
  auto dom = testutil::make_raster(-11.0, -11.0, 22.0, 22.0, h, [h](Point p) {
    const double frac = p.y - 2.0 * std::round(p.y / 2.0);
    return std::fabs(frac) > 0.3 * h && std::fabs(p.x) < 10.8 && std::fabs(p.y) < 10.8;
  });
  const auto cert = fatness_certificate(dom, {0, 0}, 1, 1.0);
  CHECK(cert.reliable.size() == 16);
  CHECK(cert.max_projection() >= cert.bound - 2 * h);
}

TEST_CASE("tile disjoint from the domain: sigma is the whole tile") {
  const double h = 0.25;
  const auto dom = testutil::centered_square(1.0, h);
  const auto cert = fatness_certificate(dom, {50.0, 50.0}, 1, 1.0);
  CHECK(cert.trivial_tile);
  CHECK(cert.proj_e1.length == doctest::Approx(cert.tile_side).epsilon(2 * h));
  CHECK(cert.proj_e2.length == doctest::Approx(cert.tile_side).epsilon(2 * h));
}

TEST_CASE("annulus certificate meets the projection bound") {
  const double h = 1.0 / 24.0;
  const auto dom = testutil::annulus(0.35, 1.0, h);
  const double r = geometry::inradius(dom);
  const int k = geometry::topology_order(dom).k;
  CHECK(k == 2);
  const auto cert = fatness_certificate(dom, {0, 0});
  CHECK(cert.k == 2);
  CHECK(cert.max_projection() >= cert.bound - 2 * h);
  CHECK(static_cast<int>(cert.reliable.size()) >= 3 * cert.delta * cert.delta);
  // every reliable continuum has one axis projection of length >= r - 2h
  for (int id : cert.reliable) {
    const auto& cells = cert.continua.at(id);
    std::vector<Point> pts;
    for (auto [i, j] : cells) pts.push_back({dom.origin.x + i * h, dom.origin.y + j * h});
    const auto p1 = geometry::project_points(pts, h, geometry::dir_e1());
    const auto p2 = geometry::project_points(pts, h, geometry::dir_e2());
    CHECK(std::max(p1.length, p2.length) >= r - 2 * h);
  }
}

TEST_CASE("certificates are deterministic") {
  const double h = 1.0 / 16.0;
  const auto dom = testutil::annulus(0.4, 1.0, h);
  const auto a = fatness_certificate(dom, {0.3, -0.2});
  const auto b = fatness_certificate(dom, {0.3, -0.2});
  CHECK(a.sigma == b.sigma);
  CHECK(a.reliable == b.reliable);
  REQUIRE(a.witnesses.size() == b.witnesses.size());
  for (const auto& [id, p] : a.witnesses) {
    CHECK(p.x == b.witnesses.at(id).x);
    CHECK(p.y == b.witnesses.at(id).y);
  }
}

TEST_CASE("json and svg serialization smoke") {
  const double h = 1.0 / 16.0;
  const auto dom = testutil::annulus(0.4, 1.0, h);
  const auto cert = fatness_certificate(dom, {0, 0});
  const std::string js = to_json(cert);
  CHECK(js.find("\"sigma_rle\"") != std::string::npos);
  CHECK(js.find("\"witnesses\"") != std::string::npos);
  CHECK(js.find("\"max_projection\"") != std::string::npos);
  const std::string svg = to_svg(cert, dom);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}
