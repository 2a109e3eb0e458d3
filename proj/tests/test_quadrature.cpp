#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracspec/quadrature.hpp"

using namespace fracspec;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  auto cubic = [](double x) { return 3.0 * x * x * x - x + 2.0; };
  CHECK(quad::gauss(cubic, -1.0, 2.0, 8) == doctest::Approx(15.75).epsilon(1e-14));
  // smooth function converges spectrally
  const double exact = std::exp(1.0) - 1.0;
  CHECK(quad::gauss([](double x) { return std::exp(x); }, 0.0, 1.0, 16) ==
        doctest::Approx(exact).epsilon(1e-15));
}

TEST_CASE("gauss-jacobi rule matches power moments") {
  for (double beta : {-0.8, -0.5, -0.1, 0.3, 0.9}) {
    const auto r = quad::gauss_jacobi01(8, beta);
    for (int k = 0; k <= 9; ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * std::pow(r.x[i], k);
      CHECK(acc == doctest::Approx(1.0 / (beta + k + 1)).epsilon(1e-13));
    }
  }
}

TEST_CASE("power integral handles log branch and stability near it") {
  CHECK(quad::power_integral(-1.0, 0.5, 2.0) == doctest::Approx(std::log(4.0)).epsilon(1e-14));
  // e close to -1: the stable path agrees with the log limit
  const double e = -1.0 + 1e-9;
  CHECK(quad::power_integral(e, 0.5, 2.0) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(quad::power_integral(2.0, 0.0, 3.0) == doctest::Approx(9.0).epsilon(1e-14));
}

TEST_CASE("adaptive quadrature handles integrable endpoint singularities") {
  // \int_0^1 x^{-1/2} dx = 2
  quad::AdaptiveOptions opt;
  opt.abs_tol = 1e-12;
  opt.breakpoints = {0.0};
  CHECK(quad::adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opt) ==
        doctest::Approx(2.0).epsilon(1e-10));
  // interior cusp: \int_{-1}^1 |x|^{-0.3} dx = 2/0.7
  opt.breakpoints = {0.0};
  CHECK(quad::adaptive([](double x) { return std::pow(std::fabs(x), -0.3); }, -1.0, 1.0, opt) ==
        doctest::Approx(2.0 / 0.7).epsilon(1e-10));
  // plain smooth integrand without breakpoints
  quad::AdaptiveOptions plain;
  plain.abs_tol = 1e-12;
  CHECK(quad::adaptive([](double x) { return std::sin(x); }, 0.0, M_PI, plain) ==
        doctest::Approx(2.0).epsilon(1e-12));
}
