#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "wcsg/holo.hpp"

using namespace wcsg;

TEST_CASE("cauchy derivative of exp") {
  const HoloFn f = fns::exp_scaled(1.0);
  const Complex d = derivative(f, {0.2, 0.1}, QuadPolicy{});
  CHECK(d.real() == doctest::Approx(1.2153008318514381722).epsilon(1e-12));
  CHECK(d.imag() == doctest::Approx(0.12193681044898932704).epsilon(1e-12));
  const Complex c = cauchy_derivative(fns::monomial(3), {0.5, 0.0}, 0.25, QuadPolicy{});
  CHECK(std::abs(c - 0.75) < 1e-12);
}

TEST_CASE("circle means") {
  CHECK(circle_mean_p(fns::monomial(2), 0.5, 2.0, QuadPolicy{}) == doctest::Approx(0.0625).epsilon(1e-14));
  const HoloFn one_plus_z = fns::sum(fns::one(), fns::identity());
  CHECK(circle_mean_p(one_plus_z, 0.5, 2.0, 64) == doctest::Approx(1.25).epsilon(1e-14));
}

TEST_CASE("disc integral of |z|^2") {
  const double v = disc_integral([](Complex z) { return std::norm(z); }, 0.5, QuadPolicy{});
  CHECK(v == doctest::Approx(0.098174770424681038702).epsilon(1e-12));
}

TEST_CASE("gauss-legendre rules") {
  const GaussRule& g = gauss_legendre(5);
  double total = 0.0, x8 = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    total += g.weights[i];
    x8 += g.weights[i] * std::pow(g.nodes[i], 8);
  }
  CHECK(total == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(x8 == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
  CHECK(&gauss_legendre(5) == &g);
  CHECK(integrate_gl_real([](double x) { return std::exp(x); }, 0.0, 1.0, 12) ==
        doctest::Approx(std::numbers::e - 1.0).epsilon(1e-14));
}

TEST_CASE("weighted disc average reproduces the Beta identity") {
  struct Row {
    int n;
    double alpha, p, expected;
  };
  const Row rows[] = {{1, 0.0, 2.0, 0.5},
                      {8, 1.0, 2.0, 0.022222222222222222222},
                      {4, 0.5, 4.0, 0.047295532125253487483},
                      {8, -0.5, 2.0, 0.29953837012660542072}};
  for (const auto& r : rows) {
    const auto mean = [&](double rho) { return std::pow(rho, r.n * r.p); };
    CHECK(weighted_disc_average(mean, r.alpha, 1.0, 128) == doctest::Approx(r.expected).epsilon(1e-12));
  }
}

TEST_CASE("extrapolation to zero") {
  const std::vector<double> h{0.1, 0.05, 0.025};
  std::vector<Complex> d;
  for (const double x : h) d.emplace_back(1.0 + 2.0 * x + 3.0 * x * x, 0.0);
  const Extrapolation e = extrapolate_to_zero(d, h);
  CHECK(std::abs(e.value - 1.0) < 1e-12);
  CHECK(e.order_evidence == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("function catalog") {
  const HoloFn m = fns::mobius({0.3, 0.2});
  CHECK(std::abs(m(0.0) - Complex(0.3, 0.2)) < 1e-15);
  CHECK(std::abs(std::abs(m(std::polar(1.0, 0.7))) - 1.0) < 1e-14);
  const HoloFn k = fns::mobius_kernel({0.5, 0.0});
  CHECK(std::abs(k(1.0) - 2.0) < 1e-15);
  const HoloFn c = fns::compose(fns::monomial(2), fns::exp_scaled(1.0));
  CHECK(std::abs(c(0.5) - std::exp(1.0)) < 1e-14);
  CHECK(std::abs(fns::singular_inner()(0.0) - std::exp(-1.0)) < 1e-15);
}

TEST_CASE("domains and grids") {
  const Domain d = Domain::unit_disc();
  CHECK(d.contains(0.99));
  CHECK_FALSE(d.contains(1.0));
  CHECK(sample_grid(d, 0.9, 4, 8).size() == 33);
  const auto line = sample_grid(Domain::real_line(), 2.0, 4, 8);
  CHECK(line.front().real() == -2.0);
  CHECK(line.back().real() == 2.0);
  QuadPolicy bad;
  bad.r_cap = 1.5;
  CHECK(error_kind([&] { bad.validate(); }) == ErrorKind::InvalidParam);
}
