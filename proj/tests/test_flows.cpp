#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "wcsg/flows.hpp"

using namespace wcsg;

namespace {

HoloFn disc_fn(std::function<Complex(Complex)> f, const char* label) {
  return {Domain::unit_disc(), std::move(f), FnKind::ClosedForm, label};
}

}  // namespace

TEST_CASE("catalog closed forms") {
  const Semiflow cubic = make_catalog_semiflow("cubic-real");
  CHECK(cubic(1.0, 8.0).real() == doctest::Approx(12.703703703703703704).epsilon(1e-14));
  const Semiflow dil = make_catalog_semiflow("dilation");
  CHECK(std::abs(dil(1.0, 0.5) - 0.1839397205857211608) < 1e-15);
  const Semiflow att = make_catalog_semiflow("attracting");
  CHECK(std::abs(att(std::log(2.0), 0.0) - 0.5) < 1e-15);
  const auto grid = sample_grid(Domain::unit_disc(), 0.95, 6, 16);
  for (const auto& name : {"dilation", "attracting", "rotation", "identity"}) {
    CHECK(semiflow_law_residual(make_catalog_semiflow(name), {0.0, 0.1, 0.5, 1.0}, grid) < 1e-12);
  }
}

TEST_CASE("catalog errors") {
  CHECK(error_kind([] { make_catalog_semiflow("spiral"); }) == ErrorKind::UnknownCatalogEntry);
  CHECK(error_kind([] { make_catalog_semiflow("dilation", {{"c", -1.0}}); }) == ErrorKind::InvalidParam);
  CHECK(error_kind([] { make_catalog_semiflow("rotation", {{"speed", 1.0}}); }) == ErrorKind::InvalidParam);
  CHECK(error_kind([] { make_catalog_semiflow("dilation")(-1.0, 0.1); }).has_value());
}

TEST_CASE("finite-difference generators") {
  CHECK(std::abs(generator_fd(make_catalog_semiflow("attracting"), 0.4).value - 0.6) < 1e-8);
  CHECK(std::abs(generator_fd(make_catalog_semiflow("cubic-real"), 8.0).value - 4.0) < 1e-7);
  const Semiflow cubic = make_catalog_semiflow("cubic-real");
  CHECK(std::abs((*cubic.generator)(8.0) - 4.0) < 1e-14);
}

TEST_CASE("fixed points") {
  const Semiflow dil = make_catalog_semiflow("dilation");
  const auto grid = sample_grid(Domain::unit_disc(), 0.95, 6, 16);
  const FixedPointReport d = fixed_points(dil, *dil.generator, grid);
  REQUIRE(d.fixed_points.size() == 1);
  CHECK(std::abs(d.fixed_points[0]) < 1e-12);
  const Semiflow att = make_catalog_semiflow("attracting");
  CHECK(fixed_points(att, *att.generator, grid).fixed_points.empty());
  const Semiflow id = make_catalog_semiflow("identity");
  CHECK(fixed_points(id, *id.generator, grid).trivial_flow);
}

TEST_CASE("reconstruction from a generator") {
  const Semiflow dil = semiflow_from_generator(disc_fn([](Complex z) { return -z; }, "-z"));
  CHECK(std::abs(dil(1.0, 0.5) - 0.1839397205857211608) < 1e-8);
  const Semiflow att = semiflow_from_generator(disc_fn([](Complex z) { return 1.0 - z; }, "1-z"));
  CHECK(std::abs(att(std::log(2.0), 0.0) - 0.5) < 1e-8);
  const auto grid = sample_grid(Domain::unit_disc(), 0.9, 3, 8);
  CHECK(chain_rule_residual(dil, *dil.generator, {0.5, 1.0}, grid) < 1e-7);

  const Semiflow drift = semiflow_from_generator(disc_fn([](Complex) { return Complex(1.0, 0.0); }, "1"));
  try {
    drift(2.0, 0.0);
    FAIL("expected an escape");
  } catch (const EscapedDomainError& e) {
    CHECK(e.tau() == doctest::Approx(1.0).epsilon(1e-3));
  }
  OdeCfg bad;
  bad.tol_step = -1.0;
  CHECK(error_kind([&] { bad.validate(); }) == ErrorKind::InvalidParam);
}

TEST_CASE("chain rule for catalog flows") {
  const auto grid = sample_grid(Domain::unit_disc(), 0.9, 4, 12);
  for (const auto& name : {"dilation", "attracting"}) {
    const Semiflow phi = make_catalog_semiflow(name);
    CHECK(chain_rule_residual(phi, *phi.generator, {0.1, 0.5, 1.0}, grid) < 1e-9);
  }
}

TEST_CASE("revisit times are evidence only") {
  const Semiflow rot = make_catalog_semiflow("rotation");
  std::vector<double> ts;
  for (int i = 1; i <= 32; ++i) ts.push_back(0.25 * i);
  CHECK_FALSE(min_revisit_time(rot, *rot.generator, 0.5, ts).has_value());
}
