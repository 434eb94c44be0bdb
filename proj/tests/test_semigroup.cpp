#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "wcsg/semigroup.hpp"

using namespace wcsg;

namespace {

HoloFn disc_fn(std::function<Complex(Complex)> f, const char* label) {
  return {Domain::unit_disc(), std::move(f), FnKind::ClosedForm, label};
}

}  // namespace

TEST_CASE("applying the semigroup") {
  const Semiflow dil = make_catalog_semiflow("dilation");
  const WcSemigroup sg{dil, derivative_cocycle(dil), SpaceSpec::hardy(2.0)};
  CHECK(std::abs(sg.apply(1.0, fns::identity())(0.5) - 0.067667641618306345947) < 1e-15);
  CHECK(error_kind([&] { sg.apply(-1.0, fns::identity()); }) == ErrorKind::InvalidParam);
}

TEST_CASE("semigroup law on closed forms") {
  const auto grid = sample_grid(Domain::unit_disc(), 0.95, 4, 12);
  const Semiflow att = make_catalog_semiflow("attracting");
  const WcSemigroup sg{att, derivative_cocycle(att), SpaceSpec::hardy(2.0)};
  for (const double t : {0.1, 0.5, 1.0}) {
    for (const double s : {0.0, 0.1, 1.0}) CHECK(semigroup_residual(sg, t, s, grid) < 1e-10);
  }
}

TEST_CASE("operator norm bounds") {
  const Semiflow att = make_catalog_semiflow("attracting");
  const double t = std::log(2.0);
  const WcSemigroup hardy{att, unit_cocycle(), SpaceSpec::hardy(2.0)};
  const BoundResult h = theoretical_bound(hardy, t);
  CHECK(h.formula_tag == "hardy");
  CHECK(std::abs(h.theoretical - 1.7320508075688772935) < 1e-9);
  CHECK(operator_norm_lower_bound(hardy, t).value <= h.theoretical * 1.001);

  const WcSemigroup dir{att, unit_cocycle(), SpaceSpec::dirichlet()};
  CHECK(std::abs(theoretical_bound(dir, t).theoretical - 1.3035159552185688045) < 1e-9);
  const WcSemigroup dir_weighted{att, cocycle_from_g(fns::identity(), att), SpaceSpec::dirichlet()};
  CHECK(error_kind([&] { theoretical_bound(dir_weighted, t); }) == ErrorKind::UnsupportedSpaceBound);

  const Semiflow tr = make_catalog_semiflow("translation-real");
  const WcSemigroup cv{tr, unit_cocycle(Domain::real_line()), SpaceSpec::sup_cont(Weight::exp_abs())};
  const BoundResult k = theoretical_bound(cv, 1.0);
  CHECK(k.components.at("K") <= std::exp(1.0) * 1.001);
  CHECK(k.components.at("K") == doctest::Approx(2.7182818284590452354).epsilon(1e-9));

  const WcSemigroup rot{make_catalog_semiflow("rotation"), unit_cocycle(), SpaceSpec::hardy(2.0)};
  std::vector<HoloFn> monomials;
  for (int n = 0; n <= 4; ++n) monomials.push_back(fns::monomial(n));
  CHECK(operator_norm_lower_bound(rot, 0.7, monomials).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("generator formula and residual") {
  const HoloFn G = disc_fn([](Complex z) { return 1.0 - z; }, "1-z");
  const HoloFn Af = generator_formula_apply(G, fns::constant(-1.0), fns::monomial(2));
  CHECK(std::abs(Af(0.3) - 0.32999999999999996) < 1e-10);

  const Semiflow dil = make_catalog_semiflow("dilation");
  const WcSemigroup sg{dil, unit_cocycle(), SpaceSpec::hardy(2.0)};
  GeneratorCheckCfg cfg;
  cfg.norm_ladder = false;
  const GeneratorCheck r = generator_residual(sg, *dil.generator, fns::constant(0.0), fns::monomial(2), cfg);
  CHECK(r.extrapolated_residual < 1e-4);
  CHECK(r.observed_order >= 0.9);
  CHECK(r.raw_residuals.front() > r.raw_residuals.back());

  const HoloFn g = disc_fn([](Complex z) { return z - 1.0; }, "z-1");
  const WcSemigroup mult{make_catalog_semiflow("identity"), exponential_cocycle(g), SpaceSpec::hardy(2.0)};
  const GeneratorCheck m = generator_residual(mult, fns::constant(0.0), g, fns::exp_scaled(0.5), cfg);
  CHECK(m.extrapolated_residual < 1e-4);
}

TEST_CASE("continuity probes in the bounded functions") {
  const SpaceSpec hinf = SpaceSpec::sup_holo(Weight::one());
  const std::vector<double> ts{0.1, 0.01, 0.001};
  const WcSemigroup dil{make_catalog_semiflow("dilation"), unit_cocycle(), hinf};
  const ContinuityProbe d = continuity_probe(dil, fns::identity(), ts, {0.5, 0.9});
  for (const auto& rec : d.records) CHECK(rec.norm_residual == doctest::Approx(1.0 - std::exp(-rec.t)).epsilon(1e-4));
  CHECK(d.gamma_verdict);
  CHECK(d.norm_verdict);

  const WcSemigroup rot{make_catalog_semiflow("rotation", {{"rate", 0.25}}), unit_cocycle(), hinf};
  const ContinuityProbe r = continuity_probe(rot, fns::singular_inner(), ts, {0.5, 0.9});
  for (const auto& rec : r.records) {
    CHECK(rec.norm_residual >= 0.1);
    CHECK(rec.norm_of_Cf <= 1.0);
  }
  CHECK(r.gamma_verdict);
  CHECK_FALSE(r.norm_verdict);
}

TEST_CASE("equicontinuity on compacts") {
  const Semiflow dil = make_catalog_semiflow("dilation");
  const EquicontinuityReport d =
      equicontinuity_probe({dil, derivative_cocycle(dil), SpaceSpec::hardy(2.0)}, 1.0, 0.9);
  CHECK(d.R_prime == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(d.M_prime == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.holds);
  const Semiflow att = make_catalog_semiflow("attracting");
  const EquicontinuityReport a = equicontinuity_probe({att, unit_cocycle(), SpaceSpec::hardy(2.0)}, 1.0, 0.9);
  CHECK(a.R_prime <= 0.96321205588285577601 + 1e-12);
  CHECK(a.holds);
}

TEST_CASE("default corpus") {
  CHECK(default_testset(Domain::unit_disc()).size() == 15);
  CHECK(default_testset(Domain::real_line()).size() == 5);
}
