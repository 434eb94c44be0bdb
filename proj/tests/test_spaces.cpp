#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "wcsg/spaces.hpp"

using namespace wcsg;

TEST_CASE("hardy norms of monomials are one") {
  for (const double p : {1.0, 2.0, 4.0}) {
    for (int n = 0; n <= 8; ++n) CHECK(std::abs(norm(SpaceSpec::hardy(p), fns::monomial(n)) - 1.0) < 1e-8);
  }
}

TEST_CASE("bergman and dirichlet reference norms") {
  CHECK(norm(SpaceSpec::bergman(0.0, 2.0), fns::monomial(1)) == doctest::Approx(0.7071067811865475244).epsilon(1e-10));
  CHECK(std::pow(norm(SpaceSpec::bergman(0.5, 4.0), fns::monomial(4)), 4.0) ==
        doctest::Approx(0.047295532125253487483).epsilon(1e-9));
  CHECK(std::pow(norm(SpaceSpec::bergman(-0.5, 2.0), fns::monomial(8)), 2.0) ==
        doctest::Approx(0.29953837012660542072).epsilon(1e-9));
  CHECK(norm(SpaceSpec::dirichlet(), fns::monomial(3)) == doctest::Approx(1.7320508075688772935).epsilon(1e-8));
  const HoloFn one_plus_z = fns::sum(fns::one(), fns::identity());
  CHECK(norm(SpaceSpec::dirichlet(), one_plus_z) == doctest::Approx(1.4142135623730950488).epsilon(1e-8));
}

TEST_CASE("sup-type norms") {
  CHECK(norm(SpaceSpec::sup_holo(Weight::standard(1.0)), fns::identity()) ==
        doctest::Approx(0.38490017945975050967).epsilon(1e-10));
  CHECK(norm(SpaceSpec::bloch(Weight::standard(1.0)), fns::monomial(2)) ==
        doctest::Approx(0.76980035891950101935).epsilon(1e-10));
  const NormDetail d = norm_detail(SpaceSpec::sup_cont(Weight::exp_abs()), fns::exp_scaled(0.5, Domain::real_line()));
  CHECK(d.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.real_extent > 0.0);
  CHECK(error_kind([] { norm(SpaceSpec::sup_cont(Weight::exp_abs()), fns::exp_scaled(2.0, Domain::real_line())); }) ==
        ErrorKind::Unbounded);
}

TEST_CASE("compact-open seminorms") {
  CHECK(co_seminorm(SpaceSpec::dirichlet(), fns::identity(), {0.5}) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(co_seminorm(SpaceSpec::hardy(2.0), fns::monomial(2), {0.9}) == doctest::Approx(0.81).epsilon(1e-12));
  CHECK(error_kind([] { co_seminorm(SpaceSpec::hardy(2.0), fns::identity(), {1.0}); }) == ErrorKind::InvalidParam);
}

TEST_CASE("norm is the supremum of the seminorms") {
  const std::vector<double> radii{0.5, 0.9, 0.99, 0.999, 0.9999};
  const SaksCheck h = saks_sup_check(SpaceSpec::hardy(2.0), fns::sum(fns::one(), fns::identity()), radii);
  CHECK(h.pass);
  CHECK(h.norm == doctest::Approx(1.4142135623730950488).epsilon(1e-8));
  const SaksCheck d = saks_sup_check(SpaceSpec::dirichlet(), fns::monomial(2), radii);
  CHECK(d.pass);
  CHECK(d.gap < 1e-3);
}

TEST_CASE("submixed seminorm over a null sequence") {
  NullSequence ns;
  ns.radius = [](std::size_t n) { return 1.0 - std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(n, 40))); };
  ns.weight = [](std::size_t n) { return 1.0 / static_cast<double>(n); };
  ns.length = 1'100'000;
  CHECK(submixed_seminorm(SpaceSpec::hardy(2.0), fns::identity(), ns) == doctest::Approx(0.5).epsilon(1e-12));
  ns.length = 10;
  CHECK(error_kind([&] { ns.validate(); }) == ErrorKind::InvalidParam);
}

TEST_CASE("gamma convergence of monomials in the bounded functions") {
  std::vector<HoloFn> seq;
  for (int k = 10; k <= 80; k += 10) seq.push_back(fns::monomial(k));
  const GammaVerdict g =
      gamma_convergence_probe(SpaceSpec::sup_holo(Weight::one()), seq, fns::constant(0.0), {0.5, 0.9});
  CHECK(g.gamma_convergent);
  CHECK(g.co_residuals.back() == doctest::Approx(std::pow(0.9, 80)).epsilon(1e-9));
  for (const double n : g.norms) CHECK(n == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("space validation") {
  CHECK(error_kind([] { SpaceSpec::hardy(0.5).validate(); }) == ErrorKind::InvalidParam);
  CHECK(error_kind([] { SpaceSpec::bergman(-1.0, 2.0).validate(); }) == ErrorKind::InvalidParam);
  CHECK(bloch_radial_integral(Weight::one(), 0.5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(bloch_radial_integral(Weight::standard(1.0), 0.5) == doctest::Approx(std::atanh(0.5)).epsilon(1e-12));
}
