#pragma once

// Semiflows: a closed-form catalog, law residuals, finite-difference
// generators, fixed points and RK4 reconstruction from a generator.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wcsg/holo.hpp"

namespace wcsg {

struct OdeCfg {
  double h0 = 1e-3;
  double tol_step = 1e-10;
  double exit_margin = 1e-9;

  void validate() const;
};

struct CatalogOrigin {
  std::string name;
  std::map<std::string, double> params;
};

struct OdeOrigin {
  HoloFn G;
  OdeCfg cfg;
};

struct Semiflow {
  Domain domain = Domain::unit_disc();
  std::function<Complex(double, Complex)> eval;
  std::variant<CatalogOrigin, OdeOrigin> origin;
  /// Generator G when known in closed form (catalog) or supplied (ODE).
  std::optional<HoloFn> generator;
  /// Closed-form spatial derivative of phi_t, if the catalog provides one.
  std::function<Complex(double, Complex)> spatial_derivative;
  std::string label;

  Complex operator()(double t, Complex z) const { return eval(t, z); }
  /// z -> phi_t(z) as a function on the flow's domain.
  HoloFn at(double t) const;
  /// phi_t'(z): closed form when available, otherwise numerical.
  Complex derivative_at(double t, Complex z, const QuadPolicy& policy) const;
};

/// Names: dilation (c, or c_re/c_im), attracting, rotation (rate), translation-real,
/// cubic-real, identity.
Semiflow make_catalog_semiflow(const std::string& name, const std::map<std::string, double>& params = {});

std::vector<std::string> catalog_semiflow_names();

/// max |phi_{t+s}(z) - phi_t(phi_s(z))| and |phi_0(z) - z| over the samples.
double semiflow_law_residual(const Semiflow& phi, const std::vector<double>& ts,
                             const std::vector<Complex>& grid);

struct GeneratorEstimate {
  Complex value;
  double order_evidence;  // observed order of the raw quotients, NaN if exact
  std::vector<double> steps_used;
};

/// Right derivative of t -> phi_t(z) at 0 from one-sided quotients and
/// Richardson extrapolation.
GeneratorEstimate generator_fd(const Semiflow& phi, Complex z,
                               const std::vector<double>& steps = {1e-2, 5e-3, 2.5e-3});

/// Extrapolated limit of D(h) for the step ladder; shared with the cocycle
/// module. NonConvergent when the tableau corrections do not settle.
GeneratorEstimate extrapolated_quotient(const std::function<Complex(double)>& quotient,
                                        const std::vector<double>& steps);

struct FixedPointReport {
  std::vector<Complex> zeros;         // zeros of G found by Newton
  std::vector<Complex> fixed_points;  // zeros that phi also fixes
  std::vector<double> phi_residuals;  // max_t |phi_t(b) - b| per zero
  bool trivial_flow = false;          // G vanishes on the whole grid
};

FixedPointReport fixed_points(const Semiflow& phi, const HoloFn& G, const std::vector<Complex>& grid,
                              const QuadPolicy& policy = {}, double tol = 1e-8);

/// Smallest sampled t > 0 with |G(phi_t(x))| < tol, i.e. a return of the
/// trajectory to the zero set of G. Evidence only.
std::optional<double> min_revisit_time(const Semiflow& phi, const HoloFn& G, Complex x,
                                       const std::vector<double>& ts, double tol = 1e-10);

/// Semiflow integrating u' = G(u), u(0) = z with RK4 and step halving.
Semiflow semiflow_from_generator(const HoloFn& G, const OdeCfg& cfg = {});

/// max |G(phi_t(z)) - phi_t'(z) G(z)| with phi_t' from Cauchy integrals.
double chain_rule_residual(const Semiflow& phi, const HoloFn& G, const std::vector<double>& ts,
                           const std::vector<Complex>& grid, const QuadPolicy& policy = {});

}  // namespace wcsg
