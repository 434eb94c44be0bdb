#pragma once

// Multiplicative semicocycles for a semiflow: integral, coboundary and
// derivative constructions, law checks, admissibility and growth envelopes.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wcsg/flows.hpp"
#include "wcsg/holo.hpp"

namespace wcsg {

struct DeclaredZero {
  Complex point;
  int order = 1;
};

struct ExplicitOrigin {
  std::string name;
};
struct IntegralOrigin {
  HoloFn g;
  QuadPolicy policy;
};
struct CoboundaryOrigin {
  HoloFn omega;
  std::vector<DeclaredZero> zeros;
};
struct DerivativeOrigin {};

struct Semicocycle {
  Domain domain = Domain::unit_disc();
  std::function<Complex(double, Complex)> eval;
  std::variant<ExplicitOrigin, IntegralOrigin, CoboundaryOrigin, DerivativeOrigin> origin;
  /// d/dt m_t at t = 0 when known in closed form.
  std::optional<HoloFn> rate;
  std::string label;

  Complex operator()(double t, Complex z) const { return eval(t, z); }
  HoloFn at(double t) const;
};

/// m_t = 1.
Semicocycle unit_cocycle(Domain domain = Domain::unit_disc());

/// m_t(z) = exp(t g(z)); a semicocycle for the identity flow (and for any
/// flow leaving g invariant).
Semicocycle exponential_cocycle(const HoloFn& g);

/// m_t = phi_t'.
Semicocycle derivative_cocycle(const Semiflow& phi, const QuadPolicy& policy = {});

/// m_t(z) = exp(\int_0^t g(phi_s(z)) ds) with ceil(32 max(1,t)) Gauss-Legendre
/// nodes, certified against the doubled rule.
Semicocycle cocycle_from_g(const HoloFn& g, const Semiflow& phi, const QuadPolicy& policy = {});

struct CoboundaryCfg {
  double zero_guard = 1e-3;
  double tol = 1e-7;
  int interpolation_nodes = 64;
};

/// m_t = omega(phi_t)/omega away from the declared zeros, (phi_t')^ord at them.
Semicocycle coboundary(const HoloFn& omega, const Semiflow& phi, const std::vector<DeclaredZero>& zeros,
                       const CoboundaryCfg& cfg = {}, const QuadPolicy& policy = {});

/// max |m_{t+s}(z) - m_t(z) m_s(phi_t(z))| and |m_0(z) - 1|.
double cocycle_law_residual(const Semicocycle& m, const Semiflow& phi, const std::vector<double>& ts,
                            const std::vector<Complex>& grid);

/// Richardson-extrapolated (m_h(z) - 1)/h.
GeneratorEstimate mdot0(const Semicocycle& m, Complex z,
                        const std::vector<double>& steps = {1e-2, 5e-3, 2.5e-3});

struct AdmissibilityRecord {
  Complex point;
  Complex ratio;      // g(b) / G'(b)
  long nearest = 0;   // nearest nonnegative integer to Re ratio
  double distance = 0.0;
  bool admissible = false;
  bool degenerate = false;  // |G'(b)| < tol, ratio undefined
};

std::vector<AdmissibilityRecord> coboundary_admissibility(const HoloFn& g, const HoloFn& G,
                                                          const HoloFn& Gprime,
                                                          const std::vector<Complex>& fixed_points,
                                                          double tol = 1e-8);

struct GrowthFit {
  double M = 1.0;
  double omega = 0.0;
  std::vector<std::pair<double, double>> samples;  // (t, sup |m_t| over the grid)
  double M_lsq = 1.0;      // least-squares diagnostic, M raised to dominate
  double omega_lsq = 0.0;
};

/// Exponential envelope M e^{omega t} of the sampled sup-norms, anchored at
/// t = 0 so that M = max(1, sup |m_0|).
GrowthFit growth_fit(const Semicocycle& m, const std::vector<double>& ts, const std::vector<Complex>& grid);

/// Polar grid dense towards |z| = r_cap (log-clustered rings), or a wide
/// real grid on real-line domains.
std::vector<Complex> boundary_dense_grid(const Domain& domain, double r_cap = 1.0 - 1e-6, int spokes = 64);

}  // namespace wcsg
