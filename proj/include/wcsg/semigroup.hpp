#pragma once

// Weighted composition semigroups C(t)f = m_t (f o phi_t) on a function
// space: laws, operator-norm brackets, generator checks and continuity probes.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wcsg/cocycles.hpp"
#include "wcsg/flows.hpp"
#include "wcsg/spaces.hpp"

namespace wcsg {

/// Version tag of the default test-function corpus.
inline constexpr const char* kTestsetVersion = "corpus-v1";

/// Disc: e_0..e_8, Möbius kernels 1/(1 - conj(a) z) for five points a and the
/// atomic singular inner function. Real line: 1, e^x, e^{-x^2}, x/(1+x^2), cos x.
std::vector<HoloFn> default_testset(const Domain& domain);

struct WcSemigroup {
  Semiflow phi;
  Semicocycle m;
  SpaceSpec space;

  /// z -> m_t(z) f(phi_t(z)).
  HoloFn apply(double t, const HoloFn& f) const;
};

/// max over grid and test functions of |C(t+s)f - C(t)C(s)f|, relative to
/// max(1, |C(t+s)f|). An empty test set selects the default corpus.
double semigroup_residual(const WcSemigroup& sg, double t, double s, const std::vector<Complex>& grid,
                          const std::vector<HoloFn>& testset = {});

struct BoundResult {
  double t = 0.0;
  double theoretical = 0.0;
  double empirical_lower = 0.0;
  std::string formula_tag;  // hardy, bergman, dirichlet, bloch, supweight
  std::map<std::string, double> components;
};

/// Operator-norm upper bound of C(t) from the closed-form estimates; sup-type
/// ingredients come from grid maximization. empirical_lower is left at 0.
BoundResult theoretical_bound(const WcSemigroup& sg, double t);

struct LowerBound {
  double value = 0.0;
  std::string witness;
  std::vector<std::string> skipped;  // test functions whose norms failed
};

/// max over the test set of ||C(t)f|| / ||f||.
LowerBound operator_norm_lower_bound(const WcSemigroup& sg, double t, const std::vector<HoloFn>& testset = {});

/// z -> G(z) f'(z) + g(z) f(z).
HoloFn generator_formula_apply(const HoloFn& G, const HoloFn& g, const HoloFn& f, const QuadPolicy& policy = {});

struct GeneratorCheck {
  std::vector<double> steps;
  std::vector<double> raw_residuals;  // sup_z |D_h f - Af| per step
  double extrapolated_residual = 0.0; // after pointwise Richardson
  double observed_order = 0.0;        // NaN when the raw residuals vanish
  std::vector<double> ladder_steps;   // h in {1, 0.5, 0.1, 0.01, 0.001}
  std::vector<double> ladder_norms;   // ||(C(h)f - f)/h||, NaN when a norm failed
  bool ladder_bounded = true;         // false -> "not in D(A)"
};

struct GeneratorCheckCfg {
  std::vector<double> steps{1e-2, 5e-3, 2.5e-3, 1.25e-3};
  double radius = 0.9;
  bool norm_ladder = true;
};

GeneratorCheck generator_residual(const WcSemigroup& sg, const HoloFn& G, const HoloFn& g, const HoloFn& f,
                                  const GeneratorCheckCfg& cfg = {});

struct ContinuityRecord {
  double t = 0.0;
  double norm_residual = 0.0;
  std::vector<std::pair<double, double>> co_residuals;  // (radius, residual)
  double norm_of_Cf = 0.0;
};

struct ContinuityProbe {
  std::vector<ContinuityRecord> records;
  bool gamma_verdict = false;  // co-residuals small at the last t and norms bounded
  bool norm_verdict = false;   // norm residual small at the last t
};

ContinuityProbe continuity_probe(const WcSemigroup& sg, const HoloFn& f, const std::vector<double>& ts,
                                 const std::vector<double>& radii, double tol_conv = 1e-3, double norm_cap = 1e6);

struct EquicontinuityReport {
  double R_prime = 0.0;  // sup |phi_t(z)| over t <= t0, |z| <= K
  double M_prime = 0.0;  // sup |m_t(z)| over the same set
  bool holds = false;
};

EquicontinuityReport equicontinuity_probe(const WcSemigroup& sg, double t0, double K_radius,
                                          double margin = 1e-6);

}  // namespace wcsg
