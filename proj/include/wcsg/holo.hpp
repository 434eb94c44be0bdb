#pragma once

// Complex-analytic function calculus shared by every other module: evaluator
// backed functions, Cauchy-integral differentiation, circle means and disc
// quadrature.

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace wcsg {

using Complex = std::complex<double>;

enum class DomainKind { UnitDisc, Disc, RealLine, Plane };

struct Domain {
  DomainKind kind = DomainKind::UnitDisc;
  double radius = 1.0;  // meaningful for UnitDisc and Disc

  static Domain unit_disc() { return {DomainKind::UnitDisc, 1.0}; }
  static Domain disc(double r);
  static Domain real_line() { return {DomainKind::RealLine, 0.0}; }
  static Domain plane() { return {DomainKind::Plane, 0.0}; }

  bool is_real() const { return kind == DomainKind::RealLine; }
  bool is_bounded() const { return kind == DomainKind::UnitDisc || kind == DomainKind::Disc; }
  /// Strict containment with an optional safety margin from the boundary.
  bool contains(Complex z, double margin = 0.0) const;
  double boundary_distance(Complex z) const;
  std::string describe() const;

  friend bool operator==(const Domain&, const Domain&) = default;
};

enum class FnKind { ClosedForm, Series, Composite };

/// A function given by an evaluator over a declared domain. For real-line
/// domains the evaluator is called with purely real arguments.
struct HoloFn {
  Domain domain = Domain::unit_disc();
  std::function<Complex(Complex)> eval;
  FnKind kind = FnKind::ClosedForm;
  std::string label;

  Complex operator()(Complex z) const { return eval(z); }
};

struct QuadPolicy {
  int n_theta = 256;
  int n_radial = 128;
  double r_cap = 1.0 - 1e-6;
  double tol = 1e-8;

  void validate() const;
};

// ---------------------------------------------------------------------------
// Function catalog

namespace fns {

HoloFn constant(Complex c, Domain domain = Domain::unit_disc());
HoloFn one(Domain domain = Domain::unit_disc());
HoloFn identity(Domain domain = Domain::unit_disc());
/// e_n(z) = z^n
HoloFn monomial(int n, Domain domain = Domain::unit_disc());
/// z -> exp(a z)
HoloFn exp_scaled(Complex a, Domain domain = Domain::unit_disc());
/// Reproducing-kernel style Möbius function z -> 1 / (1 - conj(a) z), |a| < 1.
HoloFn mobius_kernel(Complex a);
/// Disc automorphism z -> (a - z) / (1 - conj(a) z).
HoloFn mobius(Complex a);
/// Atomic singular inner function z -> exp((z + 1) / (z - 1)).
HoloFn singular_inner();

HoloFn sum(const HoloFn& f, const HoloFn& g);
HoloFn difference(const HoloFn& f, const HoloFn& g);
HoloFn product(const HoloFn& f, const HoloFn& g);
HoloFn scaled(Complex c, const HoloFn& f);
HoloFn compose(const HoloFn& outer, const HoloFn& inner);

}  // namespace fns

// ---------------------------------------------------------------------------
// Quadrature primitives

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n nodes; rules are cached and safe to share.
const GaussRule& gauss_legendre(int n);

/// Integral of a complex-valued integrand over [a, b] with an n-node rule.
Complex integrate_gl(const std::function<Complex(double)>& g, double a, double b, int n);
double integrate_gl_real(const std::function<double(double)>& g, double a, double b, int n);

/// f'(z) from (1/2 pi i) \oint f(w)/(w-z)^2 dw over the circle |w - z| = radius,
/// trapezoid rule with node doubling until agreement.
Complex cauchy_derivative(const HoloFn& f, Complex z, double radius, const QuadPolicy& policy);

/// f'(z) with an automatically chosen contour (holomorphic kinds) or central
/// differences with Richardson extrapolation (real-line domains).
Complex derivative(const HoloFn& f, Complex z, const QuadPolicy& policy);

/// Derivative as a function: z -> f'(z).
HoloFn derivative_fn(const HoloFn& f, const QuadPolicy& policy);

/// (1/2pi) \int_0^{2pi} |f(r e^{i theta})|^p d theta with policy.n_theta nodes.
double circle_mean_p(const HoloFn& f, double r, double p, const QuadPolicy& policy);
double circle_mean_p(const HoloFn& f, double r, double p, int nodes);

/// \iint_{|z| < r} g dA, Gauss-Legendre radially and trapezoid angularly.
double disc_integral(const std::function<double(Complex)>& g, double r, const QuadPolicy& policy);

/// ((alpha+1)/pi) \iint_{|z|<r} F(z) (1-|z|^2)^alpha dA where `circle_mean`
/// returns the angular mean of F at a given radius. The radial variable is
/// changed so that the boundary weight becomes polynomial or nearly so, which
/// clusters nodes next to |z| = 1.
double weighted_disc_average(const std::function<double(double)>& circle_mean, double alpha,
                             double r, int n_radial);

// ---------------------------------------------------------------------------
// Extrapolation and sampling

struct Extrapolation {
  Complex value;
  double order_evidence;  // NaN when successive differences vanish
  double last_correction;
};

/// Polynomial (Neville) extrapolation to h = 0 of values D(h_i) whose error
/// expands in integer powers of h. Steps must be positive and decreasing.
Extrapolation extrapolate_to_zero(std::span<const Complex> values, std::span<const double> steps);

/// Polar sample grid: origin plus `rings` circles up to `radius`, `spokes` per
/// circle. For real-line domains a symmetric uniform grid on [-radius, radius].
std::vector<Complex> sample_grid(const Domain& domain, double radius, int rings, int spokes);

bool is_finite(Complex z);

}  // namespace wcsg
