#pragma once

// Norms, compact-open seminorms and mixed-topology diagnostics for the Hardy,
// weighted Bergman, Dirichlet, v-Bloch and weighted sup spaces.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wcsg/holo.hpp"

namespace wcsg {

/// Strictly positive weight v on a domain.
struct Weight {
  std::string label;
  std::function<double(Complex)> eval;
  /// Exponent alpha when this is the standard weight (1 - |z|^2)^alpha.
  std::optional<double> standard_alpha;

  double operator()(Complex z) const { return eval(z); }

  static Weight one();
  /// (1 - |z|^2)^alpha on the unit disc.
  static Weight standard(double alpha);
  /// exp(-|z|), useful on the real line and the plane.
  static Weight exp_abs();
};

enum class SpaceKind { Hardy, Bergman, Dirichlet, Bloch, SupWeightedHolo, SupWeightedCont };

std::string to_string(SpaceKind kind);

struct SpaceSpec {
  SpaceKind kind = SpaceKind::Hardy;
  double p = 2.0;      // Hardy, Bergman
  double alpha = 0.0;  // Bergman
  Weight weight = Weight::one();  // Bloch and sup-type spaces
  Domain domain = Domain::unit_disc();
  QuadPolicy policy{};
  /// Initial half-width of the real grid for continuous weighted spaces.
  double real_extent = 32.0;

  static SpaceSpec hardy(double p);
  static SpaceSpec bergman(double alpha, double p);
  static SpaceSpec dirichlet();
  static SpaceSpec bloch(Weight v);
  static SpaceSpec sup_holo(Weight v);
  static SpaceSpec sup_cont(Weight v);

  bool is_sup_type() const;
  std::string describe() const;
  void validate() const;
};

/// Radius parameter of the directed seminorm systems. On the disc s lies in
/// (0,1); on the real line s is the half-width of the compact [-s, s].
struct SeminormIndex {
  double s;
};

/// A finite stretch of a null sequence (p_n, a_n): seminorm radii and weights.
/// The tail is supposed to be negligible: weights nonincreasing after their
/// maximum and the last weight below 1e-6 of the maximum.
struct NullSequence {
  std::function<double(std::size_t)> radius;
  std::function<double(std::size_t)> weight;
  std::size_t length = 0;

  void validate() const;
};

struct NormDetail {
  double value = 0.0;             // reported norm (extrapolated to the boundary)
  double truncated = 0.0;         // seminorm at r_cap
  double truncated_inner = 0.0;   // seminorm at the outermost extra truncation radius
  double truncation_radius = 0.0;
  double refinement_delta = 0.0;  // grid refinement gain (sup-type) or node-doubling change
  double real_extent = 0.0;       // half-width used on the real line, else 0
};

struct GridMax {
  double value = 0.0;  // certified lower bound of the supremum
  double delta = 0.0;  // increase contributed by the refinement passes
  Complex argmax{};
};

/// Supremum of h over |z| <= s (disc) or |x| <= s (real line) by a clustered
/// grid followed by two local refinement passes.
GridMax grid_sup(const std::function<double(Complex)>& h, const Domain& domain, double s,
                 const QuadPolicy& policy);

double norm(const SpaceSpec& space, const HoloFn& f);
NormDetail norm_detail(const SpaceSpec& space, const HoloFn& f);

double co_seminorm(const SpaceSpec& space, const HoloFn& f, SeminormIndex idx);

struct SaksCheck {
  double norm = 0.0;
  double max_seminorm = 0.0;
  double gap = 0.0;
  std::vector<double> radii;
  std::vector<double> seminorms;
  bool monotone = true;
  bool pass = false;
};

/// Verifies that the norm is the supremum of the generating seminorms over
/// the given increasing radii; pass iff monotone and 0 <= gap < gap_tol
/// (up to quadrature slack).
SaksCheck saks_sup_check(const SpaceSpec& space, const HoloFn& f, const std::vector<double>& radii,
                         double gap_tol = 1e-3);

double submixed_seminorm(const SpaceSpec& space, const HoloFn& f, const NullSequence& ns);

struct GammaVerdict {
  std::vector<double> co_residuals;  // per index: max over radii
  std::vector<double> norms;
  double sup_norm = 0.0;
  bool co_convergent = false;
  bool norm_bounded = false;
  bool gamma_convergent = false;
};

/// Sequential mixed-topology criterion: compact-open convergence to `limit`
/// together with norm boundedness of the sequence.
GammaVerdict gamma_convergence_probe(const SpaceSpec& space, const std::vector<HoloFn>& seq,
                                     const HoloFn& limit, const std::vector<double>& radii,
                                     double tol_conv = 1e-3, double norm_cap = 1e6);

/// \int_0^{|z|} ds / v(s z/|z|), the growth allowance of Bloch functions.
double bloch_radial_integral(const Weight& v, Complex z);

}  // namespace wcsg
