#include "wcsg/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "wcsg/errors.hpp"

namespace wcsg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kOverflowGuard = 1e150;
constexpr int kCandidates = 8;

double guard(double value, const std::string& what) {
  if (!std::isfinite(value) || value > kOverflowGuard) {
    fail(ErrorKind::Unbounded, what + " exceeds the overflow guard");
  }
  return value;
}

bool vanishes_on_samples(const HoloFn& f) {
  const double reach = f.domain.is_real() ? 8.0 : 0.99 * f.domain.radius;
  for (const Complex z : sample_grid(f.domain, reach, 6, 24)) {
    if (f(z) != Complex(0.0, 0.0)) return false;
  }
  return true;
}

/// Circle p-mean at radius r with the node-doubling certificate.
double hardy_mean(const HoloFn& f, double r, double p, const QuadPolicy& policy, double* delta) {
  const double coarse = circle_mean_p(f, r, p, policy.n_theta);
  const double fine = circle_mean_p(f, r, p, 2 * policy.n_theta);
  const double change = std::abs(fine - coarse);
  if (change > 100.0 * policy.tol * std::max(fine, std::numeric_limits<double>::min())) {
    fail(ErrorKind::NonConvergent, "circle mean of " + f.label + " changed under node doubling");
  }
  if (delta) *delta = std::max(*delta, change);
  return guard(fine, "circle mean of " + f.label);
}

/// ((alpha+1)/pi) \int_{D_r} |f|^p (1-|z|^2)^alpha with a refinement certificate.
double bergman_average(const HoloFn& f, double alpha, double p, double r, const QuadPolicy& policy,
                       double* delta, double scale_floor = 0.0) {
  const auto mean_at = [&](int n_theta) {
    return [&f, p, n_theta](double rho) { return circle_mean_p(f, rho, p, n_theta); };
  };
  const double fine = weighted_disc_average(mean_at(2 * policy.n_theta), alpha, r, policy.n_radial);
  const double coarse =
      weighted_disc_average(mean_at(policy.n_theta), alpha, r, std::max(8, policy.n_radial / 2));
  const double change = std::abs(fine - coarse);
  if (change > 100.0 * policy.tol * std::max({fine, scale_floor, std::numeric_limits<double>::min()})) {
    fail(ErrorKind::NonConvergent, "area integral of " + f.label + " changed under refinement");
  }
  if (delta) *delta = std::max(*delta, change);
  return guard(fine, "area integral of " + f.label);
}

double dirichlet_square(const HoloFn& f, double r, const QuadPolicy& policy, double* delta) {
  const double at_zero = std::norm(f(Complex(0.0, 0.0)));
  if (r == 0.0) return at_zero;
  const HoloFn fprime = derivative_fn(f, policy);
  return at_zero + bergman_average(fprime, 0.0, 2.0, r, policy, delta, at_zero);
}

std::vector<double> radial_nodes(double s, int n_radial) {
  std::vector<double> radii;
  for (int i = 0; i <= n_radial; ++i) radii.push_back(s * i / n_radial);
  if (s > 0.9) {
    const int m = std::max(4, n_radial / 4);
    const double span = std::log10(0.1 / (1.0 - s));
    for (int k = 0; k <= m; ++k) radii.push_back(1.0 - (1.0 - s) * std::pow(10.0, span * k / m));
  }
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  return radii;
}

struct Candidate {
  double value;
  double rho;    // radius (disc) or abscissa (real line)
  double theta;
  double d_rho;
  double d_theta;
};

void keep_best(std::vector<Candidate>& best, const Candidate& c) {
  if (best.size() < static_cast<std::size_t>(kCandidates)) {
    best.push_back(c);
  } else {
    auto worst = std::min_element(best.begin(), best.end(),
                                  [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
    if (c.value > worst->value) *worst = c;
  }
}

}  // namespace

// ---------------------------------------------------------------------------

Weight Weight::one() { return {"1", [](Complex) { return 1.0; }, 0.0}; }

Weight Weight::standard(double alpha) {
  if (!(alpha >= 0.0)) fail(ErrorKind::InvalidParam, "standard weight exponent must be >= 0");
  std::ostringstream os;
  os << "(1-|z|^2)^" << alpha;
  return {os.str(), [alpha](Complex z) { return std::pow(std::max(0.0, 1.0 - std::norm(z)), alpha); },
          alpha};
}

Weight Weight::exp_abs() {
  return {"exp(-|z|)", [](Complex z) { return std::exp(-std::abs(z)); }, std::nullopt};
}

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Hardy: return "hardy";
    case SpaceKind::Bergman: return "bergman";
    case SpaceKind::Dirichlet: return "dirichlet";
    case SpaceKind::Bloch: return "bloch";
    case SpaceKind::SupWeightedHolo: return "sup-holo";
    case SpaceKind::SupWeightedCont: return "sup-cont";
  }
  return "unknown";
}

SpaceSpec SpaceSpec::hardy(double p) {
  SpaceSpec s;
  s.kind = SpaceKind::Hardy;
  s.p = p;
  s.validate();
  return s;
}

SpaceSpec SpaceSpec::bergman(double alpha, double p) {
  SpaceSpec s;
  s.kind = SpaceKind::Bergman;
  s.alpha = alpha;
  s.p = p;
  s.validate();
  return s;
}

SpaceSpec SpaceSpec::dirichlet() {
  SpaceSpec s;
  s.kind = SpaceKind::Dirichlet;
  return s;
}

SpaceSpec SpaceSpec::bloch(Weight v) {
  SpaceSpec s;
  s.kind = SpaceKind::Bloch;
  s.weight = std::move(v);
  s.validate();
  return s;
}

SpaceSpec SpaceSpec::sup_holo(Weight v) {
  SpaceSpec s;
  s.kind = SpaceKind::SupWeightedHolo;
  s.weight = std::move(v);
  s.validate();
  return s;
}

SpaceSpec SpaceSpec::sup_cont(Weight v) {
  SpaceSpec s;
  s.kind = SpaceKind::SupWeightedCont;
  s.weight = std::move(v);
  s.domain = Domain::real_line();
  s.validate();
  return s;
}

bool SpaceSpec::is_sup_type() const {
  return kind == SpaceKind::Bloch || kind == SpaceKind::SupWeightedHolo ||
         kind == SpaceKind::SupWeightedCont;
}

std::string SpaceSpec::describe() const {
  std::ostringstream os;
  os << to_string(kind);
  switch (kind) {
    case SpaceKind::Hardy: os << "(p=" << p << ")"; break;
    case SpaceKind::Bergman: os << "(alpha=" << alpha << ",p=" << p << ")"; break;
    case SpaceKind::Dirichlet: break;
    default: os << "(v=" << weight.label << ")"; break;
  }
  return os.str();
}

void SpaceSpec::validate() const {
  policy.validate();
  if ((kind == SpaceKind::Hardy || kind == SpaceKind::Bergman) && !(p >= 1.0)) {
    fail(ErrorKind::InvalidParam, "exponent p must be >= 1");
  }
  if (kind == SpaceKind::Bergman && !(alpha > -1.0)) {
    fail(ErrorKind::InvalidParam, "Bergman weight exponent must exceed -1");
  }
  if (kind == SpaceKind::SupWeightedCont && !domain.is_real()) {
    fail(ErrorKind::InvalidParam, "continuous weighted spaces live on the real line here");
  }
  if (kind != SpaceKind::SupWeightedCont && !domain.is_bounded()) {
    fail(ErrorKind::InvalidParam, to_string(kind) + " needs a disc domain");
  }
  if (is_sup_type()) {
    if (!weight.eval) fail(ErrorKind::InvalidParam, "sup-type space without a weight");
    const double reach = domain.is_real() ? real_extent : policy.r_cap * domain.radius;
    for (const Complex z : sample_grid(domain, reach, 8, 16)) {
      const double v = weight(z);
      if (!(v > 0.0) || !std::isfinite(v)) {
        fail(ErrorKind::InvalidParam, "weight " + weight.label + " is not strictly positive");
      }
    }
  }
}

void NullSequence::validate() const {
  if (length == 0 || !radius || !weight) fail(ErrorKind::InvalidParam, "empty null sequence");
  double max_w = 0.0;
  std::size_t arg_max = 1;
  for (std::size_t n = 1; n <= length; ++n) {
    const double s = radius(n);
    const double a = weight(n);
    if (!(s >= 0.0 && s < 1.0)) fail(ErrorKind::InvalidParam, "null-sequence radius outside [0,1)");
    if (!(a >= 0.0)) fail(ErrorKind::InvalidParam, "null-sequence weight negative");
    if (a > max_w) {
      max_w = a;
      arg_max = n;
    }
  }
  for (std::size_t n = arg_max + 1; n <= length; ++n) {
    if (weight(n) > weight(n - 1)) fail(ErrorKind::InvalidParam, "null-sequence tail not nonincreasing");
  }
  if (!(weight(length) < 1e-6 * max_w)) {
    fail(ErrorKind::InvalidParam, "null-sequence weights do not decay below 1e-6 of their maximum");
  }
}

// ---------------------------------------------------------------------------

GridMax grid_sup(const std::function<double(Complex)>& h, const Domain& domain, double s,
                 const QuadPolicy& policy) {
  std::vector<Candidate> best;
  const auto eval = [&](double rho, double theta) {
    const Complex z = domain.is_real() ? Complex(rho, 0.0) : std::polar(rho, theta);
    const double v = h(z);
    if (std::isnan(v)) fail(ErrorKind::Unbounded, "NaN while maximizing over the grid");
    return v;
  };

  if (domain.is_real()) {
    const int n = 8 * policy.n_radial;
    const double dx = 2.0 * s / n;
    for (int i = 0; i <= n; ++i) {
      const double x = -s + dx * i;
      keep_best(best, {eval(x, 0.0), x, 0.0, dx, 0.0});
    }
  } else {
    const auto radii = radial_nodes(s, policy.n_radial);
    const double d_theta = kTwoPi / policy.n_theta;
    keep_best(best, {eval(0.0, 0.0), 0.0, 0.0, radii.size() > 1 ? radii[1] : s, d_theta});
    for (std::size_t i = 1; i < radii.size(); ++i) {
      const double lower = radii[i] - radii[i - 1];
      const double upper = i + 1 < radii.size() ? radii[i + 1] - radii[i] : lower;
      const double d_rho = std::min(lower, upper);
      for (int k = 0; k < policy.n_theta; ++k) {
        keep_best(best, {eval(radii[i], d_theta * k), radii[i], d_theta * k, d_rho, d_theta});
      }
    }
  }

  const auto best_of = [](const std::vector<Candidate>& cs) {
    return std::max_element(cs.begin(), cs.end(),
                            [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
  };
  const double coarse = best_of(best)->value;

  const double lo = domain.is_real() ? -s : 0.0;
  for (int pass = 1; pass <= 2; ++pass) {
    const double shrink = std::pow(0.5, pass);
    for (auto& c : best) {
      Candidate local = c;
      for (int i = -2; i <= 2; ++i) {
        for (int k = -2; k <= 2; ++k) {
          if (i == 0 && k == 0) continue;
          if (domain.is_real() && k != 0) continue;
          const double rho = std::clamp(c.rho + 0.5 * i * shrink * c.d_rho, lo, s);
          const double theta = c.theta + 0.5 * k * shrink * c.d_theta;
          const double v = eval(rho, theta);
          if (v > local.value) local = {v, rho, theta, c.d_rho, c.d_theta};
        }
      }
      c = local;
    }
  }
  // compass search polishes the leading candidates down to rounding level
  std::sort(best.begin(), best.end(), [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
  for (std::size_t j = 0; j < std::min<std::size_t>(3, best.size()); ++j) {
    Candidate& c = best[j];
    double step_rho = 0.125 * c.d_rho;
    double step_theta = domain.is_real() ? 0.0 : 0.125 * c.d_theta;
    for (int iter = 0; iter < 400 && (step_rho > 1e-14 || step_theta > 1e-14); ++iter) {
      bool moved = false;
      const double dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
      for (const auto& d : dirs) {
        if (d[1] != 0.0 && step_theta == 0.0) continue;
        const double rho = std::clamp(c.rho + d[0] * step_rho, lo, s);
        const double theta = c.theta + d[1] * step_theta;
        const double v = eval(rho, theta);
        if (v > c.value) {
          c.value = v;
          c.rho = rho;
          c.theta = theta;
          moved = true;
        }
      }
      if (!moved) {
        step_rho *= 0.5;
        step_theta *= 0.5;
      }
    }
  }
  const auto top = best_of(best);
  const Complex arg = domain.is_real() ? Complex(top->rho, 0.0) : std::polar(top->rho, top->theta);
  return {top->value, top->value - coarse, arg};
}

double bloch_radial_integral(const Weight& v, Complex z) {
  const double r = std::abs(z);
  if (r == 0.0) return 0.0;
  const Complex dir = z / r;
  // s = 1 - e^{-u} spreads the nodes over the boundary layer of the disc
  const double u_max = -std::log1p(-std::min(r, 1.0 - 1e-15));
  const auto integrand = [&](double u) {
    const double s = -std::expm1(-u);
    return (1.0 - s) / v(s * dir);
  };
  return integrate_gl_real(integrand, 0.0, u_max, 64);
}

// ---------------------------------------------------------------------------

NormDetail norm_detail(const SpaceSpec& space, const HoloFn& f) {
  space.validate();
  NormDetail out;
  if (vanishes_on_samples(f)) return out;

  const QuadPolicy& pol = space.policy;
  const double r1 = pol.r_cap;
  const double r2 = 1.0 - (1.0 - pol.r_cap) / 10.0;
  out.truncation_radius = r1;

  // Linear extrapolation of a truncated quantity A(delta) to delta = 0.
  const auto extrapolate = [](double a1, double a2, double d1, double d2) {
    return a2 + (a2 - a1) * d2 / (d1 - d2);
  };

  switch (space.kind) {
    case SpaceKind::Hardy: {
      const double m1 = hardy_mean(f, r1, space.p, pol, &out.refinement_delta);
      const double m2 = hardy_mean(f, r2, space.p, pol, &out.refinement_delta);
      const double m = std::max(m2, extrapolate(m1, m2, 1.0 - r1, 1.0 - r2));
      out.truncated = std::pow(m1, 1.0 / space.p);
      out.truncated_inner = std::pow(m2, 1.0 / space.p);
      out.value = std::pow(m, 1.0 / space.p);
      break;
    }
    case SpaceKind::Bergman: {
      const double a1 = bergman_average(f, space.alpha, space.p, r1, pol, &out.refinement_delta);
      const double a2 = bergman_average(f, space.alpha, space.p, r2, pol, &out.refinement_delta);
      const double e = space.alpha + 1.0;
      const double d1 = std::pow(1.0 - r1 * r1, e);
      const double d2 = std::pow(1.0 - r2 * r2, e);
      out.truncated = std::pow(a1, 1.0 / space.p);
      out.truncated_inner = std::pow(a2, 1.0 / space.p);
      double limit = extrapolate(a1, a2, d1, d2);
      double floor = a2;
      if (space.alpha < 0.0) {
        // the next tail term u^{e+1} is still large next to u^e; cancel it too
        const double r3 = 1.0 - (1.0 - pol.r_cap) / 100.0;
        const double a3 = bergman_average(f, space.alpha, space.p, r3, pol, &out.refinement_delta);
        const double u[3] = {1.0 - r1 * r1, 1.0 - r2 * r2, 1.0 - r3 * r3};
        const double a[3] = {a1, a2, a3};
        double m[3][4];
        for (int i = 0; i < 3; ++i) {
          const double d = std::pow(u[i], e);
          m[i][0] = 1.0;
          m[i][1] = d;
          m[i][2] = d * u[i];
          m[i][3] = a[i];
        }
        for (int c = 2; c >= 1; --c) {  // eliminate the two tail columns
          for (int i = 0; i < c; ++i) {
            const double k = m[i][c] / m[c][c];
            for (int j = 0; j < 4; ++j) m[i][j] -= k * m[c][j];
          }
        }
        limit = m[0][3] / m[0][0];
        floor = a3;
        out.truncated_inner = std::pow(a3, 1.0 / space.p);
      }
      out.value = std::pow(std::max(floor, limit), 1.0 / space.p);
      break;
    }
    case SpaceKind::Dirichlet: {
      const double a1 = dirichlet_square(f, r1, pol, &out.refinement_delta);
      const double a2 = dirichlet_square(f, r2, pol, &out.refinement_delta);
      out.truncated = std::sqrt(a1);
      out.truncated_inner = std::sqrt(a2);
      out.value = std::sqrt(std::max(a2, extrapolate(a1, a2, 1.0 - r1 * r1, 1.0 - r2 * r2)));
      break;
    }
    case SpaceKind::Bloch: {
      const HoloFn fp = derivative_fn(f, pol);
      const auto h = [&](Complex z) { return std::abs(fp(z)) * space.weight(z); };
      const auto g = grid_sup(h, space.domain, r1 * space.domain.radius, pol);
      out.value = std::abs(f(Complex(0.0, 0.0))) + g.value;
      out.truncated = out.truncated_inner = out.value;
      out.refinement_delta = g.delta;
      break;
    }
    case SpaceKind::SupWeightedHolo: {
      const auto h = [&](Complex z) { return std::abs(f(z)) * space.weight(z); };
      const auto g = grid_sup(h, space.domain, r1 * space.domain.radius, pol);
      out.value = out.truncated = out.truncated_inner = g.value;
      out.refinement_delta = g.delta;
      break;
    }
    case SpaceKind::SupWeightedCont: {
      const auto h = [&](Complex x) { return std::abs(f(x)) * space.weight(x); };
      double extent = space.real_extent;
      auto inner = grid_sup(h, space.domain, extent, pol);
      while (true) {
        const auto outer = grid_sup(h, space.domain, 2.0 * extent, pol);
        guard(outer.value, "weighted sup of " + f.label);
        if (outer.value <= inner.value + pol.tol * std::max(1.0, inner.value)) break;
        extent *= 2.0;
        inner = outer;
        if (extent > 4096.0) fail(ErrorKind::Unbounded, "weighted sup of " + f.label + " keeps growing");
      }
      out.value = out.truncated = out.truncated_inner = inner.value;
      out.refinement_delta = inner.delta;
      out.real_extent = extent;
      out.truncation_radius = 0.0;
      break;
    }
  }
  guard(out.value, "norm of " + f.label);
  return out;
}

double norm(const SpaceSpec& space, const HoloFn& f) { return norm_detail(space, f).value; }

double co_seminorm(const SpaceSpec& space, const HoloFn& f, SeminormIndex idx) {
  const double s = idx.s;
  if (space.domain.is_real()) {
    if (!(s >= 0.0) || !std::isfinite(s)) fail(ErrorKind::InvalidParam, "seminorm half-width must be >= 0");
  } else if (!(s >= 0.0 && s < 1.0)) {
    fail(ErrorKind::InvalidParam, "seminorm radius must lie in [0,1)");
  }
  if (vanishes_on_samples(f)) return 0.0;
  const QuadPolicy& pol = space.policy;
  const double rad = space.domain.is_real() ? s : s * space.domain.radius;
  switch (space.kind) {
    case SpaceKind::Hardy:
      return std::pow(hardy_mean(f, rad, space.p, pol, nullptr), 1.0 / space.p);
    case SpaceKind::Bergman:
      if (rad == 0.0) return 0.0;
      return std::pow(bergman_average(f, space.alpha, space.p, rad, pol, nullptr), 1.0 / space.p);
    case SpaceKind::Dirichlet: return std::sqrt(dirichlet_square(f, rad, pol, nullptr));
    case SpaceKind::Bloch: {
      const HoloFn fp = derivative_fn(f, pol);
      const auto h = [&](Complex z) { return std::abs(fp(z)) * space.weight(z); };
      return std::abs(f(Complex(0.0, 0.0))) + grid_sup(h, space.domain, rad, pol).value;
    }
    case SpaceKind::SupWeightedHolo:
    case SpaceKind::SupWeightedCont: {
      const auto h = [&](Complex z) { return std::abs(f(z)) * space.weight(z); };
      return grid_sup(h, space.domain, rad, pol).value;
    }
  }
  return 0.0;
}

SaksCheck saks_sup_check(const SpaceSpec& space, const HoloFn& f, const std::vector<double>& radii,
                         double gap_tol) {
  SaksCheck out;
  out.norm = norm(space, f);
  out.radii = radii;
  const double slack = 10.0 * space.policy.tol * std::max(1.0, out.norm);
  double prev = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (i > 0 && !(radii[i] > radii[i - 1])) fail(ErrorKind::InvalidParam, "radii must increase");
    const double v = co_seminorm(space, f, {radii[i]});
    out.seminorms.push_back(v);
    if (v < prev - slack) out.monotone = false;
    prev = std::max(prev, v);
  }
  out.max_seminorm = prev;
  out.gap = out.norm - out.max_seminorm;
  out.pass = out.monotone && out.gap > -slack && out.gap < gap_tol;
  return out;
}

double submixed_seminorm(const SpaceSpec& space, const HoloFn& f, const NullSequence& ns) {
  ns.validate();
  if (vanishes_on_samples(f)) return 0.0;
  // co_seminorm <= norm, so once a_n * ||f|| cannot beat the running maximum
  // (weights nonincreasing from here on) the remaining terms are irrelevant.
  std::optional<double> full;
  double best = 0.0;
  double max_w = 0.0;
  for (std::size_t n = 1; n <= ns.length; ++n) {
    const double a = ns.weight(n);
    max_w = std::max(max_w, a);
    if (a == 0.0) continue;
    if (best > 0.0 && a < max_w) {
      if (!full) full = norm(space, f);
      if (a * *full <= best) break;
    }
    best = std::max(best, co_seminorm(space, f, {ns.radius(n)}) * a);
  }
  return best;
}

GammaVerdict gamma_convergence_probe(const SpaceSpec& space, const std::vector<HoloFn>& seq,
                                     const HoloFn& limit, const std::vector<double>& radii,
                                     double tol_conv, double norm_cap) {
  if (seq.empty()) fail(ErrorKind::InvalidParam, "gamma probe needs a nonempty sequence");
  if (radii.empty()) fail(ErrorKind::InvalidParam, "gamma probe needs radii");
  GammaVerdict out;
  for (const auto& f : seq) {
    const HoloFn diff = fns::difference(f, limit);
    double worst = 0.0;
    for (const double s : radii) worst = std::max(worst, co_seminorm(space, diff, {s}));
    out.co_residuals.push_back(worst);
    const double n = norm(space, f);
    out.norms.push_back(n);
    out.sup_norm = std::max(out.sup_norm, n);
  }
  out.co_convergent = out.co_residuals.back() < tol_conv;
  out.norm_bounded = out.sup_norm < norm_cap;
  out.gamma_convergent = out.co_convergent && out.norm_bounded;
  return out;
}

}  // namespace wcsg
