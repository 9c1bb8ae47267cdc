#pragma once

#include "trk/radon.hpp"

namespace trk {

// ---- volume quadrature ------------------------------------------------------

enum class VolumeDomain { centered_ball, fixed_ball };

// Spherical coordinates centred on the evaluation point, so the 1/|x - y| and
// 1/|x - y|^2 kernels are absorbed by the Jacobian. `centered_ball` integrates
// out to `radius` around x; `fixed_ball` integrates over |y - center| < radius.
struct VolumeQuadrature {
  VolumeDomain domain = VolumeDomain::centered_ball;
  double radius = 8.0;
  Vec3 center = Vec3::Zero();
  int radial_panels = 16;
  int radial_order = 8;
  int n_polar = 16;
  int n_azimuth = 32;

  void validate() const {
    if (!(radius > 0.0)) throw PreconditionError("VolumeQuadrature: radius must be positive");
    if (radial_panels < 1 || radial_order < 1) throw PreconditionError("VolumeQuadrature: bad radial rule");
  }

  // distance from x to the domain edge along kappa
  double reach(const Vec3& x, const Direction& kappa) const {
    if (domain == VolumeDomain::centered_ball) return radius;
    Vec3 s = x - center;
    double b = s.dot(kappa.vec());
    double disc = b * b - s.squaredNorm() + radius * radius;
    if (disc < 0.0 || s.norm() > radius) throw PreconditionError("VolumeQuadrature: point outside the fixed ball");
    return -b + std::sqrt(disc);
  }
};

struct VolumeResult {
  CVec3 value = CVec3::Zero();
  double boundary_ratio = 0.0;
  bool truncation_warning = false;
};

inline constexpr double volume_boundary_threshold = 1e-6;

namespace detail {

// (1/4 pi) int dOmega int_0^reach g(r, kappa) dr, plus an edge estimate
// (1/4 pi) int dOmega |g(reach, kappa)| over one length unit.
template <class G>
VolumeResult spherical_volume(const Vec3& x, const VolumeQuadrature& q, G&& g, bool check_edge) {
  q.validate();
  auto sq = sphere_quadrature(q.n_polar, q.n_azimuth, false);
  std::vector<CVec3> terms(sq.size(), CVec3::Zero());
  std::vector<double> edge(sq.size(), 0.0);
  parallel_for(sq.size(), [&](std::size_t i) {
    const Direction& k = sq.nodes[i];
    double rmax = q.reach(x, k);
    Rule1D r = composite_gauss_legendre(q.radial_panels, q.radial_order, 0.0, rmax);
    std::vector<CVec3> t(r.nodes.size());
    for (std::size_t j = 0; j < r.nodes.size(); ++j) t[j] = r.weights[j] * g(r.nodes[j], k);
    terms[i] = sq.weights[i] * pairwise_sum(t);
    if (check_edge) edge[i] = sq.weights[i] * max_abs(g(rmax, k));
  });
  VolumeResult out;
  out.value = pairwise_sum(terms) / (4.0 * pi);
  if (check_edge && q.domain == VolumeDomain::centered_ball) {
    double e = pairwise_sum(edge) / (4.0 * pi);
    double v = max_abs(out.value);
    out.boundary_ratio = v > 0.0 ? e / v : (e > 0.0 ? INFINITY : 0.0);
    out.truncation_warning = out.boundary_ratio > volume_boundary_threshold;
  }
  return out;
}

}  // namespace detail

// (1/4 pi) int F(y) / |x - y| d^3y
template <class Field>
VolumeResult riesz_potential_checked(const Field& f, const Vec3& x, const VolumeQuadrature& q = {}) {
  return detail::spherical_volume(
      x, q, [&](double r, const Direction& k) { return CVec3(r * f(Vec3(x + r * k.vec()))); }, true);
}

template <class Field>
CVec3 riesz_potential(const Field& f, const Vec3& x, const VolumeQuadrature& q = {}) {
  return detail::spherical_volume(
             x, q, [&](double r, const Direction& k) { return CVec3(r * f(Vec3(x + r * k.vec()))); }, false)
      .value;
}

// (1/4 pi) int F(y) x (x - y)/|x - y|^3 d^3y
template <class Field>
VolumeResult bs_integral_checked(const Field& f, const Vec3& x, const VolumeQuadrature& q = {}) {
  return detail::spherical_volume(
      x, q, [&](double r, const Direction& k) { return cross(k.vec(), f(Vec3(x + r * k.vec()))); }, true);
}

template <class Field>
CVec3 bs_integral(const Field& f, const Vec3& x, const VolumeQuadrature& q = {}) {
  return detail::spherical_volume(
             x, q, [&](double r, const Direction& k) { return cross(k.vec(), f(Vec3(x + r * k.vec()))); }, false)
      .value;
}

template <class Field>
SampledField bs_field(const Field& f, const VolumeQuadrature& q = {}) {
  SampledField out;
  out.eval = [f, q](const Vec3& x) { return bs_integral(f, x, q); };
  out.info = {"bs", {}, 0, std::nullopt};
  return out;
}

// ---- Lundquist via Poisson integrals --------------------------------------------

// int_0^{2 pi} (R - r cos u) / (R^2 + r^2 - 2 r R cos u) du
inline double poisson_inner_integral(double R, double r) {
  if (r < R) return 2.0 * pi / R;
  if (r > R) return 0.0;
  return pi / R;
}

// int_0^{2 pi} (r - R cos u) / (R^2 + r^2 - 2 r R cos u) du
inline double poisson_outer_integral(double R, double r) {
  if (r > R) return 2.0 * pi / r;
  if (r < R) return 0.0;
  return pi / r;
}

inline double poisson_kernel(double R, double r, double u) {
  double a = std::max(R, r), b = std::min(R, r), s = std::sin(0.5 * u);
  return (a - b) * (a + b) / ((a - b) * (a - b) + 4.0 * a * b * s * s);
}

struct BsLundquistTerms {
  CVec3 value = CVec3::Zero();  // Cartesian BS[F_L](x)
  double i1 = 0.0;              // odd in z, vanishes after the z integral
  double theta_part = 0.0;      // I2 + I3, along e_theta
  double z_part = 0.0;          // I4 + I5, along e_z
  double tail = 0.0;            // closed tail J0(X_c)/nu
  double tail_residual = 0.0;   // quadrature check of the closed tail identity
  bool tail_warning = false;
};

inline constexpr double tail_threshold = 1e-7;

// BS[F_L] at x = R e_r(theta). The z integral uses int dz/(a^2 + z^2)^{3/2} = 2/a^2,
// the phi integral the Poisson formulas; I2..I5 are combined in pairs since each
// alone diverges at r = R.
inline BsLundquistTerms bs_lundquist_semianalytic(double F0, double nu, double R, double theta,
                                                  double cutoff_span = 40.0) {
  if (!(R > 0.0)) throw PreconditionError("bs_lundquist_semianalytic: R must be positive");
  if (nu == 0.0) throw PreconditionError("bs_lundquist_semianalytic: nu must be nonzero");
  BsLundquistTerms t;
  double X = nu * R;
  auto integrate = [](double a, double b, auto&& f) {
    int panels = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / 2.0)));
    Rule1D r = composite_gauss_legendre(panels, 20, a, b);
    std::vector<double> terms(r.nodes.size());
    for (std::size_t j = 0; j < r.nodes.size(); ++j) terms[j] = r.weights[j] * f(r.nodes[j]);
    return pairwise_sum(terms);
  };
  // phi integrals are constant on each side of r = R: only r < R feeds e_theta
  // and only r > R feeds e_z
  double phi_in = poisson_inner_integral(R, 0.0);
  // (1/4 pi) 2 phi_in int_0^R F0 J0(nu r) r dr
  double inner = integrate(0.0, X, [](double x) { return bessel_j_signed(0, x) * x; });
  t.theta_part = (1.0 / (4.0 * pi)) * 2.0 * phi_in * F0 * inner / (nu * nu);
  // (1/4 pi) 2 (2 pi / r) int_R^inf F0 J1(nu r) r dr
  double Xc = X + (nu > 0.0 ? cutoff_span : -cutoff_span);
  double body = integrate(X, Xc, [](double x) { return bessel_j_signed(1, x); });
  t.tail = bessel_j_signed(0, Xc);
  t.z_part = F0 * (body + t.tail) / nu;
  double probe = integrate(Xc, Xc + (Xc > 0 ? 20.0 : -20.0), [](double x) { return bessel_j_signed(1, x); });
  t.tail_residual = std::abs(probe - (t.tail - bessel_j_signed(0, Xc + (Xc > 0 ? 20.0 : -20.0))));
  t.tail_warning = t.tail_residual > tail_threshold;
  double c = std::cos(theta), s = std::sin(theta);
  t.value = CVec3(-t.theta_part * s, t.theta_part * c, t.z_part);
  return t;
}

// ---- Ampere fluxes ----------------------------------------------------------

struct AmpereFluxes {
  cplx Q = 0.0;            // flux of F through the disk
  cplx phi_surface = 0.0;  // flux of curl F (finite differences)
  cplx phi_line = 0.0;     // circulation of F on the rim
  cplx nu_Q = 0.0;
};

// Disk of radius R in the xy-plane centred on the origin.
template <class Field>
AmpereFluxes ampere_fluxes(const Field& f, double R, double nu, int radial_order = 32, int n_theta = 64,
                           int line_nodes = 128, double h = fd::default_step) {
  if (!(R > 0.0)) throw PreconditionError("ampere_fluxes: R must be positive");
  Rule1D rr = gauss_legendre(radial_order, 0.0, R);
  double dth = 2.0 * pi / n_theta;
  std::size_t n = rr.nodes.size() * n_theta;
  std::vector<cplx> q(n), s(n);
  parallel_for(n, [&](std::size_t k) {
    std::size_t i = k / n_theta;
    double th = dth * double(k % n_theta), r = rr.nodes[i];
    Vec3 x(r * std::cos(th), r * std::sin(th), 0.0);
    double w = rr.weights[i] * r * dth;
    q[k] = w * f(x)[2];
    s[k] = w * fd::curl(f, x, h)[2];
  });
  double dl = 2.0 * pi / line_nodes;
  std::vector<cplx> l(line_nodes);
  for (int j = 0; j < line_nodes; ++j) {
    double th = dl * j;
    CVec3 v = f(Vec3(R * std::cos(th), R * std::sin(th), 0.0));
    l[j] = R * dl * (-std::sin(th) * v[0] + std::cos(th) * v[1]);
  }
  AmpereFluxes out;
  out.Q = pairwise_sum(q);
  out.phi_surface = pairwise_sum(s);
  out.phi_line = pairwise_sum(l);
  out.nu_Q = nu * out.Q;
  return out;
}

}  // namespace trk
