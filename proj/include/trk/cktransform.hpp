#pragma once

#include <functional>

#include "trk/rbs.hpp"

namespace trk {

// ---- Debye potentials -----------------------------------------------------------

// Psi as tone atoms, omega a vector per (p, kappa) that must not depend on p.
struct DebyeTerm {
  ScalarAtomProfile psi;
  std::function<CVec3(double, const Direction&)> omega;
};

struct DebyeChoice {
  double nu = 1.0;
  std::vector<DebyeTerm> terms;

  void validate() const;
};

inline constexpr double oscillator_tolerance = 1e-10;
inline constexpr double omega_p_tolerance = 1e-12;

// max |d^2 Psi/dp^2 + nu^2 Psi| relative to nu^2 |Psi| over atoms
inline double oscillator_residual(const DebyeChoice& c) {
  double worst = 0.0;
  for (const auto& t : c.terms)
    for (const auto& a : t.psi.atoms)
      worst = std::max(worst, std::abs(c.nu * c.nu - a.frequency * a.frequency) / (c.nu * c.nu));
  return worst;
}

// max over atom directions of |omega(p, kappa) - omega(0, kappa)| relative to |omega(0, kappa)|
inline double omega_p_variation(const DebyeChoice& c) {
  static constexpr double probes[] = {-2.7, -0.9, 0.4, 1.3, 3.1};
  double worst = 0.0;
  for (const auto& t : c.terms)
    for (const auto& a : t.psi.atoms) {
      CVec3 w0 = t.omega(0.0, a.direction);
      double s = std::max(max_abs(w0), 1e-300);
      for (double p : probes) worst = std::max(worst, max_abs(CVec3(t.omega(p, a.direction) - w0)) / s);
    }
  return worst;
}

inline void DebyeChoice::validate() const {
  if (nu == 0.0) throw PreconditionError("DebyeChoice: nu must be nonzero");
  for (const auto& t : terms)
    if (!t.omega) throw PreconditionError("DebyeChoice: missing omega");
  if (oscillator_residual(*this) > oscillator_tolerance)
    throw PreconditionError("DebyeChoice: Psi is not a tone of frequency +-nu");
  if (omega_p_variation(*this) > omega_p_tolerance) throw PreconditionError("DebyeChoice: omega depends on p");
}

// Psi * omega as vector atoms
inline AnalyticProfile debye_product(const DebyeChoice& c) {
  AnalyticProfile out{{}, c.nu, 1};
  for (const auto& t : c.terms)
    for (const auto& a : t.psi.atoms)
      out.atoms.push_back({a.direction, a.frequency, CVec3(a.amplitude * t.omega(0.0, a.direction)), a.weight});
  return out;
}

struct CkSolution {
  AnalyticProfile toroidal;  // Gamma x (Psi omega)
  AnalyticProfile poloidal;  // (1/nu) Gamma x Gamma x (Psi omega)
  AnalyticProfile total;
};

inline CkSolution ck_transform_solution(const DebyeChoice& c) {
  c.validate();
  auto x = debye_product(c);
  CkSolution s;
  s.toroidal = gamma_cross(x);
  s.poloidal = scaled(gamma_cross(s.toroidal), 1.0 / c.nu);
  s.total = s.toroidal;
  for (std::size_t i = 0; i < s.total.atoms.size(); ++i) s.total.atoms[i].amplitude += s.poloidal.atoms[i].amplitude;
  return s;
}

struct CkPotentialResidual {
  double potential = 0.0;  // |Gamma x H - G|
  double rbs = 0.0;        // |RBS[G] - G / nu|
};

// H = Psi omega + (1/nu) Gamma x (Psi omega)
inline CkPotentialResidual ck_transform_potential_check(const DebyeChoice& c) {
  auto g = ck_transform_solution(c).total;
  auto x = debye_product(c);
  auto h = x;
  auto gx = gamma_cross(x);
  for (std::size_t i = 0; i < h.atoms.size(); ++i) h.atoms[i].amplitude += gx.atoms[i].amplitude / c.nu;
  return {profile_distance(gamma_cross(h), g), profile_distance(rbs_apply(g), scaled(g, 1.0 / c.nu))};
}

// Same on a p-grid over the atom directions; the grid should be commensurate with nu.
inline CkPotentialResidual ck_transform_potential_check(const DebyeChoice& c, const PGrid& grid) {
  c.validate();
  std::vector<Direction> dirs;
  for (const auto& t : c.terms)
    for (const auto& a : t.psi.atoms)
      if (std::none_of(dirs.begin(), dirs.end(), [&](const Direction& d) { return d.vec() == a.direction.vec(); }))
        dirs.push_back(a.direction);
  auto x = sample_function(grid, dirs, {}, [&](double p, const Direction& k) {
    CVec3 s = CVec3::Zero();
    for (const auto& t : c.terms) s += profile_value(t.psi, p, k) * t.omega(p, k);
    return s;
  });
  auto gx = gamma_cross(x);
  auto ggx = gamma_cross(gx);
  auto g = gx, h = x, g_nu = gx;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (int j = 0; j < grid.n; ++j) {
      g.samples[i][j] += ggx.samples[i][j] / c.nu;
      h.samples[i][j] += gx.samples[i][j] / c.nu;
      g_nu.samples[i][j] = g.samples[i][j] / c.nu;
    }
  return {grid_distance(gamma_cross(h), g), grid_distance(rbs_apply(g), g_nu)};
}

// [(2 pi)^2/nu^3][e^{i l nu p} delta(kappa - k0) + e^{-i l nu p} delta(kappa + k0)], omega = Q_l(k0)
inline DebyeChoice single_mode_debye(const Direction& k0, int lambda, double nu) {
  if (nu == 0.0) throw PreconditionError("single_mode_debye: nu must be nonzero");
  cplx a = std::pow(2.0 * pi, 2) / (nu * nu * nu);
  CVec3 q = moses_q(k0, lambda);
  ScalarAtomProfile psi{{{k0, lambda * nu, a, 1.0}, {-k0, -lambda * nu, a, 1.0}}, nu, 1};
  return {nu, {{psi, [q](double, const Direction&) { return q; }}}};
}

// L = (sin psi, -cos psi, -i) and L' = (-sin psi, cos psi, -i) on the kappa_z = 0 ring
inline CVec3 lundquist_l(const Direction& k) { return CVec3(k.y(), -k.x(), -I); }
inline CVec3 lundquist_l_prime(const Direction& k) { return CVec3(-k.y(), k.x(), -I); }

namespace detail {

inline ScalarAtomProfile ring_tone(double nu, const std::vector<double>& freqs, cplx amp, int n) {
  ScalarAtomProfile psi{{}, nu, 1};
  for (const auto& k : equatorial_ring(n))
    for (double w : freqs) psi.atoms.push_back({k, w, amp, 2.0 * pi / n});
  return psi;
}

}  // namespace detail

// Psi_1 = (2 pi i F0/nu^3) delta(kappa_z) e^{i nu p}, omega_1 = L; Psi_2 likewise at -nu with L'
inline DebyeChoice lundquist_debye(double F0, double nu, int n = 64) {
  if (nu == 0.0) throw PreconditionError("lundquist_debye: nu must be nonzero");
  cplx a = 2.0 * pi * I * F0 / (nu * nu * nu);
  return {nu,
          {{detail::ring_tone(nu, {nu}, a, n), [](double, const Direction& k) { return lundquist_l(k); }},
           {detail::ring_tone(nu, {-nu}, a, n), [](double, const Direction& k) { return lundquist_l_prime(k); }}}};
}

// Psi = (2 pi F0/nu^3) delta(kappa_z)(e^{i nu p} + e^{-i nu p}), omega = e_z
inline DebyeChoice lundquist_z_debye(double F0, double nu, int n = 64) {
  if (nu == 0.0) throw PreconditionError("lundquist_z_debye: nu must be nonzero");
  cplx a = 2.0 * pi * F0 / (nu * nu * nu);
  return {nu, {{detail::ring_tone(nu, {nu, -nu}, a, n), [](double, const Direction&) { return CVec3(0, 0, 1); }}}};
}

// ---- contour representation ---------------------------------------------------

enum class ContourMode { residue, numeric };
enum class Branch { plus, minus };

inline constexpr int contour_nodes = 64;

// loop integral of e^{p zeta}/(zeta - pole) around the pole
inline cplx contour_integral(double p, cplx pole, ContourMode mode = ContourMode::residue, double radius = 0.5,
                             int nodes = contour_nodes) {
  if (mode == ContourMode::residue) return 2.0 * pi * I * std::exp(p * pole);
  if (!(radius > 0.0) || nodes < 2) throw PreconditionError("contour_integral: bad circle");
  // zeta = pole + r e^{it}: the integrand reduces to i e^{p zeta}
  std::vector<cplx> t(nodes);
  for (int j = 0; j < nodes; ++j) {
    double th = 2.0 * pi * j / nodes;
    t[j] = I * std::exp(p * (pole + radius * std::exp(I * th)));
  }
  return pairwise_sum(t) * (2.0 * pi / nodes);
}

inline cplx oscillator_pole(int lambda, double nu, Branch b) { return (b == Branch::plus ? 1.0 : -1.0) * I * double(lambda) * nu; }

// (1/(4 pi i nu)) loop e^{p zeta}/(zeta -+ i lambda nu) = e^{+-i lambda nu p}/(2 nu)
inline cplx oscillator_residue(double p, int lambda, double nu, Branch b, ContourMode mode = ContourMode::residue) {
  if (nu == 0.0) throw PreconditionError("oscillator_residue: nu must be nonzero");
  if (lambda != 1 && lambda != -1) throw PreconditionError("oscillator_residue: lambda must be +-1");
  return contour_integral(p, oscillator_pole(lambda, nu, b), mode, 0.5 * std::abs(nu)) / (4.0 * pi * I * nu);
}

// omega_k(kappa) as a discrete measure on the sphere
struct VectorMeasure {
  std::vector<Direction> directions;
  std::vector<double> weights;
  std::vector<CVec3> values;

  std::size_t size() const { return directions.size(); }
  void push(const Direction& d, const CVec3& v, double w = 1.0) {
    directions.push_back(d);
    values.push_back(v);
    weights.push_back(w);
  }
};

namespace detail {

inline CVec3 ck_plus(const Direction& k, const CVec3& w, int lambda) {
  CVec3 kc = to_complex(k.vec());
  return CVec3(I * double(lambda) * cross(k.vec(), w) - cross(kc, cross(k.vec(), w)));
}

inline CVec3 ck_minus(const Direction& k, const CVec3& w, int lambda) {
  CVec3 kc = to_complex(k.vec());
  return CVec3(-I * double(lambda) * cross(k.vec(), w) - cross(kc, cross(k.vec(), w)));
}

inline void check_ck_args(int lambda, double nu) {
  if (nu == 0.0) throw PreconditionError("ck: nu must be nonzero");
  if (lambda != 1 && lambda != -1) throw PreconditionError("ck: lambda must be +-1");
}

}  // namespace detail

// (1/4 pi i)[(i l k x w1 - k x k x w1) loop_- + (-i l k x w2 - k x k x w2) loop_+], loops reduced by residues
inline AnalyticProfile ck_integral_profile(const VectorMeasure& w1, const VectorMeasure& w2, int lambda, double nu) {
  detail::check_ck_args(lambda, nu);
  AnalyticProfile out{{}, nu, 1};
  cplx c = contour_integral(0.0, 0.0) / (4.0 * pi * I);
  for (std::size_t i = 0; i < w1.size(); ++i)
    out.atoms.push_back({w1.directions[i], lambda * nu, CVec3(c * detail::ck_plus(w1.directions[i], w1.values[i], lambda)),
                         w1.weights[i]});
  for (std::size_t i = 0; i < w2.size(); ++i)
    out.atoms.push_back({w2.directions[i], -lambda * nu,
                         CVec3(c * detail::ck_minus(w2.directions[i], w2.values[i], lambda)), w2.weights[i]});
  return out;
}

// (nu^2/(32 pi^3 i)) sum over the measures with the zeta loops evaluated at p = kappa . x
inline CVec3 reconstruct_physical(const VectorMeasure& w1, const VectorMeasure& w2, int lambda, double nu, const Vec3& x,
                                  ContourMode mode = ContourMode::residue) {
  detail::check_ck_args(lambda, nu);
  double r = 0.5 * std::abs(nu);
  cplx pm = oscillator_pole(lambda, nu, Branch::plus), pp = oscillator_pole(lambda, nu, Branch::minus);
  CVec3 a = indexed_sum(w1.size(), [&](std::size_t i) {
    const Direction& k = w1.directions[i];
    return CVec3(w1.weights[i] * contour_integral(k.dot(x), pm, mode, r) * detail::ck_plus(k, w1.values[i], lambda));
  });
  CVec3 b = indexed_sum(w2.size(), [&](std::size_t i) {
    const Direction& k = w2.directions[i];
    return CVec3(w2.weights[i] * contour_integral(k.dot(x), pp, mode, r) * detail::ck_minus(k, w2.values[i], lambda));
  });
  return nu * nu / (32.0 * pi * pi * pi * I) * (a + b);
}

// omega_1 = [(2 pi)^{1/2}/(g nu^2)] Q_l(kappa) s_l(l nu kappa), omega_2 at -kappa, for the modes of helicity l
inline std::pair<VectorMeasure, VectorMeasure> moses_measures(const ModeField& f, int lambda) {
  f.validate();
  if (f.mu != 1) throw PreconditionError("moses_measures: needs mu = 1");
  double c = std::sqrt(2.0 * pi) / (f.g * f.nu * f.nu);
  VectorMeasure w1, w2;
  for (const auto& m : f.modes) {
    if (m.lambda != lambda) continue;
    CVec3 v = c * m.amplitude * moses_q(m.kappa0, lambda);
    w1.push(m.kappa0, v);
    w2.push(-m.kappa0, v);
  }
  return {w1, w2};
}

// omega_1 = omega_2 = (4 pi F0/nu^2) delta(kappa_z) e_z, lambda = 1
inline VectorMeasure lundquist_measure(double F0, double nu, int n = 64) {
  if (nu == 0.0) throw PreconditionError("lundquist_measure: nu must be nonzero");
  VectorMeasure w;
  for (const auto& k : equatorial_ring(n)) w.push(k, CVec3(0, 0, 4.0 * pi * F0 / (nu * nu)), 2.0 * pi / n);
  return w;
}

struct AbcTriple {
  Direction kappa;
  CVec3 e;
};

// kappa_1 = e_z, kappa_2 = e_x, kappa_3 = e_y with E_1 = e_x + i l e_y, E_2 = e_y + i l e_z, E_3 = e_z + i l e_x
inline std::array<AbcTriple, 3> abc_triples(int lambda) {
  const double l = lambda;
  return {{{Direction::normalized(Vec3(0, 0, 1)), CVec3(1.0, I * l, 0.0)},
           {Direction::normalized(Vec3(1, 0, 0)), CVec3(0.0, 1.0, I * l)},
           {Direction::normalized(Vec3(0, 1, 0)), CVec3(I * l, 0.0, 1.0)}}};
}

// max |i l kappa_i x E_i - E_i|
inline double abc_eigen_condition(int lambda) {
  double worst = 0.0;
  for (const auto& t : abc_triples(lambda))
    worst = std::max(worst, max_abs(CVec3(I * double(lambda) * cross(t.kappa.vec(), t.e) - t.e)));
  return worst;
}

// omega_1 = -i (2 pi)^2/nu^2 [a delta(kappa - k1) E1 + ...], omega_2 the same at -k_i
inline std::pair<VectorMeasure, VectorMeasure> abc_measures(double a, double b, double c, int lambda, double nu) {
  detail::check_ck_args(lambda, nu);
  cplx s = -I * std::pow(2.0 * pi, 2) / (nu * nu);
  auto tr = abc_triples(lambda);
  double coef[3] = {a, b, c};
  VectorMeasure w1, w2;
  for (int i = 0; i < 3; ++i) {
    w1.push(tr[i].kappa, CVec3(s * coef[i] * tr[i].e));
    w2.push(-tr[i].kappa, CVec3(s * coef[i] * tr[i].e));
  }
  return {w1, w2};
}

}  // namespace trk
