#pragma once

#include <array>
#include <unsupported/Eigen/FFT>

#include "trk/fields.hpp"

namespace trk {

// ---- atom profiles ----------------------------------------------------------

// weight * amplitude * e^{i frequency p} * delta(kappa - direction)
template <class V>
struct Atom {
  Direction direction;
  double frequency = 0.0;
  V amplitude = zero_of<V>();
  double weight = 1.0;
};

template <class V>
struct AtomProfile {
  std::vector<Atom<V>> atoms;
  double nu = 0.0;
  int mu = 1;
};

using RadonAtom = Atom<CVec3>;
using AnalyticProfile = AtomProfile<CVec3>;
using ScalarAtomProfile = AtomProfile<cplx>;

inline double component_abs(cplx v) { return std::abs(v); }
inline double component_abs(const CVec3& v) { return max_abs(v); }

// Density at (p, kappa): sum of amplitude e^{i w p} over atoms sitting at kappa.
template <class V>
V profile_value(const AtomProfile<V>& f, double p, const Direction& kappa, double tol = 1e-12) {
  V s = zero_of<V>();
  for (const auto& a : f.atoms)
    if (same_direction(a.direction, kappa, tol)) s += std::exp(I * (a.frequency * p)) * a.amplitude;
  return s;
}

// Largest |w A| difference between two atom measures, matched on (direction, frequency).
template <class V>
double profile_distance(const AtomProfile<V>& a, const AtomProfile<V>& b, double tol = 1e-12) {
  struct Key {
    Direction d;
    double w;
    V m;
  };
  std::vector<Key> keys;
  auto add = [&](const Atom<V>& at, double sign) {
    for (auto& k : keys)
      if (same_direction(k.d, at.direction, tol) && std::abs(k.w - at.frequency) <= tol) {
        k.m += sign * at.weight * at.amplitude;
        return;
      }
    keys.push_back({at.direction, at.frequency, V(sign * at.weight * at.amplitude)});
  };
  for (const auto& at : a.atoms) add(at, 1.0);
  for (const auto& at : b.atoms) add(at, -1.0);
  double worst = 0.0;
  for (const auto& k : keys) worst = std::max(worst, component_abs(k.m));
  return worst;
}

template <class V>
double profile_max_amplitude(const AtomProfile<V>& f) {
  double m = 0.0;
  for (const auto& a : f.atoms) m = std::max(m, a.weight * component_abs(a.amplitude));
  return m;
}

template <class V>
AtomProfile<V> scaled(AtomProfile<V> f, cplx c) {
  for (auto& a : f.atoms) a.amplitude = V(c * a.amplitude);
  return f;
}

template <class V>
AtomProfile<V> combined(AtomProfile<V> a, const AtomProfile<V>& b) {
  a.atoms.insert(a.atoms.end(), b.atoms.begin(), b.atoms.end());
  return a;
}

// max |kappa . A| / max |A|
inline double transverse_residual(const AnalyticProfile& f) {
  double worst = 0.0;
  for (const auto& a : f.atoms) worst = std::max(worst, std::abs(to_complex(a.direction.vec()).dot(a.amplitude)));
  double s = profile_max_amplitude(f);
  return s > 0.0 ? worst / s : 0.0;
}

// max over atoms of the mismatch between f(p, kappa) and f(-p, -kappa)
inline double parity_residual(const AnalyticProfile& f) {
  AnalyticProfile g = f;
  for (auto& a : g.atoms) {
    a.direction = -a.direction;
    a.frequency = -a.frequency;
  }
  return profile_distance(f, g);
}

// ---- Gamma on atoms -------------------------------------------------------

// Gamma = kappa d/dp; d/dp multiplies an atom by i w.
inline AnalyticProfile gamma_grad(const ScalarAtomProfile& f) {
  AnalyticProfile out{{}, f.nu, f.mu};
  for (const auto& a : f.atoms)
    out.atoms.push_back({a.direction, a.frequency, CVec3(I * a.frequency * a.amplitude * to_complex(a.direction.vec())),
                         a.weight});
  return out;
}

inline AnalyticProfile gamma_cross(const AnalyticProfile& f) {
  AnalyticProfile out{{}, f.nu, f.mu};
  for (const auto& a : f.atoms)
    out.atoms.push_back({a.direction, a.frequency, CVec3(I * a.frequency * cross(a.direction.vec(), a.amplitude)),
                         a.weight});
  return out;
}

inline ScalarAtomProfile gamma_dot(const AnalyticProfile& f) {
  ScalarAtomProfile out{{}, f.nu, f.mu};
  for (const auto& a : f.atoms)
    out.atoms.push_back(
        {a.direction, a.frequency, cplx(I * a.frequency * to_complex(a.direction.vec()).dot(a.amplitude)), a.weight});
  return out;
}

// ---- p-grids --------------------------------------------------------------

inline bool is_power_of_two(int n) { return n >= 2 && (n & (n - 1)) == 0; }

// Uniform periodic grid p_j = p0 + j * period / n.
struct PGrid {
  double p0 = 0.0;
  double period = 2.0 * pi;
  int n = 64;

  void validate() const {
    if (!is_power_of_two(n)) throw PreconditionError("PGrid: size must be a power of two");
    if (!(period > 0.0)) throw PreconditionError("PGrid: period must be positive");
  }
  double spacing() const { return period / n; }
  double at(int j) const { return p0 + j * spacing(); }
  // angular wavenumber of FFT bin m
  double wavenumber(int m) const {
    int s = m <= n / 2 ? m : m - n;
    return 2.0 * pi * s / period;
  }

  static PGrid from_points(const std::vector<double>& p, double rel_tol = 1e-10) {
    if (p.size() < 2) throw PreconditionError("PGrid: need at least two points");
    double h = p[1] - p[0];
    for (std::size_t j = 1; j < p.size(); ++j)
      if (std::abs(p[j] - p[j - 1] - h) > rel_tol * std::abs(h))
        throw PreconditionError("PGrid: points are not uniformly spaced");
    PGrid g{p[0], h * static_cast<double>(p.size()), static_cast<int>(p.size())};
    g.validate();
    return g;
  }

  // smallest commensurate grid: `cycles` periods of 2 pi / |nu|
  static PGrid commensurate(double nu, int cycles, int n, double p0 = 0.0) {
    if (nu == 0.0) throw PreconditionError("PGrid: nu must be nonzero");
    PGrid g{p0, cycles * 2.0 * pi / std::abs(nu), n};
    g.validate();
    return g;
  }
};

template <class V>
struct GridProfile {
  PGrid grid;
  std::vector<Direction> directions;
  std::vector<double> weights;              // sphere weights; may be empty
  std::vector<std::vector<V>> samples;      // [direction][p index]

  std::size_t size() const { return directions.size(); }
};

template <class F>
auto sample_function(const PGrid& grid, const std::vector<Direction>& dirs, const std::vector<double>& weights,
                     F&& f) {
  grid.validate();
  using V = std::decay_t<decltype(f(0.0, dirs.front()))>;
  GridProfile<V> out{grid, dirs, weights, std::vector<std::vector<V>>(dirs.size())};
  parallel_for(dirs.size(), [&](std::size_t i) {
    out.samples[i].resize(grid.n);
    for (int j = 0; j < grid.n; ++j) out.samples[i][j] = f(grid.at(j), dirs[i]);
  });
  return out;
}

template <class V>
GridProfile<V> sample_profile(const AtomProfile<V>& f, const PGrid& grid, const std::vector<Direction>& dirs,
                              const std::vector<double>& weights = {}) {
  return sample_function(grid, dirs, weights, [&](double p, const Direction& k) { return profile_value(f, p, k); });
}

template <class V>
double grid_distance(const GridProfile<V>& a, const GridProfile<V>& b) {
  if (a.size() != b.size() || a.grid.n != b.grid.n) throw PreconditionError("grid_distance: shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.grid.n; ++j) worst = std::max(worst, component_abs(V(a.samples[i][j] - b.samples[i][j])));
  return worst;
}

template <class V>
double grid_max(const GridProfile<V>& a) {
  double m = 0.0;
  for (const auto& row : a.samples)
    for (const auto& v : row) m = std::max(m, component_abs(v));
  return m;
}

namespace detail {

inline constexpr int components(cplx) { return 1; }
inline constexpr int components(const CVec3&) { return 3; }
inline cplx& component(cplx& v, int) { return v; }
inline cplx& component(CVec3& v, int c) { return v[c]; }
inline cplx component(const cplx& v, int) { return v; }
inline cplx component(const CVec3& v, int c) { return v[c]; }

// Fourier multiplier m(bin) applied to one row of samples, componentwise.
template <class V, class M>
std::vector<V> apply_multiplier(const std::vector<V>& row, const PGrid& g, M&& mult) {
  Eigen::FFT<double> fft;
  std::vector<V> out(row.size(), zero_of<V>());
  std::vector<cplx> in(row.size()), spec, back;
  for (int c = 0; c < components(row.front()); ++c) {
    for (std::size_t j = 0; j < row.size(); ++j) in[j] = component(row[j], c);
    fft.fwd(spec, in);
    for (int m = 0; m < g.n; ++m) spec[m] *= mult(m);
    fft.inv(back, spec);
    for (std::size_t j = 0; j < row.size(); ++j) component(out[j], c) = back[j];
  }
  return out;
}

}  // namespace detail

// d^order/dp^order by spectral differentiation; the Nyquist bin is dropped for odd orders.
template <class V>
std::vector<V> spectral_derivative(const std::vector<V>& row, const PGrid& g, int order) {
  return detail::apply_multiplier(row, g, [&](int m) -> cplx {
    if (order % 2 == 1 && 2 * m == g.n) return 0.0;
    return std::pow(I * g.wavenumber(m), order);
  });
}

// Trigonometric interpolation of a periodic row at an arbitrary p.
template <class V>
V trig_interpolate(const std::vector<V>& row, const PGrid& g, double p) {
  Eigen::FFT<double> fft;
  V out = zero_of<V>();
  std::vector<cplx> in(row.size()), spec;
  double t = p - g.p0;
  for (int c = 0; c < detail::components(row.front()); ++c) {
    for (std::size_t j = 0; j < row.size(); ++j) in[j] = detail::component(row[j], c);
    fft.fwd(spec, in);
    cplx s = 0.0;
    for (int m = 0; m < g.n; ++m) {
      if (2 * m == g.n) {
        s += spec[m] * std::cos(pi * g.n * t / g.period);
        continue;
      }
      s += spec[m] * std::exp(I * g.wavenumber(m) * t);
    }
    detail::component(out, c) = s / double(g.n);
  }
  return out;
}

template <class V>
GridProfile<V> grid_derivative(const GridProfile<V>& f, int order) {
  f.grid.validate();
  GridProfile<V> out = f;
  parallel_for(f.size(), [&](std::size_t i) { out.samples[i] = spectral_derivative(f.samples[i], f.grid, order); });
  return out;
}

inline GridProfile<CVec3> gamma_grad(const GridProfile<cplx>& f) {
  auto d = grid_derivative(f, 1);
  GridProfile<CVec3> out{f.grid, f.directions, f.weights, std::vector<std::vector<CVec3>>(f.size())};
  for (std::size_t i = 0; i < f.size(); ++i)
    for (cplx v : d.samples[i]) out.samples[i].push_back(v * to_complex(f.directions[i].vec()));
  return out;
}

inline GridProfile<CVec3> gamma_cross(const GridProfile<CVec3>& f) {
  auto out = grid_derivative(f, 1);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (auto& v : out.samples[i]) v = cross(f.directions[i].vec(), v);
  return out;
}

inline GridProfile<cplx> gamma_dot(const GridProfile<CVec3>& f) {
  auto d = grid_derivative(f, 1);
  GridProfile<cplx> out{f.grid, f.directions, f.weights, std::vector<std::vector<cplx>>(f.size())};
  for (std::size_t i = 0; i < f.size(); ++i)
    for (const auto& v : d.samples[i]) out.samples[i].push_back(to_complex(f.directions[i].vec()).dot(v));
  return out;
}

// ---- numeric forward transform ----------------------------------------------

struct RadonSample {
  CVec3 value = CVec3::Zero();
  double boundary_ratio = 0.0;  // max |F| on the plane edge over max |F| on the nodes
  bool truncation_warning = false;
};

inline constexpr double truncation_threshold = 1e-10;

namespace detail {

template <class Field>
RadonSample radon_plane(const Field& field, double p, const Direction& kappa, const PlaneQuadrature& quad,
                        bool parallel) {
  Rule1D r = quad.rule1d();
  auto [e1, e2] = plane_basis(kappa);
  Vec3 c = p * kappa.vec();
  std::size_t n = r.nodes.size();
  std::vector<double> peak(n, 0.0);
  std::vector<CVec3> rows(n, CVec3::Zero());
  auto row = [&](std::size_t i) {
    std::vector<CVec3> terms(n);
    double m = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      CVec3 v = field(Vec3(c + r.nodes[i] * e1.vec() + r.nodes[j] * e2.vec()));
      m = std::max(m, max_abs(v));
      terms[j] = r.weights[j] * v;
    }
    rows[i] = r.weights[i] * pairwise_sum(terms);
    peak[i] = m;
  };
  if (parallel)
    parallel_for(n, row);
  else
    for (std::size_t i = 0; i < n; ++i) row(i);
  RadonSample out;
  out.value = pairwise_sum(rows);
  double inner = *std::max_element(peak.begin(), peak.end());
  double edge = 0.0;
  double hw = quad.half_width;
  for (std::size_t j = 0; j < n; ++j)
    for (auto [a, b] : {std::pair{hw, r.nodes[j]}, {-hw, r.nodes[j]}, {r.nodes[j], hw}, {r.nodes[j], -hw}})
      edge = std::max(edge, max_abs(field(Vec3(c + a * e1.vec() + b * e2.vec()))));
  out.boundary_ratio = inner > 0.0 ? edge / inner : 0.0;
  out.truncation_warning = out.boundary_ratio > truncation_threshold;
  return out;
}

}  // namespace detail

// Integral of F over the plane kappa . x = p, truncated to the quadrature square.
template <class Field>
RadonSample radon_forward_numeric(const Field& field, double p, const Direction& kappa,
                                  const PlaneQuadrature& quad = {}) {
  return detail::radon_plane(field, p, kappa, quad, true);
}

struct GridRadon {
  GridProfile<CVec3> profile;
  double worst_boundary_ratio = 0.0;
  bool truncation_warning = false;
};

template <class Field>
GridRadon radon_forward_grid(const Field& field, const PGrid& grid, const std::vector<Direction>& dirs,
                             const std::vector<double>& weights = {}, const PlaneQuadrature& quad = {}) {
  grid.validate();
  std::size_t n = dirs.size() * grid.n;
  std::vector<RadonSample> s(n);
  // planes are the parallel unit; each plane runs serially
  parallel_for(n, [&](std::size_t k) {
    s[k] = detail::radon_plane(field, grid.at(int(k % grid.n)), dirs[k / grid.n], quad, false);
  });
  GridRadon out{{grid, dirs, weights, std::vector<std::vector<CVec3>>(dirs.size())}, 0.0, false};
  for (std::size_t k = 0; k < n; ++k) {
    out.profile.samples[k / grid.n].push_back(s[k].value);
    out.worst_boundary_ratio = std::max(out.worst_boundary_ratio, s[k].boundary_ratio);
    out.truncation_warning = out.truncation_warning || s[k].truncation_warning;
  }
  return out;
}

enum class DerivativeKind { curl, div, grad };

struct IntertwiningResult {
  CVec3 lhs;  // Radon transform of the derivative (scalar results in component 0)
  CVec3 rhs;  // Gamma applied to the Radon transform
  double residual = 0.0;
  bool truncation_warning = false;
};

// R[D F](p, kappa) against Gamma R[F](p, kappa). For kind = grad the scalar is
// component 0 of the field.
template <class Field>
IntertwiningResult intertwining_check(const Field& field, const Direction& kappa, double p, DerivativeKind kind,
                                      const PlaneQuadrature& quad = {}, double h = fd::default_step,
                                      double hp = 1e-3) {
  IntertwiningResult out;
  auto track = [&](const RadonSample& s) {
    out.truncation_warning = out.truncation_warning || s.truncation_warning;
    return s.value;
  };
  std::function<CVec3(const Vec3&)> deriv;
  switch (kind) {
    case DerivativeKind::curl: deriv = [&](const Vec3& x) { return fd::curl(field, x, h); }; break;
    case DerivativeKind::div:
      deriv = [&](const Vec3& x) { return CVec3(fd::divergence(field, x, h), 0.0, 0.0); };
      break;
    case DerivativeKind::grad:
      deriv = [&](const Vec3& x) { return fd::gradient([&](const Vec3& y) { return field(y)[0]; }, x, h); };
      break;
  }
  out.lhs = track(radon_forward_numeric(deriv, p, kappa, quad));
  CVec3 fm2 = track(radon_forward_numeric(field, p - 2 * hp, kappa, quad));
  CVec3 fm1 = track(radon_forward_numeric(field, p - hp, kappa, quad));
  CVec3 fp1 = track(radon_forward_numeric(field, p + hp, kappa, quad));
  CVec3 fp2 = track(radon_forward_numeric(field, p + 2 * hp, kappa, quad));
  CVec3 dp = ((fm2 - fp2) + 8.0 * (fp1 - fm1)) / (12.0 * hp);
  CVec3 k = to_complex(kappa.vec());
  switch (kind) {
    case DerivativeKind::curl: out.rhs = cross(kappa.vec(), dp); break;
    case DerivativeKind::div: out.rhs = CVec3(k.dot(dp), 0.0, 0.0); break;
    case DerivativeKind::grad: out.rhs = dp[0] * k; break;
  }
  out.residual = max_abs(CVec3(out.lhs - out.rhs));
  return out;
}

// ---- analytic transforms of mode fields --------------------------------------

// R[c e^{i k.x}] = (2 pi)^2/|k|^2 c [delta(kappa - k^) e^{i|k|p} + delta(kappa + k^) e^{-i|k|p}]
inline AnalyticProfile plane_wave_radon(const Vec3& k, const CVec3& c, double weight = 1.0) {
  double kn = k.norm();
  if (!(kn > 0.0)) throw PreconditionError("plane_wave_radon: zero wave vector");
  Direction d = Direction::normalized(k);
  CVec3 a = std::pow(2.0 * pi, 2) / (kn * kn) * c;
  return {{{d, kn, a, weight}, {-d, -kn, a, weight}}, 0.0, 1};
}

// Two atoms per mode: (mu k0, lambda nu) and (-mu k0, -lambda nu), amplitude
// (2 pi)^{1/2} s Q_lambda(k0) / (g nu^2).
inline AnalyticProfile radon_mode_analytic(const ModeField& f) {
  f.validate();
  AnalyticProfile out{{}, f.nu, f.mu};
  double c = std::sqrt(2.0 * pi) / (f.g * f.nu * f.nu);
  for (const auto& m : f.modes) {
    CVec3 a = c * m.amplitude * moses_q(m.kappa0, m.lambda);
    Direction d = f.mu == 1 ? m.kappa0 : -m.kappa0;
    out.atoms.push_back({d, m.lambda * f.nu, a, 1.0});
    out.atoms.push_back({-d, -m.lambda * f.nu, a, 1.0});
  }
  return out;
}

// Equatorial direction kappa(psi) = (cos psi, sin psi, 0) on n equispaced nodes;
// the second half are exact negations of the first.
inline std::vector<Direction> equatorial_ring(int n) {
  if (n < 4 || n % 2 != 0) throw PreconditionError("equatorial_ring: need an even count >= 4");
  std::vector<Direction> ring(n);
  for (int j = 0; j < n / 2; ++j) {
    double psi = 2.0 * pi * j / n;
    ring[j] = Direction::normalized(Vec3(std::cos(psi), std::sin(psi), 0.0));
    ring[j + n / 2] = -ring[j];
  }
  return ring;
}

// Atoms on the kappa_z = 0 ring with ring weight 2 pi / n:
// (2 pi i F0/nu^2) [L e^{i nu p} + L' e^{-i nu p}],
// L = (sin psi, -cos psi, -i), L' = (-sin psi, cos psi, -i).
inline AnalyticProfile lundquist_radon_profile(double F0, double nu, int n = 64) {
  if (nu == 0.0) throw PreconditionError("lundquist_radon_profile: nu must be nonzero");
  AnalyticProfile out{{}, nu, 1};
  cplx c = 2.0 * pi * I * F0 / (nu * nu);
  double w = 2.0 * pi / n;
  for (const auto& k : equatorial_ring(n)) {
    double s = k.y(), co = k.x();
    out.atoms.push_back({k, nu, CVec3(c * CVec3(s, -co, -I)), w});
    out.atoms.push_back({k, -nu, CVec3(c * CVec3(-s, co, -I)), w});
  }
  return out;
}

// ---- adjoint and inverse ------------------------------------------------------

// integral over S^2 of G(kappa . x, kappa)
template <class G>
auto adjoint_radon(G&& g, const Vec3& x, const SphereQuadrature& quad) {
  return integrate_sphere(quad, [&](const Direction& k) { return g(k.dot(x), k); });
}

template <class V>
V adjoint_radon(const AtomProfile<V>& f, const Vec3& x) {
  return indexed_sum(f.atoms.size(), [&](std::size_t i) {
    const auto& a = f.atoms[i];
    return V(a.weight * std::exp(I * a.frequency * a.direction.dot(x)) * a.amplitude);
  });
}

template <class V>
V adjoint_radon(const GridProfile<V>& f, const Vec3& x) {
  if (f.weights.size() != f.size()) throw PreconditionError("adjoint_radon: grid profile carries no sphere weights");
  return indexed_sum(f.size(), [&](std::size_t i) {
    return V(f.weights[i] * trig_interpolate(f.samples[i], f.grid, f.directions[i].dot(x)));
  });
}

// -(1/8 pi^2) integral over S^2 of d^2/dp^2 F^R at p = kappa . x
inline CVec3 inverse_radon(const AnalyticProfile& f, const Vec3& x) {
  CVec3 s = indexed_sum(f.atoms.size(), [&](std::size_t i) {
    const auto& a = f.atoms[i];
    return CVec3(a.weight * a.frequency * a.frequency * std::exp(I * a.frequency * a.direction.dot(x)) * a.amplitude);
  });
  return s / (8.0 * pi * pi);
}

inline CVec3 inverse_radon(const GridProfile<CVec3>& f, const Vec3& x) {
  if (f.weights.size() != f.size()) throw PreconditionError("inverse_radon: grid profile carries no sphere weights");
  CVec3 s = indexed_sum(f.size(), [&](std::size_t i) {
    auto d2 = spectral_derivative(f.samples[i], f.grid, 2);
    return CVec3(f.weights[i] * trig_interpolate(d2, f.grid, f.directions[i].dot(x)));
  });
  return -s / (8.0 * pi * pi);
}

// ---- hemispheres --------------------------------------------------------------

struct Hemisphere {
  std::string name;
  std::function<bool(const Direction&)> contains;

  bool operator()(const Direction& k) const { return contains(k); }
};

// z > 0, then y > 0 on the equator, then x > 0 on the y-axis circle
inline bool canonical_member(const Direction& k) {
  if (k.z() != 0.0) return k.z() > 0.0;
  if (k.y() != 0.0) return k.y() > 0.0;
  return k.x() > 0.0;
}

inline Hemisphere canonical_hemisphere() { return {"canonical", canonical_member}; }

// Four octants selected by the sign of kx ky kz; disconnected but still canonical.
inline Hemisphere octant_hemisphere() {
  return {"octant", [](const Direction& k) {
            double s = k.x() * k.y() * k.z();
            return s != 0.0 ? s > 0.0 : canonical_member(k);
          }};
}

inline Hemisphere complement(const Hemisphere& h) {
  return {h.name + "'", [c = h.contains](const Direction& k) { return c(-k); }};
}

// true when exactly one of each antipodal node pair belongs to h
inline bool hemisphere_is_canonical(const Hemisphere& h, const std::vector<Direction>& dirs) {
  for (const auto& k : dirs)
    if (h(k) == h(-k)) return false;
  return true;
}

// (1/4 pi^2) sum over atoms in H of w^2 A e^{i w kappa . x}
inline CVec3 hemisphere_inverse(const AnalyticProfile& f, const Hemisphere& h, const Vec3& x) {
  CVec3 s = indexed_sum(f.atoms.size(), [&](std::size_t i) {
    const auto& a = f.atoms[i];
    if (!h(a.direction)) return CVec3(CVec3::Zero());
    return CVec3(a.weight * a.frequency * a.frequency * std::exp(I * a.frequency * a.direction.dot(x)) * a.amplitude);
  });
  return s / (4.0 * pi * pi);
}

// R applied to the hemisphere inverse, computed exactly on atoms.
inline AnalyticProfile hemisphere_roundtrip(const AnalyticProfile& f, const Hemisphere& h) {
  AnalyticProfile out{{}, f.nu, f.mu};
  for (const auto& a : f.atoms) {
    if (!h(a.direction) || a.frequency == 0.0) continue;
    CVec3 c = a.frequency * a.frequency / (4.0 * pi * pi) * a.amplitude;
    auto pw = plane_wave_radon(a.frequency * a.direction.vec(), c, a.weight);
    // keep the node directions exact
    pw.atoms[0].direction = a.frequency > 0.0 ? a.direction : -a.direction;
    pw.atoms[1].direction = -pw.atoms[0].direction;
    out.atoms.insert(out.atoms.end(), pw.atoms.begin(), pw.atoms.end());
  }
  return out;
}

// ---- linear maps and duality -------------------------------------------------

// Profile of x -> F(T^{-1} x) for orthogonal T: atoms move to T kappa.
inline AnalyticProfile transform_radon_linear(const AnalyticProfile& f, const Mat3& T) {
  if ((T.transpose() * T - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-12)
    throw PreconditionError("transform_radon_linear: T must be orthogonal");
  AnalyticProfile out = f;
  out.mu = T.determinant() > 0.0 ? f.mu : -f.mu;
  for (auto& a : out.atoms) a.direction = Direction(Vec3(T * a.direction.vec()));
  return out;
}

// ---- spherical curl transform -------------------------------------------------

// s_a = (2 pi)^{-1/2} g nu^2 e^{-i mu lambda nu p} <Q_a(kappa), F^R(p, kappa)>, a = 1, 2
inline std::array<cplx, 2> spherical_curl_transform(const AnalyticProfile& f, const Direction& kappa, double p,
                                                    double g = 1.0) {
  CVec3 v = profile_value(f, p, kappa);
  std::array<cplx, 2> s{};
  for (int a = 0; a < 2; ++a) {
    int l = a == 0 ? 1 : -1;
    cplx phase = std::exp(-I * double(f.mu * l) * f.nu * p);
    s[a] = g * f.nu * f.nu / std::sqrt(2.0 * pi) * phase * moses_q(kappa, l).dot(v);
  }
  return s;
}

}  // namespace trk
