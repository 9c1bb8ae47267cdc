#pragma once

#include "trk/biotsavart.hpp"

namespace trk {

// Unitary 1-D transform in p per direction: c(k_m) on the FFT bins of the grid.
struct SpectralProfile {
  PGrid grid;
  std::vector<Direction> directions;
  std::vector<double> frequencies;               // k_m
  std::vector<std::vector<CVec3>> coefficients;  // [direction][m], raw DFT
};

inline SpectralProfile spectral_profile(const GridProfile<CVec3>& f) {
  f.grid.validate();
  SpectralProfile s{f.grid, f.directions, {}, std::vector<std::vector<CVec3>>(f.size())};
  for (int m = 0; m < f.grid.n; ++m) s.frequencies.push_back(f.grid.wavenumber(m));
  Eigen::FFT<double> fft;
  std::vector<cplx> in(f.grid.n), out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    s.coefficients[i].assign(f.grid.n, CVec3::Zero());
    for (int c = 0; c < 3; ++c) {
      for (int j = 0; j < f.grid.n; ++j) in[j] = f.samples[i][j][c];
      fft.fwd(out, in);
      for (int m = 0; m < f.grid.n; ++m) s.coefficients[i][m][c] = out[m];
    }
  }
  return s;
}

// max |c(-k) - conj c(k)| relative to max |c|; zero for real-valued samples
inline double conjugate_symmetry_residual(const SpectralProfile& s) {
  double worst = 0.0, scale = 0.0;
  int n = s.grid.n;
  for (const auto& row : s.coefficients)
    for (int m = 0; m < n; ++m) {
      worst = std::max(worst, max_abs(CVec3(row[(n - m) % n] - row[m].conjugate())));
      scale = std::max(scale, max_abs(row[m]));
    }
  return scale > 0.0 ? worst / scale : 0.0;
}

// ---- Fourier slice ----------------------------------------------------------

struct FourierSliceResult {
  CVec3 lhs;  // (2 pi)^{-1/2} int e^{-ikp} R[F](p, kappa) dp
  CVec3 rhs;  // 2 pi (2 pi)^{-3/2} int e^{-ik kappa.x} F(x) d^3x
  double residual = 0.0;
  bool truncation_warning = false;
};

struct CubeQuadrature {
  double half_width = 6.0;
  int nodes = 48;
};

// Direct product Gauss-Legendre over a cube.
template <class Field>
CVec3 fourier_transform_3d(const Field& f, const Vec3& k, const CubeQuadrature& q = {}) {
  Rule1D r = gauss_legendre(q.nodes, -q.half_width, q.half_width);
  std::size_t n = r.nodes.size();
  CVec3 s = indexed_sum(n, [&](std::size_t i) {
    std::vector<CVec3> t;
    t.reserve(n * n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) {
        Vec3 x(r.nodes[i], r.nodes[j], r.nodes[l]);
        t.push_back(r.weights[i] * r.weights[j] * r.weights[l] * std::exp(-I * k.dot(x)) * f(x));
      }
    return pairwise_sum(t);
  });
  return std::pow(2.0 * pi, -1.5) * s;
}

template <class Field>
FourierSliceResult fourier_slice_check(const Field& f, const Direction& kappa, double k, const PGrid& grid = {-8.0, 16.0, 64},
                                       const PlaneQuadrature& pq = {}, const CubeQuadrature& cq = {}) {
  grid.validate();
  if (std::abs(k) >= pi / grid.spacing()) throw PreconditionError("fourier_slice_check: k above the grid Nyquist limit");
  FourierSliceResult out;
  std::vector<CVec3> terms(grid.n);
  std::vector<char> warn(grid.n, 0);
  for (int j = 0; j < grid.n; ++j) {
    auto s = radon_forward_numeric(f, grid.at(j), kappa, pq);
    warn[j] = s.truncation_warning;
    terms[j] = grid.spacing() * std::exp(-I * k * grid.at(j)) * s.value;
  }
  out.truncation_warning = std::any_of(warn.begin(), warn.end(), [](char w) { return w != 0; });
  out.lhs = pairwise_sum(terms) / std::sqrt(2.0 * pi);
  out.rhs = 2.0 * pi * fourier_transform_3d(f, Vec3(k * kappa.vec()), cq);
  double scale = max_abs(out.rhs);
  out.residual = max_abs(CVec3(out.lhs - out.rhs)) / (scale > 0.0 ? scale : 1.0);
  return out;
}

// ---- Riesz and RBS on profiles ------------------------------------------------

inline constexpr double dc_tolerance = 1e-12;

// Inverse transform of (1/k^2) times the transform, per direction; the DC bin
// must already be negligible.
template <class V>
GridProfile<V> radon_riesz(const GridProfile<V>& f, double dc_tol = dc_tolerance) {
  f.grid.validate();
  GridProfile<V> out = f;
  for (std::size_t i = 0; i < f.size(); ++i) {
    V mean = zero_of<V>();
    double peak = 0.0;
    for (const auto& v : f.samples[i]) {
      mean += v;
      peak = std::max(peak, component_abs(v));
    }
    mean = V(mean / double(f.grid.n));
    if (component_abs(mean) > dc_tol * std::max(peak, 1e-300))
      throw PreconditionError("radon_riesz: profile has non-negligible zero-frequency content");
    out.samples[i] = detail::apply_multiplier(f.samples[i], f.grid, [&](int m) -> cplx {
      double k = f.grid.wavenumber(m);
      return m == 0 ? 0.0 : 1.0 / (k * k);
    });
  }
  return out;
}

inline GridProfile<CVec3> rbs_apply(const GridProfile<CVec3>& f, double dc_tol = dc_tolerance) {
  return gamma_cross(radon_riesz(f, dc_tol));
}

// A -> (i / w) kappa x A
inline AnalyticProfile rbs_apply(const AnalyticProfile& f) {
  AnalyticProfile out{{}, f.nu, f.mu};
  for (const auto& a : f.atoms) {
    if (a.frequency == 0.0) throw PreconditionError("rbs_apply: zero-frequency atom");
    out.atoms.push_back({a.direction, a.frequency, CVec3((I / a.frequency) * cross(a.direction.vec(), a.amplitude)),
                         a.weight});
  }
  return out;
}

inline GridProfile<CVec3> gamma_squared(const GridProfile<CVec3>& f) { return grid_derivative(f, 2); }

inline constexpr double transversality_tolerance = 1e-9;

// max |RBS[Gamma x F] - F| for profiles with Gamma . F = 0
inline double rbs_left_inverse_check(const GridProfile<CVec3>& f) {
  auto d = grid_derivative(f, 1);
  double par = 0.0, all = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (const auto& v : d.samples[i]) {
      par = std::max(par, std::abs(to_complex(f.directions[i].vec()).dot(v)));
      all = std::max(all, max_abs(v));
    }
  if (par > transversality_tolerance * std::max(all, 1e-300))
    throw PreconditionError("rbs_left_inverse_check: profile is not transverse (Gamma . F != 0)");
  return grid_distance(rbs_apply(gamma_cross(f)), f);
}

inline double rbs_left_inverse_check(const AnalyticProfile& f) {
  for (const auto& a : f.atoms)
    if (std::abs(to_complex(a.direction.vec()).dot(a.amplitude)) >
        transversality_tolerance * std::max(max_abs(a.amplitude), 1e-300))
      throw PreconditionError("rbs_left_inverse_check: profile is not transverse (Gamma . F != 0)");
  return profile_distance(rbs_apply(gamma_cross(f)), f);
}

}  // namespace trk
