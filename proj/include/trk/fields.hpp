#pragma once

#include <map>
#include <optional>
#include <random>

#include "trk/moses.hpp"

namespace trk {

struct FieldInfo {
  std::string name;
  std::map<std::string, double> params;
  int mu = 0;                        // duality sign; 0 when not Trkalian
  std::optional<double> eigenvalue;  // curl eigenvalue mu * nu
};

struct SampledField {
  std::function<CVec3(const Vec3&)> eval;
  FieldInfo info;

  CVec3 operator()(const Vec3& x) const { return eval(x); }
};

// Scalar evaluator with optional analytic derivatives.
struct ScalarPotential {
  std::function<cplx(const Vec3&)> value;
  std::function<CVec3(const Vec3&)> gradient;
  std::function<CMat3(const Vec3&)> hessian;

  cplx operator()(const Vec3& x) const { return value(x); }
};

inline std::vector<Vec3> random_points(std::size_t n, double half, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-half, half);
  std::vector<Vec3> pts(n);
  for (auto& p : pts) p = Vec3(u(rng), u(rng), u(rng));
  return pts;
}

inline std::vector<Direction> random_directions(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Direction> out;
  out.reserve(n);
  while (out.size() < n) {
    Vec3 v(g(rng), g(rng), g(rng));
    if (v.norm() > 1e-8) out.push_back(Direction::normalized(v));
  }
  return out;
}

// max over points of |curl F - e F| / (|e| |F|)
inline double curl_eigen_residual(const SampledField& f, double e, const std::vector<Vec3>& pts,
                                  double h = fd::default_step) {
  double worst = 0.0;
  for (const auto& x : pts) {
    CVec3 c = fd::curl(f, x, h);
    CVec3 v = f(x);
    worst = std::max(worst, (c - e * v).norm() / (std::abs(e) * v.norm()));
  }
  return worst;
}

inline double certify_trkalian(const SampledField& f, std::size_t n = 10, std::uint64_t seed = 7) {
  if (!f.info.eigenvalue) throw PreconditionError("certify_trkalian: field carries no eigenvalue");
  return curl_eigen_residual(f, *f.info.eigenvalue, random_points(n, 1.0, seed));
}

inline SampledField real_part(const SampledField& f) {
  SampledField out;
  out.eval = [f](const Vec3& x) { return CVec3(f(x).real().cast<cplx>()); };
  out.info = f.info;
  out.info.name = "re(" + f.info.name + ")";
  return out;
}

// ---- mode fields ----------------------------------------------------------

struct HelicityMode {
  int lambda = 1;
  Direction kappa0;
  cplx amplitude = 1.0;
};

struct ModeField {
  double nu = 1.0;
  int mu = 1;
  double g = 1.0;
  std::vector<HelicityMode> modes;

  void validate() const {
    if (nu == 0.0) throw PreconditionError("ModeField: nu must be nonzero");
    if (mu != 1 && mu != -1) throw PreconditionError("ModeField: mu must be +-1");
    if (!(g > 0.0)) throw PreconditionError("ModeField: g must be positive");
    for (const auto& m : modes) {
      if (m.lambda != 1 && m.lambda != -1) throw PreconditionError("ModeField: lambda must be +-1");
      if (mu * m.lambda * nu <= 0.0)
        throw PreconditionError("ModeField: support condition mu*lambda*nu > 0 violated");
    }
  }
};

inline CVec3 eval_mode_field(const ModeField& f, const Vec3& x) {
  CVec3 s = CVec3::Zero();
  for (const auto& m : f.modes) {
    double phase = f.mu * m.lambda * f.nu * m.kappa0.dot(x);
    s += m.amplitude * std::exp(I * phase) * moses_q(m.kappa0, m.lambda);
  }
  return std::pow(2.0 * pi, -1.5) / f.g * s;
}

inline SampledField mode_field(const ModeField& f) {
  f.validate();
  SampledField out;
  out.eval = [f](const Vec3& x) { return eval_mode_field(f, x); };
  out.info = {"mode", {{"nu", f.nu}, {"mu", double(f.mu)}, {"g", f.g}, {"modes", double(f.modes.size())}},
              f.mu, f.mu * f.nu};
  return out;
}

// -i (a e^{i l nu z} E1 + b e^{i l nu x} E2 + c e^{i l nu y} E3)
inline SampledField abc_field(double a, double b, double c, int lambda, double nu) {
  if (lambda != 1 && lambda != -1) throw PreconditionError("abc_field: lambda must be +-1");
  const double l = lambda;
  CVec3 e1(1.0, I * l, 0.0), e2(0.0, 1.0, I * l), e3(I * l, 0.0, 1.0);
  SampledField out;
  out.eval = [=](const Vec3& x) -> CVec3 {
    cplx k = I * l * nu;
    return -I * (a * std::exp(k * x[2]) * e1 + b * std::exp(k * x[0]) * e2 + c * std::exp(k * x[1]) * e3);
  };
  out.info = {"abc", {{"a", a}, {"b", b}, {"c", c}, {"lambda", l}, {"nu", nu}}, 1, nu};
  return out;
}

// ---- Lundquist and CK -----------------------------------------------------

// F0 [J1(nu r) e_theta + J0(nu r) e_z]
inline SampledField lundquist(double F0, double nu) {
  if (nu == 0.0) throw PreconditionError("lundquist: nu must be nonzero");
  SampledField out;
  out.eval = [=](const Vec3& x) -> CVec3 {
    double r = std::hypot(x[0], x[1]);
    double j1r = nu * bessel_j_over_x(1, nu * r);  // J1(nu r)/r
    double j0 = bessel_j_signed(0, nu * r);
    return CVec3(-F0 * j1r * x[1], F0 * j1r * x[0], F0 * j0);
  };
  out.info = {"lundquist", {{"F0", F0}, {"nu", nu}}, 1, nu};
  return out;
}

struct CkFieldParts {
  SampledField toroidal;  // curl(Psi w)
  SampledField poloidal;  // (1/nu) curl curl(Psi w)
  SampledField total;
};

inline CVec3 potential_gradient(const ScalarPotential& psi, const Vec3& x, double h) {
  return psi.gradient ? psi.gradient(x) : fd::gradient(psi.value, x, h);
}

inline CMat3 potential_hessian(const ScalarPotential& psi, const Vec3& x, double h) {
  return psi.hessian ? psi.hessian(x) : fd::hessian(psi.value, x, h);
}

// max |(lap + nu^2) Psi| at fixed probe points, relative to nu^2 max |Psi|
inline double helmholtz_residual(const ScalarPotential& psi, double nu, double h = 1e-2) {
  static const Vec3 probes[] = {{0.1, 0.2, 0.3}, {-0.4, 0.5, 0.1}, {0.7, -0.2, -0.6}, {0.0, 0.0, 0.0}};
  double worst = 0.0, scale = 1e-300;
  for (const auto& x : probes) {
    cplx v = psi(x);
    cplx lap = potential_hessian(psi, x, h).trace();
    worst = std::max(worst, std::abs(lap + nu * nu * v));
    scale = std::max(scale, nu * nu * std::abs(v));
  }
  return worst / scale;
}

// Debye-potential construction. Derivatives of Psi are analytic when supplied,
// else 4th-order differences with step h.
inline CkFieldParts ck_field_parts(const ScalarPotential& psi, const Vec3& omega, double nu, double h = 1e-2) {
  if (nu == 0.0) throw PreconditionError("ck_field: nu must be nonzero");
  if (double r = helmholtz_residual(psi, nu, h); r > 1e-6)
    throw PreconditionError("ck_field: Psi fails the Helmholtz check (residual " + std::to_string(r) + ")");
  CVec3 w = to_complex(omega);
  auto tor = [=](const Vec3& x) -> CVec3 { return cross(potential_gradient(psi, x, h), w); };
  auto pol = [=](const Vec3& x) -> CVec3 {
    CMat3 H = potential_hessian(psi, x, h);
    return (H * w - w * H.trace()) / nu;
  };
  std::map<std::string, double> params{{"nu", nu}};
  CkFieldParts parts;
  parts.toroidal = {tor, {"ck_toroidal", params, 0, std::nullopt}};
  parts.poloidal = {pol, {"ck_poloidal", params, 0, std::nullopt}};
  parts.total = {[=](const Vec3& x) -> CVec3 { return tor(x) + pol(x); }, {"ck", params, 1, nu}};
  return parts;
}

inline SampledField ck_field(const ScalarPotential& psi, const Vec3& omega, double nu, double h = 1e-2) {
  return ck_field_parts(psi, omega, nu, h).total;
}

struct CKCircularParams {
  int m = 0;
  double k = 0.0;
  double sigma = 1.0;
  double amplitude = 1.0;

  double nu() const { return std::sqrt(sigma * sigma - k * k); }
  void validate() const {
    if (m < 0) throw PreconditionError("CKCircularParams: m must be >= 0");
    if (sigma == 0.0) throw PreconditionError("CKCircularParams: sigma must be nonzero");
    if (!(sigma * sigma - k * k > 0.0)) throw PreconditionError("CKCircularParams: need sigma^2 > k^2");
  }
};

// -[sigma curl(Psi e_z) + curl curl(Psi e_z)], Psi = J_m(nu r) e^{i m theta - i k z}
inline SampledField ck_circular(const CKCircularParams& p) {
  p.validate();
  const double nu = p.nu(), sigma = p.sigma, k = p.k, A = p.amplitude;
  const int m = p.m;
  SampledField out;
  out.eval = [=](const Vec3& x) -> CVec3 {
    double r = std::hypot(x[0], x[1]);
    double th = std::atan2(x[1], x[0]);
    cplx ph = A * std::exp(I * (m * th - k * x[2]));
    double jm = bessel_j(m, nu * r);
    cplx psi = jm * ph;
    cplx dr = nu * bessel_j_prime(m, nu * r) * ph;
    cplx dth = m == 0 ? cplx(0.0) : I * double(m) * nu * bessel_j_over_x(m, nu * r) * ph;
    cplx fr = -(sigma * dth - I * k * dr);
    cplx ft = sigma * dr + I * k * dth;
    cplx fz = -nu * nu * psi;
    double c = std::cos(th), s = std::sin(th);
    return CVec3(fr * c - ft * s, fr * s + ft * c, fz);
  };
  out.info = {"ck_circular", {{"m", double(m)}, {"k", k}, {"sigma", sigma}, {"amplitude", A}}, 1, sigma};
  return out;
}

// ---- gauge --------------------------------------------------------------

inline SampledField gauge_gradient_field(const ScalarPotential& U, double h = fd::default_step) {
  SampledField out;
  out.eval = [=](const Vec3& x) { return potential_gradient(U, x, h); };
  out.info = {"gauge_gradient", {}, 0, std::nullopt};
  return out;
}

// A' = A - (i/g) grad ln U
inline SampledField gauge_transform(const SampledField& A, const ScalarPotential& U, double g,
                                    double h = fd::default_step) {
  SampledField out;
  out.eval = [=](const Vec3& x) -> CVec3 { return A(x) - (I / g) * potential_gradient(U, x, h) / U(x); };
  out.info = A.info;
  out.info.name = A.info.name + "_gauged";
  return out;
}

inline ScalarPotential plane_phase(double nu) {
  ScalarPotential u;
  u.value = [nu](const Vec3& x) { return std::exp(I * nu * x[2]); };
  u.gradient = [nu](const Vec3& x) { return CVec3(0.0, 0.0, I * nu * std::exp(I * nu * x[2])); };
  return u;
}

struct LundquistPotential {
  SampledField A;
  CVec3 residual;  // curl A - nu A
};

inline LundquistPotential lundquist_potential(double F0, double nu) {
  SampledField fl = lundquist(F0, nu);
  LundquistPotential out;
  out.A.eval = [=](const Vec3& x) -> CVec3 { return (fl(x) - CVec3(0.0, 0.0, F0)) / nu; };
  out.A.info = {"lundquist_potential", {{"F0", F0}, {"nu", nu}}, 0, std::nullopt};
  out.residual = CVec3(0.0, 0.0, F0);
  return out;
}

struct MassQuantization {
  double nu;      // n g^2
  double period;  // 2 pi / g^2
};

inline MassQuantization quantized_mass(int n, double g) {
  if (!(g > 0.0)) throw PreconditionError("quantized_mass: g must be positive");
  return {n * g * g, 2.0 * pi / (g * g)};
}

// |U(z + l) - U(z)| for U = e^{i nu z}
inline double phase_periodicity_residual(double nu, double period, double z) {
  return std::abs(std::exp(I * nu * (z + period)) - std::exp(I * nu * z));
}

// ---- Gaussian probes ------------------------------------------------------

inline SampledField gaussian_test_field(const Vec3& center, double width, const CVec3& polarization) {
  if (!(width > 0.0)) throw PreconditionError("gaussian_test_field: width must be positive");
  SampledField out;
  out.eval = [=](const Vec3& x) -> CVec3 {
    return polarization * std::exp(-(x - center).squaredNorm() / (width * width));
  };
  out.info = {"gaussian", {{"width", width}}, 0, std::nullopt};
  return out;
}

// curl(g a) = grad g x a; divergence-free
inline SampledField gaussian_toroidal_field(const Vec3& center, double width, const Vec3& axis) {
  if (!(width > 0.0)) throw PreconditionError("gaussian_toroidal_field: width must be positive");
  SampledField out;
  out.eval = [=](const Vec3& x) -> CVec3 {
    Vec3 s = x - center;
    double w2 = width * width;
    double g = std::exp(-s.squaredNorm() / w2);
    return to_complex((-2.0 * g / w2) * s.cross(axis));
  };
  out.info = {"gaussian_toroidal", {{"width", width}}, 0, std::nullopt};
  return out;
}

// curl curl(g a); its Biot-Savart image is gaussian_toroidal_field
inline SampledField gaussian_poloidal_field(const Vec3& center, double width, const Vec3& axis) {
  if (!(width > 0.0)) throw PreconditionError("gaussian_poloidal_field: width must be positive");
  SampledField out;
  out.eval = [=](const Vec3& x) -> CVec3 {
    Vec3 s = x - center;
    double w2 = width * width, w4 = w2 * w2;
    double g = std::exp(-s.squaredNorm() / w2);
    Vec3 v = 4.0 * s * s.dot(axis) / w4 - 4.0 * axis * s.squaredNorm() / w4 + 4.0 * axis / w2;
    return to_complex(g * v);
  };
  out.info = {"gaussian_poloidal", {{"width", width}}, 0, std::nullopt};
  return out;
}

}  // namespace trk
