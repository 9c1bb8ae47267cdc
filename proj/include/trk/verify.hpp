#pragma once

#include <limits>
#include <map>

#include "trk/io.hpp"

namespace trk {

namespace checks {

inline ModeField random_mode_field(std::size_t n, double nu, std::uint64_t seed, int mu = 1) {
  ModeField f{nu, mu, 1.0, {}};
  auto dirs = random_directions(n, seed);
  std::mt19937_64 rng(seed + 1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int lambda = mu * (nu > 0 ? 1 : -1);
  for (const auto& d : dirs) f.modes.push_back({lambda, d, cplx(u(rng), u(rng))});
  return f;
}

inline double rel_error(const CVec3& a, const CVec3& b) { return (a - b).norm() / b.norm(); }

inline double rel_distance(const AnalyticProfile& a, const AnalyticProfile& b) {
  return profile_distance(a, b) / profile_max_amplitude(b);
}

// max deviation of Q_a^dagger Q_b from delta_ab and of sum Q_a Q_a^dagger from 1
inline double moses_frame(std::size_t n, std::uint64_t seed) {
  auto dirs = random_directions(n, seed);
  std::vector<double> worst(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    CVec3 q[3];
    for (int a = 0; a < 3; ++a) q[a] = moses_frame(dirs[i], HelicityLabel::from_index(a + 1)).value;
    CMat3 sum = CMat3::Zero();
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) worst[i] = std::max(worst[i], std::abs(q[a].dot(q[b]) - (a == b ? 1.0 : 0.0)));
      sum += q[a] * q[a].adjoint();
    }
    worst[i] = std::max(worst[i], (sum - CMat3::Identity()).cwiseAbs().maxCoeff());
  });
  return *std::max_element(worst.begin(), worst.end());
}

// curl chi_lambda = lambda |k| chi_lambda at random (x, k)
inline double eigenfunction(std::size_t n, std::uint64_t seed) {
  auto dirs = random_directions(n, seed);
  auto pts = random_points(n, 2.0, seed + 1);
  std::mt19937_64 rng(seed + 2);
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Vec3 k = mag(rng) * dirs[i].vec();
    for (int l : {1, -1}) {
      auto lab = HelicityLabel::from_lambda(l);
      auto chi = [&](const Vec3& x) { return eigenfunction(x, k, lab); };
      worst = std::max(worst, rel_error(fd::curl(chi, pts[i]), CVec3(double(l) * k.norm() * chi(pts[i]))));
    }
  }
  return worst;
}

inline std::vector<SampledField> trkalian_catalog() {
  std::vector<SampledField> out = {lundquist(1.0, 1.0), lundquist(0.7, -1.3),
                                   ck_circular({1, 0.5, 1.2, 1.0}), ck_circular({2, -0.3, -1.4, 0.8}),
                                   ck_circular({3, 1.0, 2.0, 1.0}), abc_field(1.0, 1.0, 1.0, 1, 1.0),
                                   abc_field(0.5, -1.0, 0.3, 1, 1.7)};
  out.push_back(mode_field(random_mode_field(16, 1.1, 31)));
  out.push_back(mode_field(random_mode_field(16, 0.9, 32, -1)));
  return out;
}

inline double trkalian_certification(std::size_t n_points) {
  double worst = 0.0;
  for (const auto& f : trkalian_catalog()) worst = std::max(worst, certify_trkalian(f, n_points, 7));
  return worst;
}

struct AmpereCheck {
  double agreement = 0.0;  // max relative spread of the three fluxes and 2 pi F0 R J1(nu R)
  double at_zero = 0.0;    // max |flux| at the first J1 zero
};

inline constexpr double first_j1_zero = 3.8317059702;

inline AmpereCheck ampere(const std::vector<double>& radii, double F0 = 0.9, double nu = 1.2) {
  AmpereCheck c;
  auto f = lundquist(F0, nu);
  for (double R : radii) {
    auto a = ampere_fluxes(f, R, nu);
    double closed = 2.0 * pi * F0 * R * bessel_j(1, nu * R);
    cplx v[4] = {a.phi_line, a.phi_surface, a.nu_Q, closed};
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) c.agreement = std::max(c.agreement, std::abs(v[i] - v[j]) / std::abs(closed));
  }
  auto z = ampere_fluxes(lundquist(1.0, 1.0), first_j1_zero, 1.0);
  c.at_zero = std::max({std::abs(z.Q), std::abs(z.phi_line), std::abs(z.phi_surface)});
  return c;
}

inline double radon_roundtrip(std::size_t modes, std::size_t points, std::uint64_t seed) {
  auto f = random_mode_field(modes, modes % 2 ? 1.1 : -0.8, seed);
  auto p = radon_mode_analytic(f);
  double worst = 0.0;
  for (const auto& x : random_points(points, 2.0, seed + 7))
    worst = std::max(worst, rel_error(inverse_radon(p, x), eval_mode_field(f, x)));
  return worst;
}

// inverse over H and over its complement against the field
inline double hemisphere_roundtrip(std::size_t modes, std::size_t points, std::uint64_t seed) {
  auto f = random_mode_field(modes, 1.1, seed);
  auto p = radon_mode_analytic(f);
  double worst = 0.0;
  for (const auto& h : {canonical_hemisphere(), octant_hemisphere()})
    for (const auto& x : random_points(points, 2.0, seed + 3)) {
      CVec3 ref = eval_mode_field(f, x);
      worst = std::max({worst, rel_error(hemisphere_inverse(p, h, x), ref),
                        rel_error(hemisphere_inverse(p, complement(h), x), ref)});
    }
  return worst;
}

struct CatalogProfile {
  AnalyticProfile profile;
  double eigenvalue;
};

inline std::vector<CatalogProfile> trkalian_profiles() {
  std::vector<CatalogProfile> out;
  for (int mu : {1, -1})
    for (double nu : {1.3, -0.7}) {
      auto f = random_mode_field(6, nu, 40, mu);
      out.push_back({radon_mode_analytic(f), mu * nu});
    }
  out.push_back({lundquist_radon_profile(1.0, 1.2), 1.2});
  out.push_back({lundquist_radon_profile(0.5, -0.9), -0.9});
  auto [w1, w2] = abc_measures(1.0, 1.0, 1.0, 1, 1.4);
  out.push_back({ck_integral_profile(w1, w2, 1, 1.4), 1.4});
  return out;
}

inline double eigen_atoms() {
  double worst = 0.0;
  for (const auto& c : trkalian_profiles())
    worst = std::max(worst, profile_distance(gamma_cross(c.profile), scaled(c.profile, c.eigenvalue)) /
                                (std::abs(c.eigenvalue) * profile_max_amplitude(c.profile)));
  return worst;
}

inline GridProfile<CVec3> grid_over_atoms(const AnalyticProfile& p, double nu, int cycles = 2, int n = 32) {
  std::vector<Direction> dirs;
  for (const auto& a : p.atoms)
    if (std::none_of(dirs.begin(), dirs.end(), [&](const Direction& d) { return d.vec() == a.direction.vec(); }))
      dirs.push_back(a.direction);
  return sample_profile(p, PGrid::commensurate(nu, cycles, n), dirs);
}

inline double eigen_grid() {
  double worst = 0.0;
  for (const auto& c : trkalian_profiles()) {
    auto g = grid_over_atoms(c.profile, c.eigenvalue);
    auto lhs = gamma_cross(g);
    for (auto& row : g.samples)
      for (auto& v : row) v *= c.eigenvalue;
    worst = std::max(worst, grid_distance(lhs, g) / grid_max(g));
  }
  return worst;
}

inline double parity() {
  double worst = 0.0;
  for (const auto& c : trkalian_profiles()) worst = std::max(worst, parity_residual(c.profile));
  return worst;
}

inline double intertwining(DerivativeKind kind, std::size_t n, std::uint64_t seed) {
  auto dirs = random_directions(n, seed);
  std::mt19937_64 rng(seed + 1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SampledField f = kind == DerivativeKind::grad ? gaussian_test_field(Vec3(0.2, 0, 0), 1.0, CVec3(1, 0, 0))
                                                : gaussian_test_field(Vec3(0.1, 0.2, -0.1), 1.0, CVec3(1.0, 0.5 * I, -0.3));
  double worst = 0.0;
  for (const auto& k : dirs) {
    auto r = intertwining_check(f, k, u(rng), kind);
    worst = std::max(worst, r.truncation_warning ? std::numeric_limits<double>::infinity() : r.residual);
  }
  return worst;
}

// R^dagger R[F] = (8 pi^2/nu^2) F on mode fields
inline double adjoint_analytic(std::size_t points) {
  double nu = 1.3;
  auto f = random_mode_field(4, nu, 5);
  auto p = radon_mode_analytic(f);
  double worst = 0.0;
  for (const auto& x : random_points(points, 2.0, 6))
    worst = std::max(worst, rel_error(adjoint_radon(p, x), CVec3((8.0 * pi * pi / (nu * nu)) * eval_mode_field(f, x))));
  return worst;
}

// R^dagger R[F] = 8 pi^2 I2[F] for a Gaussian at one point
inline double adjoint_riesz() {
  auto f = gaussian_test_field(Vec3(0.2, 0, 0), 1.0, CVec3(1, 0, 0));
  auto sq = sphere_quadrature(10, 20, true);
  auto r = radon_forward_grid(f, PGrid{-8.0, 16.0, 64}, sq.nodes, sq.weights, PlaneQuadrature{6.0, 40, PlaneRule::gauss_legendre});
  Vec3 x(0.1, 0.3, -0.2);
  return rel_error(adjoint_radon(r.profile, x), CVec3(8.0 * pi * pi * riesz_potential(f, x)));
}

// curl BS[F] = F for a divergence-free Gaussian
inline double bs_curl_inverse() {
  auto f = gaussian_toroidal_field(Vec3(0.1, 0.0, -0.1), 1.0, Vec3(0.2, 0.3, 1.0));
  auto b = [&](const Vec3& y) { return bs_integral(f, y); };
  Vec3 x(0.4, 0.2, 0.1);
  return rel_error(fd::curl(b, x, 1e-2), f(x));
}

struct LundquistBsCheck {
  double eigen = 0.0;  // max |BS[F_L] - F_L/nu| / |F_L/nu|
  double i1 = 0.0;     // max |I1|
};

inline LundquistBsCheck bs_lundquist(const std::vector<double>& xs, double F0 = 1.3, double nu = 1.1) {
  LundquistBsCheck c;
  auto fl = lundquist(F0, nu);
  for (double X : xs)
    for (double th : {0.0, pi / 3, pi / 2}) {
      double R = X / nu;
      auto t = bs_lundquist_semianalytic(F0, nu, R, th);
      Vec3 x(R * std::cos(th), R * std::sin(th), 0.0);
      c.eigen = std::max(c.eigen, rel_error(t.value, CVec3(fl(x) / nu)));
      if (t.tail_warning) c.eigen = std::numeric_limits<double>::infinity();
      c.i1 = std::max(c.i1, std::abs(t.i1));
    }
  return c;
}

inline double rbs_eigen_atoms() {
  double worst = 0.0;
  for (const auto& c : trkalian_profiles())
    worst = std::max(worst, rel_distance(rbs_apply(c.profile), scaled(c.profile, 1.0 / c.eigenvalue)));
  return worst;
}

inline double rbs_eigen_grid() {
  double worst = 0.0;
  for (const auto& c : trkalian_profiles()) {
    auto g = grid_over_atoms(c.profile, c.eigenvalue);
    auto r = rbs_apply(g);
    for (auto& row : g.samples)
      for (auto& v : row) v /= c.eigenvalue;
    worst = std::max(worst, grid_distance(r, g) / grid_max(g));
  }
  return worst;
}

inline double rbs_gauge_kernel() {
  ScalarAtomProfile phi{{{Direction::normalized(Vec3(1, 1, 1)), 0.8, cplx(0.3, 1.0), 1.0},
                         {Direction::normalized(Vec3(0, -1, 0)), -2.0, cplx(1.0, 0.0), 0.5}},
                        0.0,
                        1};
  return profile_max_amplitude(rbs_apply(gamma_grad(phi)));
}

// transverse two-tone grid profile and the Lundquist ring
inline double rbs_left_inverse() {
  std::vector<Direction> dirs = {Direction::normalized(Vec3(0, 0, 1)), Direction::normalized(Vec3(1, 2, -1)),
                                 Direction::normalized(Vec3(-0.3, 0.8, 0.4))};
  auto f = sample_function(PGrid::commensurate(1.0, 4, 64), dirs, {}, [](double p, const Direction& k) {
    Vec3 t = k.vec().unitOrthogonal();
    Vec3 u = k.vec().cross(t);
    return CVec3(std::exp(I * p) * to_complex(t) + (0.5 - 0.2 * I) * std::exp(-1.5 * I * p) * to_complex(u));
  });
  auto ring = lundquist_radon_profile(1.0, 1.1);
  return std::max(rbs_left_inverse_check(f) / grid_max(f), rbs_left_inverse_check(ring) / profile_max_amplitude(ring));
}

// first term against the single-mode profile, both helicities
inline double ck_single_mode() {
  Direction k0 = Direction::normalized(Vec3(0.3, -0.5, 0.8));
  double worst = 0.0;
  for (int l : {1, -1}) {
    double nu = 1.4 * l;
    auto s = ck_transform_solution(single_mode_debye(k0, l, nu));
    worst = std::max(worst, rel_distance(s.toroidal, plane_wave_radon(l * nu * k0.vec(), moses_q(k0, l))));
  }
  return worst;
}

// first term of the L/L' choice, the e_z choice, and the measure form against the ring profile
inline double ck_lundquist() {
  double F0 = 1.3, nu = 1.1;
  auto ref = lundquist_radon_profile(F0, nu);
  auto w = lundquist_measure(F0, nu);
  return std::max({rel_distance(ck_transform_solution(lundquist_debye(F0, nu)).toroidal, ref),
                   rel_distance(ck_transform_solution(lundquist_z_debye(F0, nu)).total, ref),
                   rel_distance(ck_integral_profile(w, w, 1, nu), ref)});
}

struct AbcCheck {
  double field = 0.0;  // reconstruction against the closed abc form
  double curl = 0.0;   // fd curl eigen residual with eigenvalue nu
};

inline AbcCheck ck_abc(std::size_t points, double nu = 1.3) {
  AbcCheck c;
  auto [w1, w2] = abc_measures(1.0, 1.0, 1.0, 1, nu);
  SampledField f{[w1 = w1, w2 = w2, nu](const Vec3& x) { return reconstruct_physical(w1, w2, 1, nu, x); }, {}};
  for (const auto& x : random_points(points, 2.0, 9)) {
    Vec3 abc(std::sin(nu * x[2]) + std::cos(nu * x[1]), std::sin(nu * x[0]) + std::cos(nu * x[2]),
             std::sin(nu * x[1]) + std::cos(nu * x[0]));
    c.field = std::max(c.field, (f(x).real() - abc).norm() / abc.norm());
  }
  c.curl = curl_eigen_residual(f, nu, random_points(points, 1.0, 2));
  return c;
}

inline double ck_potential_grid() {
  double nu = 1.3;
  double worst = 0.0;
  for (const auto& c : {single_mode_debye(Direction::normalized(Vec3(0.2, 0.1, 1)), 1, nu), lundquist_debye(1.0, nu, 16)}) {
    auto r = ck_transform_potential_check(c, PGrid::commensurate(nu, 2, 32));
    double s = profile_max_amplitude(ck_transform_solution(c).total);
    worst = std::max({worst, r.potential / s, r.rbs / s});
  }
  return worst;
}

inline double ck_contour() {
  double worst = 0.0;
  for (double nu : {0.5, 1.0, 3.0})
    for (double p = -5.0; p <= 5.0; p += 0.25)
      for (int l : {1, -1})
        for (auto b : {Branch::plus, Branch::minus}) {
          cplx r = oscillator_residue(p, l, nu, b);
          worst = std::max(worst, std::abs(oscillator_residue(p, l, nu, b, ContourMode::numeric) - r) / std::abs(r));
        }
  return worst;
}

struct DualityCheck {
  double antipodal = 0.0;   // |F'^R(p, kappa) - F^R(p, -kappa)|
  double eigen_flip = 0.0;  // |Gamma x F'^R + nu F'^R| relative
};

// F'(x) = F(-x) through the orthogonal map x -> -x
inline DualityCheck duality() {
  DualityCheck c;
  for (double nu : {1.0, -1.3}) {
    auto f = random_mode_field(3, nu, 80);
    auto p = radon_mode_analytic(f);
    auto pm = transform_radon_linear(p, -Mat3::Identity());
    for (const auto& a : p.atoms)
      for (double s : {0.0, 0.37, -1.2})
        c.antipodal = std::max(c.antipodal, max_abs(CVec3(profile_value(pm, s, a.direction) - profile_value(p, s, -a.direction))));
    c.eigen_flip = std::max(c.eigen_flip, profile_distance(gamma_cross(pm), scaled(pm, -nu)) /
                                              (std::abs(nu) * profile_max_amplitude(pm)));
  }
  return c;
}

// F_L = nu A' after the gauge U = e^{i nu z}
inline double gauge_fix(std::size_t points) {
  double nu = 1.3, g = 0.8, F0 = nu * nu / g;
  auto pot = lundquist_potential(F0, nu);
  auto a2 = gauge_transform(pot.A, plane_phase(nu), g);
  auto fl = lundquist(F0, nu);
  double worst = 0.0;
  for (const auto& y : random_points(points, 3.0, 91)) worst = std::max(worst, (fl(y) - nu * a2(y)).norm());
  return worst;
}

// U = e^{i n g^2 z} is periodic on l = 2 pi/g^2
inline double quantization() {
  double worst = 0.0;
  for (double g : {0.7, 1.0, 1.6})
    for (int n : {1, 2, 5}) {
      auto q = quantized_mass(n, g);
      for (double z : {0.0, 0.3, -2.0}) worst = std::max(worst, phase_periodicity_residual(q.nu, q.period, z));
    }
  return worst;
}

}  // namespace checks

// ---- verify suite -----------------------------------------------------------------

struct VerifyCheck {
  std::string name;
  std::string group;
  std::string identity;
  double tolerance;
  std::function<double()> run;
};

struct VerifyRecord {
  std::string name, group, identity;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

inline constexpr double exact_tolerance = 1e-300;

inline std::vector<VerifyCheck> default_checks() {
  using namespace checks;
  return {
      {"moses.orthonormal_complete", "moses", "Q_a^dagger Q_b = delta_ab, sum Q_a Q_a^dagger = 1", 1e-12,
       [] { return moses_frame(1000, 1); }},
      {"moses.eigenfunction", "moses", "curl chi_lambda = lambda |k| chi_lambda", 1e-7, [] { return eigenfunction(20, 2); }},
      {"fields.trkalian", "fields", "curl F = mu nu F on the catalog", 1e-6, [] { return trkalian_certification(10); }},
      {"ampere.fluxes", "ampere", "line = surface = nu Q = 2 pi F0 R J1(nu R)", 1e-6,
       [] { return ampere({0.5, 1.0, 3.9}).agreement; }},
      {"ampere.bessel_zero", "ampere", "fluxes vanish at the first J1 zero", 1e-9, [] { return ampere({}).at_zero; }},
      {"radon.roundtrip", "radon", "inverse R o R = 1 on mode fields", 1e-9, [] { return radon_roundtrip(16, 10, 100); }},
      {"radon.hemisphere", "radon", "hemisphere inverse on H and H'", 1e-9, [] { return hemisphere_roundtrip(5, 10, 55); }},
      {"radon.eigen_atoms", "radon", "Gamma x F^R = mu nu F^R on atoms", 1e-14, [] { return eigen_atoms(); }},
      {"radon.eigen_grid", "radon", "Gamma x F^R = mu nu F^R on commensurate grids", 1e-9, [] { return eigen_grid(); }},
      {"radon.parity", "radon", "F^R(-p, -kappa) = F^R(p, kappa)", exact_tolerance, [] { return parity(); }},
      {"intertwining.curl", "intertwining", "R[curl F] = Gamma x R[F]", 1e-4,
       [] { return intertwining(DerivativeKind::curl, 2, 41); }},
      {"intertwining.div", "intertwining", "R[div F] = Gamma . R[F]", 1e-4,
       [] { return intertwining(DerivativeKind::div, 2, 42); }},
      {"intertwining.grad", "intertwining", "R[grad f] = Gamma R[f]", 1e-4,
       [] { return intertwining(DerivativeKind::grad, 2, 43); }},
      {"composition.adjoint_trkalian", "composition", "R^dagger R[F] = (8 pi^2/nu^2) F", 1e-10,
       [] { return adjoint_analytic(10); }},
      {"composition.adjoint_riesz", "composition", "R^dagger R[F] = 8 pi^2 I2[F]", 2e-2, [] { return adjoint_riesz(); }},
      {"biotsavart.curl_inverse", "biotsavart", "curl BS[F] = F", 1e-3, [] { return bs_curl_inverse(); }},
      {"biotsavart.lundquist", "biotsavart", "BS[F_L] = F_L/nu", 1e-6, [] { return bs_lundquist({0.5, 2.0, 5.0}).eigen; }},
      {"biotsavart.i1", "biotsavart", "I1 = 0", exact_tolerance, [] { return bs_lundquist({0.5, 2.0, 5.0}).i1; }},
      {"rbs.eigen_atoms", "rbs", "RBS[F^R] = F^R/(mu nu) on atoms", 1e-14, [] { return rbs_eigen_atoms(); }},
      {"rbs.eigen_grid", "rbs", "RBS[F^R] = F^R/(mu nu) on grids", 1e-9, [] { return rbs_eigen_grid(); }},
      {"rbs.gauge_kernel", "rbs", "RBS[Gamma phi] = 0", exact_tolerance, [] { return rbs_gauge_kernel(); }},
      {"rbs.left_inverse", "rbs", "RBS[Gamma x F^R] = F^R for Gamma . F^R = 0", 1e-9, [] { return rbs_left_inverse(); }},
      {"ck.single_mode", "ck", "Gamma x (Psi Q) gives the single-mode profile", 1e-14, [] { return ck_single_mode(); }},
      {"ck.lundquist", "ck", "Debye and measure choices give the Lundquist profile", 1e-14, [] { return ck_lundquist(); }},
      {"ck.abc_field", "ck", "contour reconstruction gives the abc field", 1e-12, [] { return ck_abc(10).field; }},
      {"ck.abc_curl", "ck", "curl F = nu F for the reconstructed abc field", 1e-7, [] { return ck_abc(10).curl; }},
      {"ck.potential_grid", "ck", "Gamma x H = G and RBS[G] = G/nu on grids", 1e-9, [] { return ck_potential_grid(); }},
      {"ck.contour", "ck", "numeric loop = residue", 1e-12, [] { return ck_contour(); }},
      {"duality.antipodal", "duality", "F'^R(p, kappa) = F^R(p, -kappa)", exact_tolerance, [] { return duality().antipodal; }},
      {"duality.eigen_flip", "duality", "Gamma x F'^R = -nu F'^R", 1e-14, [] { return duality().eigen_flip; }},
      {"duality.gauge_fix", "duality", "F_L = nu A'", 1e-9, [] { return gauge_fix(20); }},
      {"duality.quantization", "duality", "U periodic on l = 2 pi/g^2 for nu = n g^2", 1e-12, [] { return quantization(); }},
  };
}

struct VerifyOptions {
  std::string only;                    // group name or substring of record names
  std::map<std::string, double> tol;   // record name, group, or "*"
};

inline bool verify_selected(const VerifyCheck& c, const std::string& only) {
  return only.empty() || c.group == only || c.name.find(only) != std::string::npos;
}

inline double verify_tolerance(const VerifyCheck& c, const VerifyOptions& o) {
  for (const auto& key : {c.name, c.group, std::string("*")})
    if (auto it = o.tol.find(key); it != o.tol.end()) return it->second;
  return c.tolerance;
}

inline std::vector<VerifyRecord> run_verify(const VerifyOptions& o, const std::vector<VerifyCheck>& suite = default_checks()) {
  for (const auto& [k, v] : o.tol)
    if (!(v > 0.0)) throw std::invalid_argument("tolerance for '" + k + "' must be positive");
  std::vector<VerifyRecord> out;
  for (const auto& c : suite) {
    if (!verify_selected(c, o.only)) continue;
    VerifyRecord r{c.name, c.group, c.identity, 0.0, verify_tolerance(c, o), false};
    try {
      r.residual = c.run();
    } catch (const std::exception&) {
      r.residual = std::numeric_limits<double>::infinity();
    }
    r.pass = r.residual <= r.tolerance;
    out.push_back(r);
  }
  return out;
}

inline json residual_json(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? json("nan") : json(v > 0 ? "inf" : "-inf");
}

inline json verify_report(const std::vector<VerifyRecord>& records) {
  json recs = json::array();
  std::size_t failed = 0;
  for (const auto& r : records) {
    failed += !r.pass;
    recs.push_back({{"name", r.name},
                    {"group", r.group},
                    {"identity", r.identity},
                    {"residual", residual_json(r.residual)},
                    {"tolerance", r.tolerance},
                    {"pass", r.pass}});
  }
  return {{"records", recs}, {"passed", records.size() - failed}, {"failed", failed}, {"all_pass", failed == 0}};
}

}  // namespace trk
