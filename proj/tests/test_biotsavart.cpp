#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "trk/biotsavart.hpp"

using namespace trk;

namespace {

SampledField scalar_gaussian(const Vec3& c = Vec3::Zero()) { return gaussian_test_field(c, 1.0, CVec3(1, 0, 0)); }

double gk(auto&& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

// I2[e^{-|y|^2}](x) by reduction to one radial integral:
// (1/|x|) int_0^inf e^{-s^2} s min(s, |x|) ds
double riesz_gaussian_oracle(double r) {
  if (r == 0.0) return gk([](double s) { return std::exp(-s * s) * s; }, 0.0, 12.0);
  double a = gk([](double s) { return std::exp(-s * s) * s * s; }, 0.0, r);
  double b = gk([](double s) { return std::exp(-s * s) * s; }, r, 12.0);
  return (a / r + b);
}

}  // namespace

TEST(Riesz, ZeroField) {
  SampledField z{[](const Vec3&) { return CVec3(CVec3::Zero()); }, {}};
  EXPECT_EQ(riesz_potential(z, Vec3(0.1, 0.2, 0.3)), CVec3::Zero());
}

TEST(Riesz, GaussianMatchesRadialOracle) {
  auto f = scalar_gaussian();
  for (double r : {0.0, 0.4, 1.5}) {
    Vec3 x = r * Vec3(1, 2, 2) / 3.0;
    auto v = riesz_potential_checked(f, x);
    EXPECT_FALSE(v.truncation_warning);
    double oracle = riesz_gaussian_oracle(r);
    EXPECT_LT(std::abs(v.value[0] - oracle) / oracle, 1e-4) << r;
    // closed form (sqrt(pi)/4) erf(r)/r
    double closed = r == 0.0 ? 0.5 : std::sqrt(pi) / 4.0 * std::erf(r) / r;
    EXPECT_NEAR(oracle, closed, 1e-12);
  }
}

TEST(Riesz, NegativeLaplacianInverts) {
  auto f = gaussian_test_field(Vec3(0.1, 0, 0), 1.0, CVec3(1.0, -0.5, 0.2 * I));
  Vec3 x(0.3, -0.2, 0.1);
  auto I2 = [&](const Vec3& y) { return riesz_potential(f, y); };
  CVec3 lap = fd::laplacian(I2, x, 1e-2);
  EXPECT_LT((-lap - f(x)).norm() / f(x).norm(), 1e-3);
}

TEST(Riesz, WarnsWhenTheBallIsTooSmall) {
  VolumeQuadrature q;
  q.radius = 1.5;
  EXPECT_TRUE(riesz_potential_checked(scalar_gaussian(), Vec3::Zero(), q).truncation_warning);
}

TEST(BiotSavart, Linearity) {
  auto f = gaussian_toroidal_field(Vec3::Zero(), 1.0, Vec3(0, 0, 1));
  SampledField g{[&](const Vec3& x) { return CVec3(-f(x)); }, {}};
  Vec3 x(0.2, 0.4, -0.1);
  EXPECT_EQ(bs_integral(f, x), CVec3(-bs_integral(g, x)));
}

TEST(BiotSavart, PoloidalMapsToToroidal) {
  // BS[curl curl(g a)] = curl(g a)
  Vec3 a(0.3, -0.2, 1.0);
  auto pol = gaussian_poloidal_field(Vec3::Zero(), 1.0, a);
  auto tor = gaussian_toroidal_field(Vec3::Zero(), 1.0, a);
  for (const auto& x : random_points(3, 1.0, 4)) {
    CVec3 b = bs_integral(pol, x);
    EXPECT_LT((b - tor(x)).norm() / tor(x).norm(), 1e-4);
  }
}

TEST(BiotSavart, DivergenceFreeAndCurlInverts) {
  auto f = gaussian_toroidal_field(Vec3(0.1, 0.0, -0.1), 1.0, Vec3(0.2, 0.3, 1.0));
  auto b = [&](const Vec3& y) { return bs_integral(f, y); };
  Vec3 x(0.4, 0.2, 0.1);
  EXPECT_LT(std::abs(fd::divergence(b, x, 1e-2)), 1e-5);
  EXPECT_LT((fd::curl(b, x, 1e-2) - f(x)).norm() / f(x).norm(), 1e-3);
}

TEST(BiotSavart, BoundaryDefectOnFiniteDomain) {
  // uniform e_z in a ball is not tangent to the sphere: curl BS_D[F] = (2/3) e_z inside
  SampledField f{[](const Vec3&) { return CVec3(0, 0, 1); }, {}};
  VolumeQuadrature q;
  q.domain = VolumeDomain::fixed_ball;
  q.radius = 1.0;
  auto b = [&](const Vec3& y) { return bs_integral(f, y, q); };
  CVec3 c = fd::curl(b, Vec3(0.1, -0.05, 0.2), 1e-2);
  EXPECT_LT((c - CVec3(0, 0, 2.0 / 3.0)).norm(), 1e-6);
  EXPECT_GT((c - CVec3(0, 0, 1)).norm(), 1e-3);
}

TEST(BiotSavart, RadonCompositionTriangle) {
  // 8 pi^2 I2[F] = R^dagger R[F] and curl R^dagger R[F] = 8 pi^2 BS[F]
  auto f = scalar_gaussian(Vec3(0.2, 0.0, 0.0));
  auto sq = sphere_quadrature(10, 20, true);
  PGrid g{-8.0, 16.0, 64};
  PlaneQuadrature pq{6.0, 40, PlaneRule::gauss_legendre};
  auto r = radon_forward_grid(f, g, sq.nodes, sq.weights, pq);
  Vec3 x(0.1, 0.3, -0.2);
  CVec3 rr = adjoint_radon(r.profile, x);
  CVec3 i2 = 8.0 * pi * pi * riesz_potential(f, x);
  EXPECT_LT((rr - i2).norm() / i2.norm(), 2e-2);

  auto tor = gaussian_toroidal_field(Vec3::Zero(), 1.0, Vec3(0, 0, 1));
  auto rt = radon_forward_grid(tor, g, sq.nodes, sq.weights, pq);
  auto adj = [&](const Vec3& y) { return adjoint_radon(rt.profile, y); };
  CVec3 lhs = fd::curl(adj, x, 1e-2);
  CVec3 rhs = 8.0 * pi * pi * bs_integral(tor, x);
  EXPECT_LT((lhs - rhs).norm() / rhs.norm(), 2e-2);
}

TEST(PoissonFormulas, MatchQuadrature) {
  double R = 1.3, th = 0.4;
  for (double r : {0.5, 2.2}) {
    auto P = [&](double u) { return poisson_kernel(R, r, u - th); };
    double a = std::max(R, r), b = std::min(R, r);
    EXPECT_NEAR(gk(P, 0.0, 2.0 * pi) / (2.0 * pi), 1.0, 1e-12);
    EXPECT_NEAR(gk([&](double u) { return a * std::sin(u) * P(u); }, 0.0, 2.0 * pi) / (2.0 * pi), b * std::sin(th),
                1e-12);
    EXPECT_NEAR(gk([&](double u) { return a * std::cos(u) * P(u); }, 0.0, 2.0 * pi) / (2.0 * pi), b * std::cos(th),
                1e-12);
  }
}

TEST(PoissonFormulas, RegionSplitMatchesAcrossTheCircle) {
  double R = 0.8;
  for (double r : {R * (1 - 1e-6), R * (1 + 1e-6)}) {
    // cancellation-free forms: R^2 + r^2 - 2 r R cos u = (R - r)^2 + 4 r R sin^2(u/2)
    auto den = [&](double u) { return (R - r) * (R - r) + 4 * r * R * std::pow(std::sin(u / 2), 2); };
    auto inner = [&](double u) { return ((R - r) + 2 * r * std::pow(std::sin(u / 2), 2)) / den(u); };
    auto outer = [&](double u) { return ((r - R) + 2 * R * std::pow(std::sin(u / 2), 2)) / den(u); };
    // geometric breakpoints resolve the peak of width |R - r|/R at u = 0
    auto split = [&](auto&& f) {
      double s = 0.0, a = 0.0;
      for (double b = 1e-9; b < pi; b *= 10.0) {
        s += 2.0 * gk(f, a, b);
        a = b;
      }
      return s + 2.0 * gk(f, a, pi);
    };
    double qi = split(inner), qo = split(outer);
    EXPECT_NEAR(qi, poisson_inner_integral(R, r), 1e-8);
    EXPECT_NEAR(qo, poisson_outer_integral(R, r), 1e-8);
  }
}

TEST(LundquistBS, SemianalyticEigenrelation) {
  double F0 = 1.3, nu = 1.1;
  auto fl = lundquist(F0, nu);
  for (double X : {0.5, 2.0, 5.0}) {
    double R = X / nu;
    for (double th : {0.0, pi / 3, pi / 2}) {
      auto t = bs_lundquist_semianalytic(F0, nu, R, th);
      EXPECT_EQ(t.i1, 0.0);
      EXPECT_FALSE(t.tail_warning);
      Vec3 x(R * std::cos(th), R * std::sin(th), 0.0);
      EXPECT_LT((t.value - fl(x) / nu).norm() / (fl(x) / nu).norm(), 1e-6) << X << " " << th;
    }
    double m0 = bs_lundquist_semianalytic(F0, nu, R, 0.0).value.norm();
    for (double th : {pi / 3, pi / 2}) EXPECT_LT(std::abs(bs_lundquist_semianalytic(F0, nu, R, th).value.norm() - m0), 1e-10);
  }
}

TEST(LundquistBS, ClosedIdentities) {
  double X = 2.0;
  EXPECT_NEAR(gk([](double x) { return bessel_j(0, x) * x; }, 0.0, X) / X, bessel_j(1, X), 1e-12);
  auto t = bs_lundquist_semianalytic(1.0, 1.0, X, 0.0);
  EXPECT_NEAR(t.theta_part, bessel_j(1, X), 1e-12);
  EXPECT_NEAR(t.z_part, bessel_j(0, X), 1e-12);
}

TEST(Ampere, LundquistFluxes) {
  double F0 = 0.9, nu = 1.2;
  auto fl = lundquist(F0, nu);
  for (double R : {0.5, 1.0, 3.8317059702 / nu + 0.7}) {
    auto a = ampere_fluxes(fl, R, nu);
    double closed = 2.0 * pi * F0 * R * bessel_j(1, nu * R);
    EXPECT_LT(std::abs(a.phi_line - closed) / std::abs(closed), 1e-6);
    EXPECT_LT(std::abs(a.phi_surface - closed) / std::abs(closed), 1e-6);
    EXPECT_LT(std::abs(a.nu_Q - closed) / std::abs(closed), 1e-6);
  }
}

TEST(Ampere, VanishesAtBesselZero) {
  double nu = 1.0;
  auto a = ampere_fluxes(lundquist(1.0, nu), 3.8317059702 / nu, nu);
  EXPECT_LT(std::abs(a.Q), 1e-9);
  EXPECT_LT(std::abs(a.phi_line), 1e-9);
  EXPECT_LT(std::abs(a.phi_surface), 1e-9);
}

TEST(Ampere, SmallRadius) {
  double nu = 1.0, R = 0.01;
  auto a = ampere_fluxes(lundquist(1.0, nu), R, nu);
  double lead = pi * nu * R * R;
  EXPECT_LT(std::abs(a.phi_line - lead) / lead, 1e-3);
  EXPECT_LT(std::abs(a.nu_Q - lead) / lead, 1e-3);
}
