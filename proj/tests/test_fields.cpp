#include <gtest/gtest.h>

#include "trk/fields.hpp"

using namespace trk;

namespace {

double rel(const CVec3& a, const CVec3& b) { return (a - b).norm() / b.norm(); }

ModeField random_mode_field(std::size_t n, double nu, int mu, std::uint64_t seed) {
  ModeField f{nu, mu, 1.0, {}};
  auto dirs = random_directions(n, seed);
  std::mt19937_64 rng(seed + 1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int lambda = (mu * nu > 0) ? 1 : -1;
  for (const auto& d : dirs) f.modes.push_back({lambda, d, cplx(u(rng), u(rng))});
  return f;
}

// standard real ABC flow (A sin z + C cos y, B sin x + A cos z, C sin y + B cos x)
Vec3 abc_real(double A, double B, double C, const Vec3& x) {
  return Vec3(A * std::sin(x[2]) + C * std::cos(x[1]), B * std::sin(x[0]) + A * std::cos(x[2]),
              C * std::sin(x[1]) + B * std::cos(x[0]));
}

}  // namespace

TEST(ModeField, OriginValue) {
  ModeField f{1.0, 1, 1.0, {{1, Direction(0, 0, 1), std::pow(2 * pi, 1.5)}}};
  EXPECT_LT((eval_mode_field(f, Vec3::Zero()) - CVec3(1.0, I, 0.0) / std::sqrt(2.0)).norm(), 1e-15);
}

TEST(ModeField, SupportConditionEnforced) {
  ModeField bad{1.0, 1, 1.0, {{-1, Direction(0, 0, 1), 1.0}}};
  EXPECT_THROW(bad.validate(), PreconditionError);
  ModeField asd{1.0, -1, 1.0, {{-1, Direction(0, 0, 1), 1.0}}};
  EXPECT_NO_THROW(asd.validate());
}

TEST(ModeField, CurlEigenvalueBothSectors) {
  for (int mu : {1, -1})
    for (double nu : {1.3, -0.8}) {
      auto f = mode_field(random_mode_field(5, nu, mu, 40));
      for (const auto& x : random_points(10, 2.0, 41)) {
        EXPECT_LT(rel(fd::curl(f, x), mu * nu * f(x)), 1e-7);
        EXPECT_LT(std::abs(fd::divergence(f, x)), 1e-7);
      }
      EXPECT_LT(certify_trkalian(f), 1e-6);
    }
}

TEST(ModeField, ThreeModesGiveAbc) {
  // frame phases absorbed into the amplitudes: Q1(e_z)=E1/r2, Q1(e_x)=iE2/r2, Q1(e_y)=-iE3/r2
  double c = std::pow(2 * pi, 1.5) * std::sqrt(2.0);
  ModeField f{1.0, 1, 1.0,
              {{1, Direction(0, 0, 1), -I * c}, {1, Direction(1, 0, 0), -c}, {1, Direction(0, 1, 0), c}}};
  for (const auto& x : random_points(20, 3.0, 50))
    EXPECT_LT((eval_mode_field(f, x).real() - abc_real(1, 1, 1, x)).norm(), 1e-13);
}

TEST(ModeField, EqualAmplitudesGiveShiftedAbc) {
  double c = std::pow(2 * pi, 1.5) * std::sqrt(2.0);
  ModeField f{1.0, 1, 1.0, {{1, Direction(0, 0, 1), c}, {1, Direction(1, 0, 0), c}, {1, Direction(0, 1, 0), c}}};
  Vec3 shift(pi, 0.0, pi / 2);
  for (const auto& x : random_points(20, 3.0, 51))
    EXPECT_LT((eval_mode_field(f, x).real() - abc_real(1, 1, 1, Vec3(x + shift))).norm(), 1e-13);
}

TEST(AbcField, RealPartIsStandardAbc) {
  auto f = abc_field(1.0, 2.0, 0.5, 1, 1.0);
  for (const auto& x : random_points(20, 3.0, 52))
    EXPECT_LT((f(x).real() - abc_real(1.0, 2.0, 0.5, x)).norm(), 1e-14);
  EXPECT_LT(certify_trkalian(abc_field(1, 1, 1, -1, 2.0)), 1e-6);
}

TEST(Lundquist, AxisValue) {
  auto f = lundquist(2.5, 1.3);
  EXPECT_LT((f(Vec3(0, 0, 0.4)) - CVec3(0, 0, 2.5)).norm(), 1e-15);
}

TEST(Lundquist, CurlEigenvalue) {
  auto f = lundquist(1.0, 1.0);
  Vec3 x(0.5, 0.4, 0.1);
  EXPECT_LT(rel(fd::curl(f, x), f(x)), 1e-8);
  auto g = lundquist(0.7, -1.9);
  EXPECT_LT(certify_trkalian(g), 1e-6);
}

TEST(Lundquist, AzimuthalZero) {
  double z1 = 3.8317059702;
  auto f = lundquist(1.0, 2.0);
  CVec3 v = f(Vec3(z1 / 2.0 * std::cos(0.4), z1 / 2.0 * std::sin(0.4), 0.0));
  EXPECT_LT(std::abs(v[0]) + std::abs(v[1]), 1e-9);
}

TEST(CkField, PlaneWaveDebyePotential) {
  double nu = 1.7;
  ScalarPotential analytic;
  analytic.value = [nu](const Vec3& x) { return std::exp(I * nu * x[2]); };
  analytic.gradient = [nu](const Vec3& x) { return CVec3(0, 0, I * nu * std::exp(I * nu * x[2])); };
  analytic.hessian = [nu](const Vec3& x) {
    CMat3 h = CMat3::Zero();
    h(2, 2) = -nu * nu * std::exp(I * nu * x[2]);
    return h;
  };
  ScalarPotential plain;
  plain.value = analytic.value;
  for (const auto* psi : {&analytic, &plain}) {
    auto f = ck_field(*psi, Vec3(1, 0, 0), nu);
    for (const auto& x : random_points(5, 1.0, 60)) {
      // hand computation: p = i nu Psi e_y, q = nu Psi e_x
      CVec3 expect = nu * std::exp(I * nu * x[2]) * CVec3(1.0, I, 0.0);
      EXPECT_LT(rel(f(x), expect), 1e-8);
      EXPECT_LT(rel(fd::curl(f, x), nu * f(x)), 1e-7);
    }
  }
}

TEST(CkField, ToroidalPartIsSolenoidal) {
  double nu = 1.2;
  ScalarPotential psi;
  psi.value = [nu](const Vec3& x) {
    return std::exp(I * nu * (0.6 * x[0] + 0.8 * x[2])) + 0.5 * std::exp(I * nu * x[1]);
  };
  auto parts = ck_field_parts(psi, Vec3(0, 0, 1), nu);
  for (const auto& x : random_points(5, 1.0, 61)) {
    EXPECT_LT(std::abs(fd::divergence(parts.toroidal, x)), 1e-7);
    EXPECT_LT(rel(fd::curl(parts.total, x), nu * parts.total(x)), 1e-7);
  }
}

TEST(CkField, RejectsNonHelmholtz) {
  ScalarPotential psi;
  psi.value = [](const Vec3& x) { return cplx(x.squaredNorm()); };
  EXPECT_THROW(ck_field(psi, Vec3(0, 0, 1), 1.0), PreconditionError);
  ScalarPotential ok;
  ok.value = [](const Vec3& x) { return std::exp(I * x[0]); };
  EXPECT_THROW(ck_field(ok, Vec3(0, 0, 1), 0.0), PreconditionError);
}

TEST(CkCircular, ReducesToLundquist) {
  for (double nu : {1.0, 2.3}) {
    auto f = ck_circular({0, 0.0, nu, 1.0});
    auto l = lundquist(-nu * nu, nu);
    for (const auto& x : random_points(20, 2.0, 70)) EXPECT_LT((f(x) - l(x)).norm(), 1e-9);
  }
}

TEST(CkCircular, EigenvalueSigma) {
  double sigma = std::sqrt(1.25);
  auto f = ck_circular({1, 0.5, sigma, 1.0});
  EXPECT_LT(certify_trkalian(f), 1e-6);
  EXPECT_LT(certify_trkalian(ck_circular({2, -0.3, -1.4, 0.8})), 1e-6);
  EXPECT_LT(certify_trkalian(ck_circular({3, 1.0, 2.0, 1.0})), 1e-6);
  EXPECT_THROW(ck_circular({0, 2.0, 1.0, 1.0}), PreconditionError);
  EXPECT_THROW(ck_circular({0, 0.0, 0.0, 1.0}), PreconditionError);
}

TEST(CkCircular, BoundedOnAxis) {
  auto f = ck_circular({1, 0.0, 1.0, 1.0});
  CVec3 a = f(Vec3(0, 0, 0)), b = f(Vec3(1e-9, 0, 0)), c = f(Vec3(0, 1e-9, 0));
  EXPECT_TRUE(a.allFinite());
  EXPECT_LT((a - b).norm(), 1e-8);
  EXPECT_LT((a - c).norm(), 1e-8);
}

TEST(CkCircular, MatchesGenericConstruction) {
  CKCircularParams p{2, 0.4, 1.5, 1.0};
  double nu = p.nu(), k = p.k;
  ScalarPotential psi;
  psi.value = [=](const Vec3& x) {
    double r = std::hypot(x[0], x[1]), th = std::atan2(x[1], x[0]);
    return bessel_j(2, nu * r) * std::exp(I * (2.0 * th - k * x[2]));
  };
  auto generic = ck_field(psi, Vec3(0, 0, 1), p.sigma);
  auto f = ck_circular(p);
  for (const auto& x : random_points(10, 1.0, 71)) EXPECT_LT(rel(f(x), -p.sigma * generic(x)), 1e-7);
}

TEST(Gauge, GradientField) {
  Vec3 v(0.3, -1.0, 2.0);
  ScalarPotential lin;
  lin.value = [v](const Vec3& x) { return cplx(v.dot(x)); };
  auto g = gauge_gradient_field(lin);
  for (const auto& x : random_points(10, 2.0, 80)) {
    EXPECT_LT((g(x) - to_complex(v)).norm(), 1e-10);
    EXPECT_LT(fd::curl(g, x).norm(), 1e-7);
  }
  double nu = 1.4;
  ScalarPotential u;
  u.value = plane_phase(nu).value;
  auto gu = gauge_gradient_field(u);
  Vec3 x(0.1, 0.2, 0.7);
  EXPECT_LT((gu(x) - CVec3(0, 0, I * nu * std::exp(I * nu * 0.7))).norm(), 1e-10);
}

TEST(LundquistPotential, ResidualAndGauge) {
  double nu = 1.3, g = 0.8, F0 = nu * nu / g;
  auto pot = lundquist_potential(F0, nu);
  for (const auto& x : random_points(10, 2.0, 90))
    EXPECT_LT((fd::curl(pot.A, x) - nu * pot.A(x) - pot.residual).norm(), 1e-7);
  // the gauge term equals (nu/g) e_z
  ScalarPotential u;
  u.value = plane_phase(nu).value;
  Vec3 x(0.2, -0.1, 0.5);
  CVec3 term = -(I / g) * fd::gradient(u.value, x) / u(x);
  EXPECT_LT((term - CVec3(0, 0, nu / g)).norm(), 1e-10);
  EXPECT_LT((term - pot.residual / nu).norm(), 1e-10);
  auto A2 = gauge_transform(pot.A, u, g);
  auto fl = lundquist(F0, nu);
  for (const auto& y : random_points(20, 3.0, 91)) EXPECT_LT((fl(y) - nu * A2(y)).norm(), 1e-9);
}

TEST(LundquistPotential, Quantization) {
  auto q = quantized_mass(2, 1.0);
  EXPECT_DOUBLE_EQ(q.nu, 2.0);
  EXPECT_DOUBLE_EQ(q.period, 2 * pi);
  for (double z : {0.0, 0.3, -2.0}) EXPECT_LT(phase_periodicity_residual(q.nu, q.period, z), 1e-12);
  EXPECT_GT(phase_periodicity_residual(2.5, q.period, 0.3), 0.1);
}

TEST(Gaussian, BasicProperties) {
  Vec3 c(0.2, -0.1, 0.3);
  CVec3 pol(1.0, I, -0.5);
  double w = 0.7;
  auto f = gaussian_test_field(c, w, pol);
  EXPECT_LT((f(c) - pol).norm(), 1e-16);
  EXPECT_LT(f(Vec3(c + Vec3(6 * w, 0, 0))).norm(), 1e-14 * pol.norm());
  Vec3 x(0.5, 0.1, -0.2);
  cplx expect = -2.0 * to_complex(Vec3(x - c)).dot(pol) / (w * w) * std::exp(-(x - c).squaredNorm() / (w * w));
  EXPECT_LT(std::abs(fd::divergence(f, x) - expect), 1e-8);
}

TEST(Gaussian, ToroidalAndPoloidal) {
  Vec3 c(0.1, 0.0, -0.2), a(0.3, -0.4, 1.0);
  auto t = gaussian_toroidal_field(c, 1.1, a);
  auto p = gaussian_poloidal_field(c, 1.1, a);
  for (const auto& x : random_points(10, 1.5, 100)) {
    EXPECT_LT(std::abs(fd::divergence(t, x)), 1e-9);
    EXPECT_LT(std::abs(fd::divergence(p, x)), 1e-9);
    EXPECT_LT((fd::curl(t, x) - p(x)).norm(), 1e-9);
  }
}
