#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/special_functions/bessel.hpp>

namespace trk {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3d;
using CMat3 = Eigen::Matrix3cd;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an operation's documented input contract does not hold.
struct PreconditionError : Error {
  using Error::Error;
};

inline CVec3 to_complex(const Vec3& v) { return v.cast<cplx>(); }

// Bilinear cross product (Eigen conjugates complex operands).
inline CVec3 cross(const CVec3& a, const CVec3& b) {
  return CVec3(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]);
}

inline CVec3 cross(const Vec3& a, const CVec3& b) { return cross(a.cast<cplx>().eval(), b); }

inline double max_abs(const CVec3& v) { return v.cwiseAbs().maxCoeff(); }

class Direction {
 public:
  static constexpr double unit_tolerance = 1e-12;

  Direction() : v_(0.0, 0.0, 1.0) {}
  explicit Direction(const Vec3& v) : v_(v) {
    if (std::abs(v.norm() - 1.0) > unit_tolerance)
      throw PreconditionError("Direction: vector is not unit length");
  }
  Direction(double x, double y, double z) : Direction(Vec3(x, y, z)) {}

  static Direction normalized(const Vec3& v) {
    double n = v.norm();
    if (!(n > 0.0)) throw PreconditionError("Direction: zero vector");
    return Direction(Vec3(v / n));
  }

  const Vec3& vec() const { return v_; }
  double operator[](int i) const { return v_[i]; }
  double x() const { return v_[0]; }
  double y() const { return v_[1]; }
  double z() const { return v_[2]; }
  Direction operator-() const {
    Direction d;
    d.v_ = -v_;
    return d;
  }
  double dot(const Vec3& x) const { return v_.dot(x); }

 private:
  Vec3 v_;
};

inline bool same_direction(const Direction& a, const Direction& b, double tol = 1e-12) {
  return (a.vec() - b.vec()).cwiseAbs().maxCoeff() <= tol;
}

// ---- summation ------------------------------------------------------------

template <class T>
T zero_of() {
  if constexpr (requires { T::Zero(); })
    return T::Zero();
  else
    return T{};
}

// Pairwise (cascade) summation in a fixed order.
template <class T>
T pairwise_sum(std::span<const T> v) {
  if (v.size() <= 8) {
    T s = zero_of<T>();
    for (const auto& x : v) s += x;
    return s;
  }
  std::size_t h = v.size() / 2;
  T a = pairwise_sum(v.subspan(0, h));
  T b = pairwise_sum(v.subspan(h));
  return a + b;
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(std::span<const T>(v.data(), v.size()));
}

inline unsigned thread_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TRK_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return std::min<unsigned>(static_cast<unsigned>(n), hw);
  }
  return hw;
}

// Runs f(i) for i in [0, n). Each index owns its output slot, so results do
// not depend on the thread count.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  unsigned nt = std::min<std::size_t>(thread_count(), n);
  if (nt <= 1 || n < 64) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(nt);
  for (unsigned t = 0; t < nt; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += nt) f(i);
    });
  }
}

template <class F>
auto indexed_sum(std::size_t n, F&& f) {
  using T = std::decay_t<decltype(f(std::size_t{0}))>;
  std::vector<T> terms(n, zero_of<T>());
  parallel_for(n, [&](std::size_t i) { terms[i] = f(i); });
  return pairwise_sum(terms);
}

// ---- 1-D rules ------------------------------------------------------------

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre on [-1, 1], Newton iteration on P_n; nodes mirrored so the
// rule is exactly symmetric.
inline Rule1D gauss_legendre(int n) {
  if (n < 1) throw PreconditionError("gauss_legendre: order must be positive");
  Rule1D r;
  r.nodes.assign(n, 0.0);
  r.weights.assign(n, 0.0);
  // P_n(x) and P_n'(x) by the three-term recurrence
  auto legendre = [n](double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      auto [p, dp] = legendre(x);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double dp = legendre(x).second;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

// Gauss-Legendre mapped to [a, b].
inline Rule1D gauss_legendre(int n, double a, double b) {
  Rule1D r = gauss_legendre(n);
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = c + h * r.nodes[i];
    r.weights[i] *= h;
  }
  return r;
}

// Composite Gauss-Legendre: `panels` equal panels of `order` nodes each.
inline Rule1D composite_gauss_legendre(int panels, int order, double a, double b) {
  Rule1D out;
  double len = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    Rule1D r = gauss_legendre(order, a + k * len, a + (k + 1) * len);
    out.nodes.insert(out.nodes.end(), r.nodes.begin(), r.nodes.end());
    out.weights.insert(out.weights.end(), r.weights.begin(), r.weights.end());
  }
  return out;
}

inline Rule1D trapezoid(int n, double a, double b) {
  if (n < 2) throw PreconditionError("trapezoid: need at least two nodes");
  Rule1D r;
  double h = (b - a) / (n - 1);
  for (int i = 0; i < n; ++i) {
    r.nodes.push_back(a + i * h);
    r.weights.push_back((i == 0 || i == n - 1) ? 0.5 * h : h);
  }
  return r;
}

// ---- sphere ---------------------------------------------------------------

struct SphereQuadrature {
  std::vector<Direction> nodes;
  std::vector<double> weights;
  int n_polar = 0;
  int n_azimuth = 0;
  bool antipodal = false;
  // antipode[i] is the index of -nodes[i] (filled when antipodal).
  std::vector<std::size_t> antipode;

  std::size_t size() const { return nodes.size(); }
};

// Gauss-Legendre in cos(theta) times uniform azimuth. Nodes in the second
// half of the azimuth range are exact negations of the first half, so the set
// is closed under kappa -> -kappa whenever n_azimuth is even.
inline SphereQuadrature sphere_quadrature(int n_polar, int n_azimuth, bool antipodal) {
  if (n_polar < 2 || n_azimuth < 4)
    throw PreconditionError("sphere_quadrature: need n_polar >= 2 and n_azimuth >= 4");
  if (antipodal && n_azimuth % 2 != 0)
    throw PreconditionError("sphere_quadrature: antipodal rule needs even n_azimuth");
  SphereQuadrature q;
  q.n_polar = n_polar;
  q.n_azimuth = n_azimuth;
  q.antipodal = antipodal;
  Rule1D gl = gauss_legendre(n_polar);
  double wphi = 2.0 * pi / n_azimuth;
  std::size_t n = static_cast<std::size_t>(n_polar) * n_azimuth;
  q.nodes.resize(n);
  q.weights.resize(n);
  auto idx = [&](int i, int j) { return static_cast<std::size_t>(i) * n_azimuth + j; };
  for (int i = 0; i < n_polar; ++i) {
    double t = gl.nodes[i];
    double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    for (int j = 0; j < n_azimuth; ++j) {
      double phi = wphi * j;
      Vec3 v(s * std::cos(phi), s * std::sin(phi), t);
      q.nodes[idx(i, j)] = Direction::normalized(v);
      q.weights[idx(i, j)] = gl.weights[i] * wphi;
    }
  }
  if (n_azimuth % 2 == 0) {
    int half = n_azimuth / 2;
    for (int i = 0; i < n_polar; ++i)
      for (int j = 0; j < half; ++j)
        q.nodes[idx(n_polar - 1 - i, j + half)] = -q.nodes[idx(i, j)];
  }
  if (antipodal) {
    int half = n_azimuth / 2;
    q.antipode.resize(n);
    for (int i = 0; i < n_polar; ++i)
      for (int j = 0; j < n_azimuth; ++j)
        q.antipode[idx(i, j)] = idx(n_polar - 1 - i, (j + half) % n_azimuth);
  }
  return q;
}

template <class F>
auto integrate_sphere(const SphereQuadrature& q, F&& f) {
  return indexed_sum(q.size(), [&](std::size_t i) { return q.weights[i] * f(q.nodes[i]); });
}

// Orthonormal (e1, e2) with e1 x e2 = kappa. The seed is the coordinate axis
// of the smallest |kappa component| (first one on ties).
inline std::pair<Direction, Direction> plane_basis(const Direction& kappa) {
  const Vec3& k = kappa.vec();
  int axis = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(k[i]) < std::abs(k[axis])) axis = i;
  Vec3 seed = Vec3::Zero();
  seed[axis] = 1.0;
  Vec3 e1 = seed - k.dot(seed) * k;
  e1.normalize();
  Vec3 e2 = k.cross(e1);
  e2.normalize();
  return {Direction(e1), Direction(e2)};
}

// ---- planes ---------------------------------------------------------------

enum class PlaneRule { gauss_legendre, trapezoid };

struct PlaneQuadrature {
  double half_width = 8.0;
  int nodes = 64;
  PlaneRule rule = PlaneRule::gauss_legendre;

  void validate() const {
    if (!(half_width > 0.0)) throw PreconditionError("PlaneQuadrature: half-width must be positive");
    if (nodes < 2) throw PreconditionError("PlaneQuadrature: need at least two nodes per axis");
  }
  Rule1D rule1d() const {
    validate();
    return rule == PlaneRule::gauss_legendre ? gauss_legendre(nodes, -half_width, half_width)
                                              : trapezoid(nodes, -half_width, half_width);
  }
};

// ---- Bessel ---------------------------------------------------------------

inline double bessel_j(int m, double x) {
  if (m < 0) throw PreconditionError("bessel_j: negative order");
  if (!(x >= 0.0)) throw PreconditionError("bessel_j: negative or non-finite argument");
  return boost::math::cyl_bessel_j(m, x);
}

// J_m at a real argument of either sign.
inline double bessel_j_signed(int m, double x) {
  double v = bessel_j(m, std::abs(x));
  return (x < 0.0 && (m % 2) == 1) ? -v : v;
}

// J_m(x)/x, finite at x = 0 for m >= 1; even in x for odd m.
inline double bessel_j_over_x(int m, double x) {
  if (m < 1) throw PreconditionError("bessel_j_over_x: order must be >= 1");
  double ax = std::abs(x);
  if (ax < 1e-6) {
    // leading series term x^(m-1) / (2^m m!) with its first correction
    double c = 1.0;
    for (int k = 1; k <= m; ++k) c /= 2.0 * k;
    double lead = c * std::pow(ax, m - 1) * (1.0 - ax * ax / (4.0 * (m + 1)));
    return (x < 0.0 && (m % 2) == 0) ? -lead : lead;
  }
  return bessel_j_signed(m, x) / x;
}

// dJ_m/dx at a real argument of either sign.
inline double bessel_j_prime(int m, double x) {
  if (m == 0) return -bessel_j_signed(1, x);
  return 0.5 * (bessel_j_signed(m - 1, x) - bessel_j_signed(m + 1, x));
}

// ---- finite differences ---------------------------------------------------

namespace fd {

inline constexpr double default_step = 1e-3;

template <class F>
auto partial(const F& f, const Vec3& x, int axis, double h = default_step) {
  using T = std::decay_t<decltype(f(x))>;
  Vec3 e = Vec3::Zero();
  e[axis] = h;
  auto a = f(Vec3(x - 2.0 * e));
  auto b = f(Vec3(x - e));
  auto c = f(Vec3(x + e));
  auto d = f(Vec3(x + 2.0 * e));
  return T(((a - d) + 8.0 * (c - b)) / (12.0 * h));
}

template <class F>
auto second_partial(const F& f, const Vec3& x, int axis, double h = default_step) {
  using T = std::decay_t<decltype(f(x))>;
  Vec3 e = Vec3::Zero();
  e[axis] = h;
  auto a = f(Vec3(x - 2.0 * e));
  auto b = f(Vec3(x - e));
  auto m = f(x);
  auto c = f(Vec3(x + e));
  auto d = f(Vec3(x + 2.0 * e));
  return T((16.0 * (b + c) - (a + d) - 30.0 * m) / (12.0 * h * h));
}

template <class F>
CVec3 curl(const F& f, const Vec3& x, double h = default_step) {
  CVec3 dx = partial(f, x, 0, h), dy = partial(f, x, 1, h), dz = partial(f, x, 2, h);
  return CVec3(dy[2] - dz[1], dz[0] - dx[2], dx[1] - dy[0]);
}

template <class F>
cplx divergence(const F& f, const Vec3& x, double h = default_step) {
  cplx s = 0.0;
  for (int i = 0; i < 3; ++i) {
    CVec3 d = partial(f, x, i, h);
    s += d[i];
  }
  return s;
}

template <class F>
CVec3 gradient(const F& f, const Vec3& x, double h = default_step) {
  CVec3 g;
  for (int i = 0; i < 3; ++i) g[i] = partial(f, x, i, h);
  return g;
}

// Scalar or componentwise vector Laplacian.
template <class F>
auto laplacian(const F& f, const Vec3& x, double h = default_step) {
  auto s = second_partial(f, x, 0, h);
  s += second_partial(f, x, 1, h);
  s += second_partial(f, x, 2, h);
  return s;
}

template <class F>
CMat3 hessian(const F& f, const Vec3& x, double h = default_step) {
  CMat3 H;
  for (int i = 0; i < 3; ++i) H(i, i) = second_partial(f, x, i, h);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      auto di = [&](const Vec3& y) { return partial(f, y, i, h); };
      H(i, j) = H(j, i) = partial(di, x, j, h);
    }
  return H;
}

}  // namespace fd

}  // namespace trk
