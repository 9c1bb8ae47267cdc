#pragma once

#include "trk/core.hpp"

namespace trk {

// a = 1 <-> lambda = +1, a = 2 <-> lambda = -1, a = 3 <-> lambda = 0.
class HelicityLabel {
 public:
  static HelicityLabel from_index(int a) {
    if (a < 1 || a > 3) throw PreconditionError("HelicityLabel: index must be 1, 2 or 3");
    return HelicityLabel(a);
  }
  static HelicityLabel from_lambda(int lambda) {
    switch (lambda) {
      case 1: return HelicityLabel(1);
      case -1: return HelicityLabel(2);
      case 0: return HelicityLabel(3);
      default: throw PreconditionError("HelicityLabel: lambda must be -1, 0 or +1");
    }
  }
  int a() const { return a_; }
  int lambda() const { return a_ == 1 ? 1 : (a_ == 2 ? -1 : 0); }
  bool transverse() const { return a_ != 3; }
  bool operator==(const HelicityLabel&) const = default;

 private:
  explicit HelicityLabel(int a) : a_(a) {}
  int a_;
};

enum class FrameBranch { direct, antipodal, rotated };

struct FrameVector {
  CVec3 value;
  Direction at;
  HelicityLabel label;
  FrameBranch branch;
};

// direct evaluation for 1 + k3 >= pole_tolerance, antipodal below
inline constexpr double pole_tolerance = 1.0;
inline constexpr double axis_tolerance = 1e-12;

namespace detail {

inline CVec3 moses_direct(const Vec3& k, int lambda) {
  const double l = lambda;
  cplx w(k[0], l * k[1]);
  double d = 1.0 + k[2];
  CVec3 q(k[0] * w / d - 1.0, k[1] * w / d - I * l, w);
  return (-l / std::sqrt(2.0)) * q;
}

}  // namespace detail

// -(k1 + i lambda k2)/(k1 - i lambda k2), with Q(-k) = phase * conj(Q(k)).
inline cplx frame_antipodal_phase(const Direction& kappa, int lambda) {
  if (lambda != 1 && lambda != -1) throw PreconditionError("frame_antipodal_phase: lambda must be +-1");
  if (std::hypot(kappa.x(), kappa.y()) <= axis_tolerance)
    throw PreconditionError("frame_antipodal_phase: degenerate on the polar axis");
  cplx num(kappa.x(), lambda * kappa.y());
  return -num / std::conj(num);
}

inline FrameVector moses_frame(const Direction& kappa, HelicityLabel label) {
  if (!label.transverse()) return {to_complex(-kappa.vec()), kappa, label, FrameBranch::direct};
  const int l = label.lambda();
  if (1.0 + kappa.z() >= pole_tolerance)
    return {detail::moses_direct(kappa.vec(), l), kappa, label, FrameBranch::direct};
  if (std::hypot(kappa.x(), kappa.y()) > axis_tolerance) {
    Direction m = -kappa;
    CVec3 qm = detail::moses_direct(m.vec(), l);
    return {frame_antipodal_phase(m, l) * qm.conjugate(), kappa, label, FrameBranch::antipodal};
  }
  // rotate by pi about x, evaluate, rotate back
  Vec3 r(kappa.x(), -kappa.y(), -kappa.z());
  CVec3 q = detail::moses_direct(r, l);
  return {CVec3(q[0], -q[1], -q[2]), kappa, label, FrameBranch::rotated};
}

inline CVec3 moses_q(const Direction& kappa, int lambda) {
  return moses_frame(kappa, HelicityLabel::from_lambda(lambda)).value;
}

// Pairing matrix of the frame indices (a, b) in {1, 2, 3}.
inline Mat3 frame_pairing() {
  Mat3 eta;
  eta << 0, -1, 0, -1, 0, 0, 0, 0, 1;
  return eta;
}

// chi(x|k) = (2 pi)^(-3/2) e^{i k.x} Q(k/|k|)
inline CVec3 eigenfunction(const Vec3& x, const Vec3& k, HelicityLabel label) {
  double kn = k.norm();
  if (!(kn > 0.0)) throw PreconditionError("eigenfunction: zero wave vector");
  Direction kappa = Direction::normalized(k);
  return std::pow(2.0 * pi, -1.5) * std::exp(I * k.dot(x)) * moses_frame(kappa, label).value;
}

}  // namespace trk
