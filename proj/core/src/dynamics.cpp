#include "entdyn/dynamics.hpp"

#include <cmath>

#include "entdyn/error.hpp"

namespace entdyn {

namespace {

constexpr double kAmplitudeSlack = 1e-9;

void require_physical(Complex q) {
  if (!(std::abs(q) <= 1.0 + kAmplitudeSlack))
    throw Error(ErrorCode::NonPhysicalAmplitude, "|q| > 1: amplitude is not a survival amplitude");
}

}  // namespace

bool XState::is_valid() const {
  const double sum = d1 + d2 + d3 + d4;
  if (std::abs(sum - 1.0) > 1e-12) return false;
  for (double d : {d1, d2, d3, d4})
    if (!(d >= -1e-12)) return false;
  return std::norm(ad14) <= d1 * d4 + 1e-10 && std::norm(ad23) <= d2 * d3 + 1e-10;
}

SingleQubitState evolve_single(const SingleQubitState& initial, Complex q) {
  require_physical(q);
  const double p = std::norm(q);
  SingleQubitState out;
  out.rho11 = initial.rho11 * p;
  out.rho00 = initial.rho00 + initial.rho11 * (1.0 - p);
  out.rho10 = initial.rho10 * q;
  return out;
}

XState bell_like_state(const BellLikeInit& init) {
  if (!(init.alpha >= 0.0 && init.alpha <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "Bell-like state: alpha must lie in [0, 1]");
  const double a = init.alpha;
  const double b = std::sqrt(1.0 - a * a);
  const Complex coh = a * b * std::polar(1.0, init.delta);

  XState x;
  x.d4 = 0.0;
  if (init.family == BellFamily::Phi) {
    // alpha on |01> (index 3), beta e^{i delta} on |10> (index 2).
    x.d3 = a * a;
    x.d2 = b * b;
    x.ad23 = coh;
  } else {
    // alpha on |00> (index 4), beta e^{i delta} on |11> (index 1).
    x.d4 = a * a;
    x.d1 = b * b;
    x.ad14 = coh;
  }
  return x;
}

XState lift_two_qubit(const XState& in, Complex qA, Complex qB) {
  require_physical(qA);
  require_physical(qB);
  const double pa = std::norm(qA);
  const double pb = std::norm(qB);
  const double la = 1.0 - pa;
  const double lb = 1.0 - pb;

  XState out;
  out.d1 = pa * pb * in.d1;
  out.d2 = pa * (in.d2 + lb * in.d1);
  out.d3 = pb * (in.d3 + la * in.d1);
  out.d4 = in.d4 + la * in.d2 + lb * in.d3 + la * lb * in.d1;
  out.ad14 = qA * qB * in.ad14;
  out.ad23 = qA * std::conj(qB) * in.ad23;
  return out;
}

DensityMatrix4 to_dense(const XState& x) {
  DensityMatrix4 m = Matrix4::diagonal({x.d1, x.d2, x.d3, x.d4});
  m(0, 3) = x.ad14;
  m(3, 0) = std::conj(x.ad14);
  m(1, 2) = x.ad23;
  m(2, 1) = std::conj(x.ad23);
  return m;
}

}  // namespace entdyn
