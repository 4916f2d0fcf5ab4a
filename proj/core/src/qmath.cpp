#include "entdyn/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "entdyn/error.hpp"

namespace entdyn {

// ---------------------------------------------------------------------------
// Matrix4

Matrix4 Matrix4::identity() { return diagonal({1.0, 1.0, 1.0, 1.0}); }

Matrix4 Matrix4::diagonal(const std::array<Complex, 4>& d) {
  Matrix4 m;
  for (int i = 0; i < 4; ++i) m(i, i) = d[i];
  return m;
}

Matrix4 Matrix4::adjoint() const {
  Matrix4 out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = std::conj(a[c][r]);
  return out;
}

Matrix4 Matrix4::conj() const {
  Matrix4 out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = std::conj(a[r][c]);
  return out;
}

Complex Matrix4::trace() const { return a[0][0] + a[1][1] + a[2][2] + a[3][3]; }

double Matrix4::frobenius_norm() const {
  double s = 0.0;
  for (const auto& row : a)
    for (const auto& x : row) s += std::norm(x);
  return std::sqrt(s);
}

Matrix4 operator*(const Matrix4& x, const Matrix4& y) {
  Matrix4 out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      Complex s = 0.0;
      for (int k = 0; k < 4; ++k) s += x(r, k) * y(k, c);
      out(r, c) = s;
    }
  return out;
}

Matrix4 operator+(const Matrix4& x, const Matrix4& y) {
  Matrix4 out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = x(r, c) + y(r, c);
  return out;
}

Matrix4 operator-(const Matrix4& x, const Matrix4& y) {
  Matrix4 out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = x(r, c) - y(r, c);
  return out;
}

Matrix4 operator*(Complex s, const Matrix4& x) {
  Matrix4 out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = s * x(r, c);
  return out;
}

// ---------------------------------------------------------------------------
// Scalars and polynomials

Complex csqrt_principal(Complex z) {
  Complex w = std::sqrt(z);
  // std::sqrt follows the sign of a signed-zero imaginary part on the
  // negative real axis; pin that edge to the upper half-plane.
  if (w.real() == 0.0 && w.imag() < 0.0) w = -w;
  return w;
}

namespace {

template <typename T, typename F, typename DF>
T newton_polish(T x, F&& f, DF&& df, int max_iter) {
  auto fx = f(x);
  for (int i = 0; i < max_iter; ++i) {
    if (fx == decltype(fx){}) break;
    const auto dfx = df(x);
    if (dfx == decltype(dfx){}) break;
    const T next = x - fx / dfx;
    const auto fn = f(next);
    if (!(std::abs(fn) < std::abs(fx))) break;
    x = next;
    fx = fn;
  }
  return x;
}

bool all_finite(std::initializer_list<double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double v) { return std::isfinite(v); });
}

/// Roots of the monic cubic x^3 + b2 x^2 + b1 x + b0 with complex coefficients.
std::array<Complex, 3> complex_cardano(Complex b2, Complex b1, Complex b0) {
  const Complex shift = b2 / 3.0;
  const Complex p = b1 - b2 * b2 / 3.0;
  const Complex q = 2.0 * b2 * b2 * b2 / 27.0 - b2 * b1 / 3.0 + b0;
  const Complex s = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  const Complex c1 = -q / 2.0 + s;
  const Complex c2 = -q / 2.0 - s;
  const Complex cc = std::abs(c1) >= std::abs(c2) ? c1 : c2;
  if (std::abs(cc) == 0.0) return {-shift, -shift, -shift};
  const Complex c = std::pow(cc, 1.0 / 3.0);
  const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  std::array<Complex, 3> out;
  Complex ck = c;
  for (int k = 0; k < 3; ++k) {
    out[k] = ck - p / (3.0 * ck) - shift;
    ck *= omega;
  }
  return out;
}

}  // namespace

CubicRoots solve_cubic(const CubicRealCoeffs& c) {
  if (!all_finite({c.a2, c.a1, c.a0}))
    throw Error(ErrorCode::InvalidArgument, "solve_cubic: non-finite coefficient");

  const double a2 = c.a2;
  const double a1 = c.a1;
  const double a0 = c.a0;
  const double shift = a2 / 3.0;
  const double p = a1 - a2 * a2 / 3.0;
  const double q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
  const double disc = q * q / 4.0 + p * p * p / 27.0;

  auto f = [&](auto s) { return c(s); };
  auto df = [&](auto s) { return (3.0 * s + 2.0 * a2) * s + a1; };
  auto fr = [&](double s) { return ((s + a2) * s + a1) * s + a0; };

  CubicRoots out;
  if (disc > 0.0) {
    // One real root and a conjugate pair.
    const double big = -std::copysign(std::cbrt(std::abs(q) / 2.0 + std::sqrt(disc)), q);
    const double small = big != 0.0 ? -p / (3.0 * big) : 0.0;
    const double real = newton_polish(big + small - shift, fr, df, 8);
    Complex cx(-(big + small) / 2.0 - shift,
               std::abs(std::sqrt(3.0) / 2.0 * (big - small)));
    cx = newton_polish(cx, f, df, 8);
    if (cx.imag() < 0.0) cx = std::conj(cx);
    out.roots = {Complex(real, 0.0), cx, std::conj(cx)};
  } else if (p == 0.0) {
    const double t = std::cbrt(-q);
    const double r = newton_polish(t - shift, fr, df, 8);
    out.roots = {r, r, r};
  } else {
    // Three real roots (trigonometric form); p < 0 here.
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      const double t = m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0);
      out.roots[k] = newton_polish(t - shift, fr, df, 8);
    }
  }

  double scale = 0.0;
  for (const auto& u : out.roots) scale = std::max(scale, std::abs(u));
  double min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      min_gap = std::min(min_gap, std::abs(out.roots[i] - out.roots[j]));
  out.degenerate = min_gap < 1e-8 * scale || min_gap == 0.0;
  return out;
}

namespace {

/// A k-fold eigenvalue comes back from the quartic split into k roots about
/// eps^(1/k) apart, but their mean is well conditioned. Replace a cluster by
/// its mean when the mean is a common root of p, p', ..., p^(k-1) to within
/// the rounding carried by the coefficients (c_i ~ ||m||^(4-i)).
void merge_multiple_roots(std::array<Complex, 4>& roots, const std::array<Complex, 5>& c,
                          double norm) {
  static constexpr double binom[5][5] = {
      {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
  constexpr double kTol = 1e-13;
  const double s = std::max(norm, std::numeric_limits<double>::min());

  auto is_root_of_derivatives = [&](Complex mu, int k) {
    const double amu = std::abs(mu);
    for (int j = 0; j < k; ++j) {
      Complex value = 0.0;
      double floor = 0.0;
      for (int i = 4; i >= j; --i) {
        value += binom[i][j] * c[i] * std::pow(mu, i - j);
        floor += binom[i][j] * std::pow(s, 4 - i) * std::pow(amu, i - j);
      }
      if (!(std::abs(value) <= kTol * floor)) return false;
    }
    return true;
  };

  // Subsets of {0,1,2,3} as bit masks, largest clusters first.
  static constexpr int masks[] = {0b1111, 0b0111, 0b1011, 0b1101, 0b1110, 0b0011,
                                  0b0101, 0b1001, 0b0110, 0b1010, 0b1100};
  int merged = 0;
  for (int mask : masks) {
    if (mask & merged) continue;
    int k = 0;
    Complex mu = 0.0;
    for (int i = 0; i < 4; ++i)
      if (mask & (1 << i)) {
        mu += roots[i];
        ++k;
      }
    mu /= static_cast<double>(k);
    double spread = 0.0;
    for (int i = 0; i < 4; ++i)
      if (mask & (1 << i)) spread = std::max(spread, std::abs(roots[i] - mu));
    if (spread > 1e-3 * s || !is_root_of_derivatives(mu, k)) continue;
    for (int i = 0; i < 4; ++i)
      if (mask & (1 << i)) roots[i] = mu;
    merged |= mask;
  }
}

}  // namespace

std::array<Complex, 4> characteristic_poly(const Matrix4& m) {
  std::array<Complex, 5> c{};
  c[4] = 1.0;
  Matrix4 acc;  // M_0 = 0
  for (int k = 1; k <= 4; ++k) {
    acc = m * acc + Matrix4::diagonal({c[5 - k], c[5 - k], c[5 - k], c[5 - k]});
    c[4 - k] = -(m * acc).trace() / static_cast<double>(k);
  }
  return {c[0], c[1], c[2], c[3]};
}

std::array<Complex, 4> eig4(const Matrix4& m) {
  for (const auto& row : m.a)
    for (const auto& x : row)
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
        throw Error(ErrorCode::InvalidArgument, "eig4: non-finite matrix entry");

  const auto cp = characteristic_poly(m);
  const Complex b = cp[3], cc = cp[2], d = cp[1], e = cp[0];

  // Depressed quartic y^4 + p y^2 + q y + r with lambda = y - b/4.
  const Complex p = cc - 3.0 * b * b / 8.0;
  const Complex q = b * b * b / 8.0 - b * cc / 2.0 + d;
  const Complex r = -3.0 * b * b * b * b / 256.0 + b * b * cc / 16.0 - b * d / 4.0 + e;

  std::array<Complex, 4> y;
  auto biquadratic = [&] {
    const Complex s = std::sqrt(p * p - 4.0 * r);
    const Complex z1 = (-p + s) / 2.0;
    const Complex z2 = (-p - s) / 2.0;
    y = {std::sqrt(z1), -std::sqrt(z1), std::sqrt(z2), -std::sqrt(z2)};
  };

  if (q == Complex(0.0)) {
    biquadratic();
  } else {
    // Ferrari: resolvent m^3 + p m^2 + (p^2/4 - r) m - q^2/8 = 0, take the
    // largest-magnitude root (nonzero because q != 0).
    const auto res = complex_cardano(p, p * p / 4.0 - r, -q * q / 8.0);
    Complex mr = res[0];
    for (const auto& v : res)
      if (std::abs(v) > std::abs(mr)) mr = v;
    if (std::abs(mr) == 0.0) {
      biquadratic();
    } else {
      const Complex s = std::sqrt(2.0 * mr);
      const Complex plus = std::sqrt(-(2.0 * p + 2.0 * mr + 2.0 * q / s));
      const Complex minus = std::sqrt(-(2.0 * p + 2.0 * mr - 2.0 * q / s));
      y = {(s + plus) / 2.0, (s - plus) / 2.0, (-s + minus) / 2.0, (-s - minus) / 2.0};
    }
  }

  auto poly = [&](Complex x) { return (((x + b) * x + cc) * x + d) * x + e; };
  auto dpoly = [&](Complex x) { return ((4.0 * x + 3.0 * b) * x + 2.0 * cc) * x + d; };

  const double norm = m.frobenius_norm();
  const double tol = 1e-8 * norm * norm * norm * norm;
  std::array<Complex, 4> out;
  for (int i = 0; i < 4; ++i) {
    out[i] = newton_polish(y[i] - b / 4.0, poly, dpoly, 50);
    if (!(std::abs(poly(out[i])) <= tol))
      throw Error(ErrorCode::ConvergenceFailure,
                  "eig4: eigenvalue polish did not reach tolerance");
  }
  merge_multiple_roots(out, {e, d, cc, b, 1.0}, norm);
  return out;
}

HermitianEigen eigh4(const Matrix4& m) {
  Matrix4 a = 0.5 * (m + m.adjoint());
  Matrix4 v = Matrix4::identity();

  const double total = a.frobenius_norm();
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) off += std::norm(a(p, q));
    if (off == 0.0 || std::sqrt(off) <= 1e-18 * total) break;

    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        const Complex phase = a(p, q) / mag;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * cs;

        Matrix4 j = Matrix4::identity();
        j(p, p) = cs;
        j(p, q) = sn;
        j(q, p) = -sn * std::conj(phase);
        j(q, q) = cs * std::conj(phase);

        a = j.adjoint() * a * j;
        v = v * j;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (int k = 0; k < 4; ++k) a(k, k) = a(k, k).real();
      }
    }
  }

  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });
  HermitianEigen out;
  for (int k = 0; k < 4; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (int r = 0; r < 4; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

}  // namespace entdyn
