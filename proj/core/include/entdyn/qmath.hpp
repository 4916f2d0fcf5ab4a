#pragma once

#include <array>
#include <complex>

namespace entdyn {

using Complex = std::complex<double>;

/// Dense 4x4 complex matrix, row-major.
struct Matrix4 {
  std::array<std::array<Complex, 4>, 4> a{};

  Complex& operator()(int r, int c) { return a[r][c]; }
  const Complex& operator()(int r, int c) const { return a[r][c]; }

  static Matrix4 identity();
  static Matrix4 diagonal(const std::array<Complex, 4>& d);

  Matrix4 adjoint() const;
  Matrix4 conj() const;
  Complex trace() const;
  double frobenius_norm() const;

  friend Matrix4 operator*(const Matrix4& x, const Matrix4& y);
  friend Matrix4 operator+(const Matrix4& x, const Matrix4& y);
  friend Matrix4 operator-(const Matrix4& x, const Matrix4& y);
  friend Matrix4 operator*(Complex s, const Matrix4& x);
};

/// Coefficients of the monic cubic s^3 + a2 s^2 + a1 s + a0.
struct CubicRealCoeffs {
  double a2 = 0.0;
  double a1 = 0.0;
  double a0 = 0.0;

  Complex operator()(Complex s) const { return ((s + a2) * s + a1) * s + a0; }
};

struct CubicRoots {
  std::array<Complex, 3> roots{};
  /// Set when the smallest pairwise root distance is below 1e-8 * max|u|.
  bool degenerate = false;
};

/// Principal square root: Re(w) >= 0, and Im(w) >= 0 whenever Re(w) == 0.
Complex csqrt_principal(Complex z);

/// Roots of a real-coefficient cubic. Closed-form seeds (trigonometric or
/// Cardano) are Newton-polished against the original polynomial; complex
/// roots are returned as an exact conjugate pair.
CubicRoots solve_cubic(const CubicRealCoeffs& c);

/// Characteristic polynomial det(lambda I - m) = lambda^4 + c[3] lambda^3 +
/// c[2] lambda^2 + c[1] lambda + c[0], by Faddeev-LeVerrier.
std::array<Complex, 4> characteristic_poly(const Matrix4& m);

/// Eigenvalues of a general 4x4 matrix: characteristic polynomial, Ferrari
/// seeds, Newton polish. Throws ConvergenceFailure if a root's residual stays
/// above 1e-8 * ||m||_F^4 after 50 polishing steps.
///
/// Clusters of polished roots are collapsed to their mean when the mean is a
/// common root of the polynomial and its first k-1 derivatives, which undoes
/// the eps^(1/k) splitting of a k-fold eigenvalue. Accuracy is still bounded
/// by the absolute error of the coefficients, so small eigenvalues next to a
/// repeated one carry errors of order eps ||m||^2 / gap. Use eigh4 when the
/// input is Hermitian and small eigenvalues matter.
std::array<Complex, 4> eig4(const Matrix4& m);

struct HermitianEigen {
  std::array<double, 4> values{};  // ascending
  Matrix4 vectors;                 // column k pairs with values[k]
};

/// Cyclic complex Jacobi for Hermitian input; only the upper triangle's
/// Hermitian part is used.
HermitianEigen eigh4(const Matrix4& m);

}  // namespace entdyn
