#pragma once

#include <functional>
#include <vector>

#include "entdyn/qmath.hpp"

namespace entdyn::volterra {

/// Memory kernel f(tau) for tau >= 0.
using Kernel = std::function<Complex(double)>;

/// How the memory integral weights the kernel on each step [m h, (m+1) h].
enum class Quadrature {
  /// Plain trapezoid on f(tau) q(t - tau). The discrete kernel integral is off
  /// by O(h^2 f''), which for sharply decaying kernels acts as a spurious
  /// slow damping and lets the error grow linearly in time.
  Trapezoidal,
  /// q linear on each step, f integrated against the hat functions by
  /// 4-point Gauss-Legendre. Still second order, but the kernel's integral is
  /// kept to quadrature accuracy.
  ProductTrapezoidal,
};

struct SolverConfig {
  double step = 1e-3;  // h
  double t_max = 1.0;
  Quadrature quadrature = Quadrature::ProductTrapezoidal;
};

/// q(t) sampled on the uniform grid t_n = n h, n = 0..N with N h >= t_max.
struct GridAmplitude {
  std::vector<double> times;
  std::vector<Complex> values;
};

/// Validates 0 < step <= t_max and t_max / step <= 1e7 and returns N.
std::size_t grid_intervals(const SolverConfig& cfg);

/// Integrates q'(t) = -int_0^t f(t - s) q(s) ds, q(0) = 1, with a trapezoidal
/// predictor-corrector (Euler predict, trapezoid correct, one pass). The
/// memory integral is summed over the full history, so the cost is O(N^2).
///
/// Throws StepTooLarge if |q| exceeds 1 + 10 h^2 anywhere.
GridAmplitude solve(const Kernel& kernel, const SolverConfig& cfg);

/// Empirical convergence order log2(|q_h - q_{h/2}| / |q_{h/2} - q_{h/4}|)
/// at the final grid time. NaN when the differences vanish (e.g. zero kernel).
double richardson_order(const Kernel& kernel, const SolverConfig& cfg);

/// Maximum |q_grid(t_n) - reference(t_n)| over the grid.
double max_deviation(const GridAmplitude& grid, const std::function<Complex(double)>& reference);

}  // namespace entdyn::volterra
