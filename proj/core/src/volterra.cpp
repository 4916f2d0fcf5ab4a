#include "entdyn/volterra.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "entdyn/error.hpp"

namespace entdyn::volterra {

std::size_t grid_intervals(const SolverConfig& cfg) {
  if (!(cfg.step > 0.0) || !(cfg.t_max >= cfg.step) || !std::isfinite(cfg.t_max))
    throw Error(ErrorCode::InvalidArgument, "volterra: need 0 < step <= t_max");
  const double ratio = cfg.t_max / cfg.step;
  if (ratio > 1e7)
    throw Error(ErrorCode::InvalidArgument, "volterra: t_max/step exceeds 1e7");
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * nearest) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::ceil(ratio));
}

namespace {

struct StepWeights {
  // Memory integral over [m h, (m+1) h] contributes
  //   near[m] * q(t - m h) + far[m] * q(t - (m+1) h).
  std::vector<Complex> near, far;
};

StepWeights step_weights(const Kernel& kernel, std::size_t n_steps, double h,
                         Quadrature quad) {
  StepWeights w;
  w.near.resize(n_steps);
  w.far.resize(n_steps);
  auto eval = [&](double tau) {
    const Complex f = kernel(tau);
    if (!std::isfinite(f.real()) || !std::isfinite(f.imag()))
      throw Error(ErrorCode::InvalidArgument, "volterra: kernel is not finite");
    return f;
  };

  if (quad == Quadrature::Trapezoidal) {
    Complex left = eval(0.0);
    for (std::size_t m = 0; m < n_steps; ++m) {
      const Complex right = eval(static_cast<double>(m + 1) * h);
      w.near[m] = 0.5 * h * left;
      w.far[m] = 0.5 * h * right;
      left = right;
    }
    return w;
  }

  static constexpr std::array<double, 4> x = {-0.8611363115940526, -0.3399810435848563,
                                              0.3399810435848563, 0.8611363115940526};
  static constexpr std::array<double, 4> wt = {0.3478548451374538, 0.6521451548545461,
                                               0.6521451548545461, 0.3478548451374538};
  for (std::size_t m = 0; m < n_steps; ++m) {
    Complex near = 0.0, far = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double u = 0.5 * (x[i] + 1.0);  // position inside the step, in [0, 1]
      const Complex f = eval((static_cast<double>(m) + u) * h);
      near += 0.5 * wt[i] * (1.0 - u) * f;
      far += 0.5 * wt[i] * u * f;
    }
    w.near[m] = h * near;
    w.far[m] = h * far;
  }
  return w;
}

}  // namespace

GridAmplitude solve(const Kernel& kernel, const SolverConfig& cfg) {
  const std::size_t n_steps = grid_intervals(cfg);
  const double h = cfg.step;
  const double bound = 1.0 + 10.0 * h * h;

  const StepWeights sw = step_weights(kernel, n_steps, h, cfg.quadrature);
  // Interior weight on q(t - k h) is near[k] + far[k-1]; split storage keeps
  // the O(N^2) history sum free of std::complex overhead.
  std::vector<double> wr(n_steps + 1, 0.0), wi(n_steps + 1, 0.0);
  for (std::size_t k = 1; k < n_steps; ++k) {
    const Complex v = sw.near[k] + sw.far[k - 1];
    wr[k] = v.real();
    wi[k] = v.imag();
  }
  const Complex w0 = sw.near[0];

  std::vector<double> qr(n_steps + 1), qi(n_steps + 1);
  qr[0] = 1.0;
  qi[0] = 0.0;
  Complex g_prev = 0.0;  // q'(0) = 0

  for (std::size_t n = 1; n <= n_steps; ++n) {
    // Known part of the memory integral: the s = 0 endpoint plus interior.
    const Complex tail = sw.far[n - 1] * Complex(qr[0], qi[0]);
    double hr = tail.real();
    double hi = tail.imag();
    for (std::size_t j = 1; j < n; ++j) {
      const double a = wr[n - j], b = wi[n - j];
      hr += a * qr[j] - b * qi[j];
      hi += a * qi[j] + b * qr[j];
    }
    const Complex history(hr, hi);

    const Complex q_prev(qr[n - 1], qi[n - 1]);
    const Complex predicted = q_prev + h * g_prev;
    const Complex g_pred = -(history + w0 * predicted);
    const Complex corrected = q_prev + 0.5 * h * (g_prev + g_pred);
    g_prev = -(history + w0 * corrected);

    if (!(std::abs(corrected) <= bound))
      throw Error(ErrorCode::StepTooLarge,
                  "volterra: |q| exceeded 1 + 10h^2 at t = " +
                      std::to_string(static_cast<double>(n) * h) + "; reduce the step");
    qr[n] = corrected.real();
    qi[n] = corrected.imag();
  }

  GridAmplitude out;
  out.times.resize(n_steps + 1);
  out.values.resize(n_steps + 1);
  for (std::size_t k = 0; k <= n_steps; ++k) {
    out.times[k] = static_cast<double>(k) * h;
    out.values[k] = Complex(qr[k], qi[k]);
  }
  return out;
}

double richardson_order(const Kernel& kernel, const SolverConfig& cfg) {
  const std::size_t n = grid_intervals(cfg);
  const double t_end = static_cast<double>(n) * cfg.step;
  auto final_value = [&](double h) {
    return solve(kernel, {h, t_end, cfg.quadrature}).values.back();
  };
  const Complex q1 = final_value(cfg.step);
  const Complex q2 = final_value(cfg.step / 2.0);
  const Complex q4 = final_value(cfg.step / 4.0);
  const double coarse = std::abs(q1 - q2);
  const double fine = std::abs(q2 - q4);
  if (coarse == 0.0 || fine == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return std::log2(coarse / fine);
}

double max_deviation(const GridAmplitude& grid, const std::function<Complex(double)>& reference) {
  double dev = 0.0;
  for (std::size_t k = 0; k < grid.times.size(); ++k)
    dev = std::max(dev, std::abs(grid.values[k] - reference(grid.times[k])));
  return dev;
}

}  // namespace entdyn::volterra
