#include "entdyn/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "entdyn/error.hpp"

namespace entdyn {

ConcurrenceSample concurrence_x(const XState& x, Complex q, double t) {
  if (!(std::abs(q) <= 1.0 + 1e-9))
    throw Error(ErrorCode::NonPhysicalAmplitude, "|q| > 1: amplitude is not a survival amplitude");
  const double p = std::norm(q);
  const double l = 1.0 - p;

  ConcurrenceSample s;
  s.t = t;
  s.q = q;
  s.K1 = p * (std::abs(x.ad23) -
              std::sqrt(x.d1) * std::sqrt(std::max(0.0, x.d4 + x.d1 * l * l + (x.d2 + x.d3) * l)));
  s.K2 = p * (std::abs(x.ad14) - std::sqrt(std::max(0.0, x.d2 + x.d1 * l)) *
                                     std::sqrt(std::max(0.0, x.d3 + x.d1 * l)));
  s.C = std::min(1.0, 2.0 * std::max({0.0, s.K1, s.K2}));
  return s;
}

namespace {

Matrix4 spin_flip() {
  // sigma_y (x) sigma_y
  Matrix4 y;
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  return y;
}

}  // namespace

double concurrence_wootters(const DensityMatrix4& rho) {
  constexpr double tol = 1e-9;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (std::abs(rho(r, c) - std::conj(rho(c, r))) > tol)
        throw Error(ErrorCode::NotAState, "concurrence: matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > tol)
    throw Error(ErrorCode::NotAState, "concurrence: trace differs from 1");

  const auto eig = eigh4(rho);
  if (eig.values[0] < -tol)
    throw Error(ErrorCode::NotAState, "concurrence: matrix is not positive semidefinite");

  std::array<Complex, 4> roots;
  for (int k = 0; k < 4; ++k) roots[k] = std::sqrt(std::max(0.0, eig.values[k]));
  const Matrix4 sqrt_rho = eig.vectors * Matrix4::diagonal(roots) * eig.vectors.adjoint();

  const Matrix4 y = spin_flip();
  const Matrix4 flipped = y * rho.conj() * y;
  const auto spec = eigh4(sqrt_rho * flipped * sqrt_rho);

  std::array<double, 4> lam;
  for (int k = 0; k < 4; ++k) {
    const double r = spec.values[k];
    if (r < -1e-10)
      throw Error(ErrorCode::NotAState, "concurrence: negative spin-flip eigenvalue");
    lam[k] = std::sqrt(std::max(0.0, r));
  }
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::clamp(lam[0] - lam[1] - lam[2] - lam[3], 0.0, 1.0);
}

namespace {

/// First time in (lo, hi] where `pred` holds, given !pred(lo) and pred(hi).
template <typename Pred>
double bisect(double lo, double hi, double tol, Pred&& pred) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (pred(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace

double branch_strength(const ConcurrenceSample& s) {
  const double p = std::norm(s.q);
  if (p > 0.0) return 2.0 * std::max({0.0, s.K1, s.K2}) / p;
  return s.C;
}

Trajectory analyze(std::vector<ConcurrenceSample> samples, const SampleFn& sample_at,
                   const EventThresholds& th) {
  const std::size_t n = samples.size();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "analyze: need at least two samples");
  const double dt = (samples.back().t - samples.front().t) / static_cast<double>(n - 1);
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "analyze: times must increase");
  for (std::size_t k = 1; k < n; ++k) {
    if (std::abs(samples[k].t - samples[k - 1].t - dt) > 1e-6 * dt)
      throw Error(ErrorCode::InvalidArgument, "analyze: sample grid is not uniform");
  }

  Trajectory out;
  auto strength_at = [&](double t) { return branch_strength(sample_at(t)); };
  bool alive = branch_strength(samples[0]) >= th.dead;
  std::size_t run_start = 0;
  std::optional<double> last_death;

  auto check_run = [&](std::size_t k) {
    if (k - run_start < 3)
      throw Error(ErrorCode::GridTooCoarse,
                  "analyze: concurrence excursion ending near t = " + std::to_string(samples[k].t) +
                      " spans fewer than 3 samples; increase grid.n");
    run_start = k;
  };

  for (std::size_t k = 1; k < n; ++k) {
    const double lo = samples[k - 1].t;
    const double hi = samples[k].t;
    const double strength = branch_strength(samples[k]);
    if (alive && strength < th.dead) {
      check_run(k);
      const double t = bisect(lo, hi, th.time_tolerance,
                              [&](double s) { return strength_at(s) < th.dead; });
      if (!out.esd_time) out.esd_time = t;
      last_death = t;
      alive = false;
    } else if (!alive && strength > th.alive) {
      check_run(k);
      const double t = bisect(lo, hi, th.time_tolerance,
                              [&](double s) { return strength_at(s) > th.alive; });
      if (last_death) out.revivals.push_back({*last_death, t});
      alive = true;
    }
  }

  const std::size_t tail = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(th.tail_fraction * static_cast<double>(n))));
  const std::size_t first = n - std::min(tail, n);
  double mean = 0.0;
  for (std::size_t k = first; k < n; ++k) mean += samples[k].C;
  mean /= static_cast<double>(n - first);
  double var = 0.0;
  for (std::size_t k = first; k < n; ++k) var += (samples[k].C - mean) * (samples[k].C - mean);
  const double sd = std::sqrt(var / static_cast<double>(n - first));
  if (mean > th.alive && sd < th.plateau_std && sd <= th.plateau_rel_std * mean)
    out.plateau = mean;

  out.samples = std::move(samples);
  return out;
}

std::vector<ConcurrenceSample> sample_concurrence(const AmplitudeFn& q, const XState& initial,
                                                  double t_max, std::size_t n) {
  if (n < 2 || !(t_max > 0.0))
    throw Error(ErrorCode::InvalidArgument, "sample_concurrence: need n >= 2 and t_max > 0");
  std::vector<ConcurrenceSample> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = t_max * static_cast<double>(k) / static_cast<double>(n - 1);
    out.push_back(concurrence_x(initial, q(t), t));
  }
  return out;
}

}  // namespace entdyn
