// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "entdyn/dynamics.hpp"
#include "entdyn/entanglement.hpp"
#include "entdyn/qmath.hpp"
#include "entdyn/reservoir.hpp"
#include "entdyn/volterra.hpp"
#include "support/oracles.hpp"

using namespace entdyn;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const double kAlphaPsi = 1.0 / std::sqrt(3.0);
const DetunedLorentzian kFig1d0{1.0, 0.1, 0.0};
const DetunedLorentzian kFig1d2{1.0, 0.1, 0.2};
const BandGapDip kFig2g1{1.0, 1.0, 50.0, 5.0};

volterra::Kernel model_kernel(const SpectralModel& m) {
  return [m](double tau) { return kernel(m, tau); };
}

Trajectory trajectory(const SpectralModel& m, const XState& init, double t_max, std::size_t n) {
  const AmplitudeFn q(m);
  EventThresholds th;
  th.time_tolerance = 1e-6 / reference_rate(m);
  return analyze(sample_concurrence(q, init, t_max, n),
                 [&](double t) { return concurrence_x(init, q(t), t); }, th);
}

void oracle_equivalence() {
  struct Case {
    const char* name;
    SpectralModel model;
    double t_max;
  };
  const Case cases[] = {{"fig1-d0", kFig1d0, 15.0}, {"fig1-d2", kFig1d2, 15.0}, {"fig2-g1", kFig2g1, 50.0}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const auto start = Clock::now();
    const AmplitudeFn q(c.model);
    const auto grid = volterra::solve(model_kernel(c.model), {1e-3, c.t_max});
    const double dev = volterra::max_deviation(grid, [&](double t) { return q(t); });
    const double secs = seconds_since(start);
    ok = ok && dev <= 1e-4 && secs <= 60.0;
    detail += fmt("%s%s max|dq|=%.3g in %.2fs", detail.empty() ? "" : "; ", c.name, dev, secs);
  }
  report(1, "analytic q(t) matches Volterra oracle, h=1e-3, tol 1e-4, <=60 s", ok, detail);
}

void concurrence_oracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const XState x = oracle::random_x_state(rng);
    const Complex q = oracle::random_amplitude(rng);
    const double closed = concurrence_x(x, q).C;
    const double oracle = concurrence_wootters(to_dense(lift_two_qubit(x, q, q)));
    worst = std::max(worst, std::abs(closed - oracle));
  }
  const double secs = seconds_since(start);
  report(2, "X-state concurrence matches Wootters on 500 random states, tol 1e-8, <=10 s",
         worst <= 1e-8 && secs <= 10.0, fmt("max diff %.3g in %.3fs", worst, secs));
}

void fig1_phenomenology() {
  const XState psi = bell_like_state({BellFamily::Psi, kAlphaPsi, 0.0});
  const auto d0 = trajectory(kFig1d0, psi, 15.0, 1501);
  const auto d2 = trajectory(kFig1d2, psi, 15.0, 1501);
  const bool a = d0.esd_time.has_value();
  const bool b = !d2.revivals.empty();
  const bool c = a && d2.esd_time && *d2.esd_time > *d0.esd_time;
  std::string detail = a ? fmt("ESD(D=0)=%.6f", *d0.esd_time) : std::string("no ESD at D=0");
  detail += fmt(", revivals(D=2l)=%zu", d2.revivals.size());
  if (d2.esd_time) detail += fmt(", first death(D=2l)=%.6f", *d2.esd_time);
  report(3, "detuned Lorentzian: ESD at D=0, revivals and later death at D=2l", a && b && c, detail);
}

void fig2_phenomenology() {
  const XState phi = bell_like_state({});
  const double expected = std::pow(250.0 / 272.5, 2);
  const auto g1 = trajectory(kFig2g1, phi, 50.0, 5001);
  const bool a = g1.plateau && std::abs(*g1.plateau - expected) <= 0.01;
  std::string detail = g1.plateau ? fmt("plateau=%.6f vs %.6f", *g1.plateau, expected) : std::string("no plateau");

  bool b = true;
  double prev = g1.samples.back().C;
  for (double g2 : {2.0 / 3.0, 1.0 / 3.0, 0.0}) {
    const auto tr = trajectory(BandGapDip{1.0, g2, 50.0, 5.0}, phi, 50.0, 5001);
    const double c50 = tr.samples.back().C;
    b = b && !tr.plateau && c50 < prev;
    detail += fmt(", G2=%.3f: C(50)=%.3g%s", g2, c50, tr.plateau ? " plateau!" : "");
    prev = c50;
  }
  report(4, "band gap: trapping plateau at G2=G1, decay speeds up as G2 decreases", a && b, detail);
}

void markov_limit() {
  const DetunedLorentzian p{1.0, 100.0, 0.0};
  const AmplitudeFn q(p);
  const XState phi = bell_like_state({});
  double worst = 0.0;
  for (int i = 0; i <= 3000; ++i) {
    const double t = 3.0 * i / 3000.0;
    worst = std::max(worst, std::abs(concurrence_x(phi, q(t), t).C - std::exp(-t)));
  }
  report(5, "weak coupling: |C(t) - exp(-t)| <= 0.02 on [0, 3]", worst <= 0.02, fmt("max diff %.4g", worst));
}

void structural_invariants() {
  std::mt19937_64 rng(77);
  double trace_err = 0.0, min_eig = 1e300, sum_err = 0.0, slope_err = 0.0, vieta_err = 0.0, q_max = 0.0;

  for (int k = 0; k < 1000; ++k) {
    const XState x = oracle::random_x_state(rng);
    const Complex qa = oracle::random_amplitude(rng), qb = oracle::random_amplitude(rng);
    const XState y = lift_two_qubit(x, qa, qb);
    trace_err = std::max(trace_err, std::abs(y.d1 + y.d2 + y.d3 + y.d4 - 1.0));
    const auto s = evolve_single({0.3, 0.7, 0.2}, qa);
    trace_err = std::max(trace_err, std::abs(s.rho11 + s.rho00 - 1.0));
    for (const auto& e : eig4(to_dense(y))) min_eig = std::min(min_eig, e.real());

    // Evolved pure Bell-like states: repeated zero eigenvalues.
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const XState bell = bell_like_state({k % 2 ? BellFamily::Phi : BellFamily::Psi, u(rng), 6.0 * u(rng)});
    const Complex qb_same = k % 3 == 0 ? Complex(1.0) : qb;
    for (const auto& e : eig4(to_dense(lift_two_qubit(bell, qb_same, qb_same)))) min_eig = std::min(min_eig, e.real());
  }

  for (int k = 0; k < 1000; ++k) {
    const BandGapDip p = oracle::random_band_gap(rng);
    const AmplitudeFn q(p);
    Complex sum = 0.0, slope = 0.0;
    double umax = 0.0;
    for (const auto& m : q.modes()) {
      sum += m.poly[0];
      slope += m.poly[0] * m.rate + m.poly[1];
      umax = std::max(umax, std::abs(m.rate));
    }
    sum_err = std::max(sum_err, std::abs(sum - 1.0));
    slope_err = std::max(slope_err, std::abs(slope) / umax);

    const auto c = amplitude_denominator(p);
    const auto& u = q.roots().roots;
    const double scale = std::max({1.0, std::abs(c.a2), std::abs(c.a1), std::abs(c.a0), umax * umax * umax});
    vieta_err = std::max({vieta_err, std::abs(u[0] + u[1] + u[2] + c.a2) / scale,
                          std::abs(u[0] * u[1] + u[1] * u[2] + u[0] * u[2] - c.a1) / scale,
                          std::abs(u[0] * u[1] * u[2] + c.a0) / scale});

    if (k < 200) {
      const AmplitudeFn l(oracle::random_lorentzian(rng));
      for (int i = 0; i <= 1000; ++i) {
        q_max = std::max(q_max, std::abs(q(50.0 / p.gamma1 * i / 1000.0)));
        q_max = std::max(q_max, std::abs(l(50.0 * i / 1000.0 / std::get<DetunedLorentzian>(l.model()).gamma)));
      }
    }
  }

  const bool ok = trace_err <= 1e-12 && min_eig >= -1e-9 && sum_err <= 1e-10 && slope_err <= 1e-8 &&
                  vieta_err <= 1e-8 && q_max <= 1.0 + 1e-9;
  report(6, "structural invariants (trace, positivity, residue sums, Vieta, |q|<=1)", ok,
         fmt("trace %.2g, min eig %.2g, |sum c-1| %.2g, |sum c u|/max|u| %.2g, Vieta %.2g, max|q| %.12f",
             trace_err, min_eig, sum_err, slope_err, vieta_err, q_max));
}

void convergence_order() {
  const double o1 = volterra::richardson_order(model_kernel(kFig1d0), {1e-2, 5.0});
  const double o2 = volterra::richardson_order(model_kernel(kFig2g1), {1e-2, 5.0});
  const auto in = [](double o) { return o >= 1.7 && o <= 2.3; };
  report(7, "Volterra Richardson order in [1.7, 2.3] for both kernel families", in(o1) && in(o2),
         fmt("fig1-d0 %.4f, fig2-g1 %.4f", o1, o2));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> checks = {oracle_equivalence, concurrence_oracle, fig1_phenomenology,
                                                     fig2_phenomenology, markov_limit,       structural_invariants,
                                                     convergence_order};
  for (std::size_t i = 0; i < checks.size(); ++i) {
    try {
      checks[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), "raised an exception", false, e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, checks.size());
  return failures == 0 ? 0 : 1;
}
