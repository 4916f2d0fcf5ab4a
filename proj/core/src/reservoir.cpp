#include "entdyn/reservoir.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "entdyn/error.hpp"

namespace entdyn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::InvalidModel, what);
}

bool finite(double x) { return std::isfinite(x); }

/// sinh(x)/x, exact at 0.
Complex sinhc(Complex x) {
  if (std::abs(x) < 1e-4) return 1.0 + x * x / 6.0;
  return std::sinh(x) / x;
}

Complex eval_modes(std::span<const AmplitudeMode> modes, double t) {
  Complex q = 0.0;
  for (const auto& m : modes) {
    const Complex poly = m.poly[0] + t * (m.poly[1] + t * m.poly[2]);
    if (poly == Complex(0.0)) continue;
    q += poly * std::exp(m.rate * t);
  }
  return q;
}

/// Pole expansion of (s + l1)(s + l2) / cubic(s).
std::vector<AmplitudeMode> pbg_modes(const BandGapDip& p, const CubicRoots& r) {
  const double l1 = p.lambda1;
  const double l2 = p.lambda2;
  auto num = [&](Complex s) { return (s + l1) * (s + l2); };
  auto dnum = [&](Complex s) { return 2.0 * s + l1 + l2; };
  const auto& u = r.roots;

  std::vector<AmplitudeMode> modes;
  if (!r.degenerate) {
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3;
      const int k = (i + 2) % 3;
      modes.push_back({u[i], {num(u[i]) / ((u[i] - u[j]) * (u[i] - u[k])), 0.0, 0.0}});
    }
    return modes;
  }

  double scale = 0.0;
  for (const auto& x : u) scale = std::max(scale, std::abs(x));
  const double thr = std::max(1e-8 * scale, 0.0);
  auto close = [&](int a, int b) {
    const double g = std::abs(u[a] - u[b]);
    return g < thr || g == 0.0;
  };

  if (close(0, 1) && close(1, 2) && close(0, 2)) {
    const Complex w = (u[0] + u[1] + u[2]) / 3.0;
    modes.push_back({w, {1.0, dnum(w), num(w) / 2.0}});
    return modes;
  }

  // Merge the closest pair into a double pole.
  int a = 0, b = 1, c = 2;
  double best = std::abs(u[0] - u[1]);
  if (std::abs(u[1] - u[2]) < best) { a = 1; b = 2; c = 0; best = std::abs(u[1] - u[2]); }
  if (std::abs(u[0] - u[2]) < best) { a = 0; b = 2; c = 1; }
  const Complex w = 0.5 * (u[a] + u[b]);
  const Complex v = u[c];
  const Complex g = w - v;
  modes.push_back({w, {dnum(w) / g - num(w) / (g * g), num(w) / g, 0.0}});
  modes.push_back({v, {num(v) / (g * g), 0.0, 0.0}});
  return modes;
}

}  // namespace

std::string_view to_string(CouplingRegime r) noexcept {
  return r == CouplingRegime::Weak ? "weak" : "strong";
}

void validate(const DetunedLorentzian& p) {
  if (!finite(p.gamma) || !finite(p.lambda) || !finite(p.delta))
    invalid("Lorentzian parameters must be finite");
  if (!(p.gamma > 0.0)) invalid("gamma > 0 violated");
  if (!(p.lambda > 0.0)) invalid("lambda > 0 violated");
}

void validate(const BandGapDip& p) {
  if (!finite(p.gamma1) || !finite(p.gamma2) || !finite(p.lambda1) || !finite(p.lambda2))
    invalid("band-gap parameters must be finite");
  if (p.gamma1 < 0.0 || p.gamma2 < 0.0 || p.lambda1 < 0.0 || p.lambda2 < 0.0)
    invalid("band-gap rates must be >= 0 (gamma1, gamma2, lambda1, lambda2)");
  if (p.gamma1 < p.gamma2)
    invalid("gamma1 >= gamma2 violated: J(w) must be positive at the center of "
            "resonance");
  if (p.gamma1 * p.lambda1 * p.lambda1 < p.gamma2 * p.lambda2 * p.lambda2)
    invalid("gamma1*lambda1^2 >= gamma2*lambda2^2 violated: J(w) must be positive "
            "at large |w - w0|");
}

void validate(const SpectralModel& m) {
  std::visit([](const auto& p) { validate(p); }, m);
}

DerivedRates derived_rates(const BandGapDip& p) {
  return {(p.gamma1 * p.lambda1 - p.gamma2 * p.lambda2) / 2.0,
          (p.gamma1 - p.gamma2) / 2.0};
}

CubicRealCoeffs amplitude_denominator(const BandGapDip& p) {
  const auto r = derived_rates(p);
  const double l12 = p.lambda1 * p.lambda2;
  return {p.lambda1 + p.lambda2, l12 + r.Lambda, l12 * r.gamma_d};
}

double spectral_density(const SpectralModel& m, double detuning) {
  validate(m);
  if (const auto* l = std::get_if<DetunedLorentzian>(&m)) {
    const double x = detuning + l->delta;
    return l->gamma * l->lambda * l->lambda / (x * x + l->lambda * l->lambda) / kTwoPi;
  }
  const auto& b = std::get<BandGapDip>(m);
  const double x2 = detuning * detuning;
  const double l1 = b.lambda1 * b.lambda1;
  const double l2 = b.lambda2 * b.lambda2;
  // Single fraction keeps the gap centre exact when gamma1 == gamma2.
  const double num = x2 * (b.gamma1 * l1 - b.gamma2 * l2) + l1 * l2 * (b.gamma1 - b.gamma2);
  const double den = (x2 + l1) * (x2 + l2);
  if (den == 0.0) return 0.0;
  return num / den / kTwoPi;
}

Complex kernel(const SpectralModel& m, double tau) {
  if (const auto* l = std::get_if<DetunedLorentzian>(&m)) {
    return 0.5 * l->gamma * l->lambda *
           std::exp(-Complex(l->lambda, -l->delta) * tau);
  }
  const auto& b = std::get<BandGapDip>(m);
  return 0.5 * (b.gamma1 * b.lambda1 * std::exp(-b.lambda1 * tau) -
                b.gamma2 * b.lambda2 * std::exp(-b.lambda2 * tau));
}

double reference_rate(const SpectralModel& m) {
  if (const auto* l = std::get_if<DetunedLorentzian>(&m)) return l->gamma;
  return std::get<BandGapDip>(m).gamma1;
}

std::optional<CouplingRegime> coupling_regime(const SpectralModel& m) {
  const auto* l = std::get_if<DetunedLorentzian>(&m);
  if (l == nullptr || l->delta != 0.0) return std::nullopt;
  if (l->gamma < l->lambda / 2.0) return CouplingRegime::Weak;
  if (l->gamma > l->lambda / 2.0) return CouplingRegime::Strong;
  return std::nullopt;
}

AmplitudeFn::AmplitudeFn(SpectralModel model) : model_(std::move(model)) {
  validate(model_);
  if (const auto* l = std::get_if<DetunedLorentzian>(&model_)) {
    const Complex kappa(l->lambda, -l->delta);
    d_ = csqrt_principal(kappa * kappa - 2.0 * l->gamma * l->lambda);
  } else {
    const auto& b = std::get<BandGapDip>(model_);
    roots_ = solve_cubic(amplitude_denominator(b));
    modes_ = pbg_modes(b, roots_);
  }
}

Complex AmplitudeFn::operator()(double t) const {
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "amplitude: t must be >= 0");
  if (!modes_.empty()) return eval_modes(modes_, t);

  const auto& l = std::get<DetunedLorentzian>(model_);
  const Complex kappa(l.lambda, -l.delta);
  const Complex x = d_ * (t / 2.0);
  if (std::abs(x) < 1.0) {
    // cosh(dt/2) + kappa t/2 * sinh(dt/2)/(dt/2): regular at d = 0.
    return std::exp(-kappa * (t / 2.0)) * (std::cosh(x) + kappa * (t / 2.0) * sinhc(x));
  }
  // Same expression as a sum over the poles (-kappa +- d)/2; both have
  // non-positive real part, so nothing overflows at large t.
  const Complex r = kappa / d_;
  return 0.5 * (1.0 + r) * std::exp((d_ - kappa) * (t / 2.0)) +
         0.5 * (1.0 - r) * std::exp(-(d_ + kappa) * (t / 2.0));
}

Complex amplitude_lorentzian(const DetunedLorentzian& p, double t) {
  return AmplitudeFn(p)(t);
}

Complex amplitude_pbg(const BandGapDip& p, double t) { return AmplitudeFn(p)(t); }

double asymptotic_amplitude(const BandGapDip& p) {
  const AmplitudeFn q(p);
  Complex sum = 0.0;
  for (const auto& m : q.modes())
    if (std::abs(m.rate.real()) <= 1e-9) sum += m.poly[0];
  return std::abs(sum);
}

}  // namespace entdyn
