#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "entdyn/qmath.hpp"

namespace entdyn {

/// Lorentzian cavity line detuned by `delta` from the qubit transition:
///   J(w) = (1/2pi) gamma lambda^2 / ((w0 - delta - w)^2 + lambda^2)
struct DetunedLorentzian {
  double gamma = 1.0;   // qubit free-space linewidth
  double lambda = 1.0;  // spectral width of the coupling
  double delta = 0.0;   // cavity-qubit detuning
};

/// Lorentzian background with a Lorentzian dip at the qubit frequency
/// (nonperfect photonic band gap):
///   J(w) = (1/2pi) [gamma1 lambda1^2 / (x^2 + lambda1^2)
///                 - gamma2 lambda2^2 / (x^2 + lambda2^2)],  x = w - w0
struct BandGapDip {
  double gamma1 = 1.0;   // background strength
  double gamma2 = 0.0;   // gap strength
  double lambda1 = 1.0;  // background bandwidth
  double lambda2 = 1.0;  // gap width
};

using SpectralModel = std::variant<DetunedLorentzian, BandGapDip>;

struct DerivedRates {
  double Lambda = 0.0;   // (gamma1 lambda1 - gamma2 lambda2) / 2
  double gamma_d = 0.0;  // (gamma1 - gamma2) / 2
};

enum class CouplingRegime { Weak, Strong };

std::string_view to_string(CouplingRegime r) noexcept;

/// Throw InvalidModel naming the violated condition.
void validate(const DetunedLorentzian& p);
void validate(const BandGapDip& p);
void validate(const SpectralModel& m);

DerivedRates derived_rates(const BandGapDip& p);

/// Denominator of the Laplace-domain amplitude for the band-gap model.
CubicRealCoeffs amplitude_denominator(const BandGapDip& p);

/// J as a function of the offset `detuning` = w - w0 from the qubit frequency.
double spectral_density(const SpectralModel& m, double detuning);

/// Memory kernel f(tau), the Fourier transform of J shifted to the qubit frame.
Complex kernel(const SpectralModel& m, double tau);

/// Rate that sets the dimensionless time axis (gamma or gamma1).
double reference_rate(const SpectralModel& m);

/// Weak (gamma < lambda/2) or strong (gamma > lambda/2) coupling; defined only
/// for the resonant Lorentzian, empty otherwise and at the boundary itself.
std::optional<CouplingRegime> coupling_regime(const SpectralModel& m);

/// One term e^{rate t} (poly[0] + poly[1] t + poly[2] t^2) of the band-gap
/// amplitude. Simple roots only populate poly[0].
struct AmplitudeMode {
  Complex rate;
  std::array<Complex, 3> poly{};
};

/// Survival amplitude q(t) for either spectral model. Construction validates
/// the model and caches d (Lorentzian) or the pole expansion (band gap).
class AmplitudeFn {
 public:
  explicit AmplitudeFn(SpectralModel model);

  Complex operator()(double t) const;

  const SpectralModel& model() const noexcept { return model_; }

  /// Band gap only; empty for the Lorentzian.
  std::span<const AmplitudeMode> modes() const noexcept { return modes_; }
  const CubicRoots& roots() const noexcept { return roots_; }
  /// True when near-coincident poles forced the confluent expansion.
  bool confluent() const noexcept { return roots_.degenerate; }

  /// Lorentzian only: principal sqrt((lambda - i delta)^2 - 2 gamma lambda).
  Complex d() const noexcept { return d_; }

 private:
  SpectralModel model_;
  Complex d_{};
  CubicRoots roots_{};
  std::vector<AmplitudeMode> modes_;
};

Complex amplitude_lorentzian(const DetunedLorentzian& p, double t);
Complex amplitude_pbg(const BandGapDip& p, double t);

/// |lim q(t)| as t -> infinity: the summed weight of poles on the imaginary
/// axis (|Re u| <= 1e-9). Zero when every pole is damped.
double asymptotic_amplitude(const BandGapDip& p);

}  // namespace entdyn
