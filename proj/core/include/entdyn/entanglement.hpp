#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "entdyn/dynamics.hpp"
#include "entdyn/qmath.hpp"
#include "entdyn/reservoir.hpp"

namespace entdyn {

struct ConcurrenceSample {
  double t = 0.0;
  Complex q{};
  double K1 = 0.0;
  double K2 = 0.0;
  double C = 0.0;
};

/// Concurrence at amplitude q of an X state that started as `initial`, both
/// qubits seeing the same q:
///   C = 2 max{0, K1, K2}
///   K1 = |q|^2 (|rho23| - sqrt(rho11) sqrt(rho44 + rho11 (1-|q|^2)^2 + (rho22+rho33)(1-|q|^2)))
///   K2 = |q|^2 (|rho14| - sqrt(rho22 + rho11 (1-|q|^2)) sqrt(rho33 + rho11 (1-|q|^2)))
/// with rho_ij the entries of `initial`. Magnitudes of the coherences are used
/// so local phases drop out.
ConcurrenceSample concurrence_x(const XState& initial, Complex q, double t = 0.0);

/// Wootters concurrence of an arbitrary two-qubit state. The spin-flip
/// spectrum is taken from the Hermitian form sqrt(rho) rho~ sqrt(rho), which
/// has the same eigenvalues as rho rho~. Throws NotAState unless rho is
/// Hermitian, has unit trace and is positive semidefinite (all to 1e-9).
double concurrence_wootters(const DensityMatrix4& rho);

struct RevivalWindow {
  double death = 0.0;
  double rebirth = 0.0;
};

struct Trajectory {
  std::vector<ConcurrenceSample> samples;
  std::optional<double> esd_time;
  std::vector<RevivalWindow> revivals;
  std::optional<double> plateau;
};

struct EventThresholds {
  double dead = 1e-9;          // C below this counts as disentangled
  double alive = 1e-6;         // C must climb above this to count as revived
  double time_tolerance = 1e-6;
  double tail_fraction = 0.1;  // plateau window at the end of the grid
  double plateau_std = 1e-4;
  double plateau_rel_std = 1e-2;
};

using SampleFn = std::function<ConcurrenceSample(double)>;

/// Entanglement strength used for death/rebirth decisions: C / |q|^2, i.e.
/// 2 max{0, K1, K2} with the common |q|^2 factor removed, so an exponentially
/// small but strictly positive C is not mistaken for sudden death. Falls back
/// to C when the sample carries no amplitude (q == 0).
double branch_strength(const ConcurrenceSample& s);

/// Event detection on a uniform sample grid. Deaths and rebirths are located
/// on the grid with hysteresis (dead when branch_strength < `dead`, alive
/// again above `alive`) and then refined by bisection on `sample_at` to
/// `time_tolerance`.
///
/// A plateau is reported when the final `tail_fraction` of samples has a
/// standard deviation below both `plateau_std` and `plateau_rel_std * mean`
/// and a mean above `alive`; a decaying tail or an identically dead tail is
/// not a plateau.
///
/// Throws GridTooCoarse if an alive or dead run ending in a transition spans
/// fewer than 3 samples, and InvalidArgument for fewer than two samples or a
/// non-uniform grid.
Trajectory analyze(std::vector<ConcurrenceSample> samples, const SampleFn& sample_at,
                   const EventThresholds& thresholds = {});

/// Samples concurrence_x on t_k = t_max k / (n - 1), k = 0..n-1.
std::vector<ConcurrenceSample> sample_concurrence(const AmplitudeFn& q, const XState& initial,
                                                  double t_max, std::size_t n);

}  // namespace entdyn
