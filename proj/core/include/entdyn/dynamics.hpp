#pragma once

#include "entdyn/qmath.hpp"

namespace entdyn {

/// Single-qubit density matrix in the basis {|1>, |0>}.
struct SingleQubitState {
  double rho11 = 0.0;
  double rho00 = 1.0;
  Complex rho10{};  // <1|rho|0>
};

/// Amplitude-damping map with survival amplitude q: populations transfer
/// |1> -> |0> with weight 1 - |q|^2, the coherence scales by q.
SingleQubitState evolve_single(const SingleQubitState& initial, Complex q);

enum class BellFamily { Phi, Psi };

/// Phi = alpha|01> + beta e^{i delta}|10>, Psi = alpha|00> + beta e^{i delta}|11>,
/// beta = sqrt(1 - alpha^2).
struct BellLikeInit {
  BellFamily family = BellFamily::Phi;
  double alpha = 0.7071067811865476;
  double delta = 0.0;
};

/// Two-qubit X state in the basis |11>, |10>, |01>, |00> (qubit A first).
/// Only the diagonal and the two anti-diagonal coherences are stored;
/// ad14 = <11|rho|00>, ad23 = <10|rho|01>.
struct XState {
  double d1 = 0.0, d2 = 0.0, d3 = 0.0, d4 = 1.0;
  Complex ad14{}, ad23{};

  bool is_valid() const;
};

using DensityMatrix4 = Matrix4;

XState bell_like_state(const BellLikeInit& init);

/// Product of two independent single-qubit maps with amplitudes qA, qB.
/// Throws NonPhysicalAmplitude if either |q| > 1 + 1e-9.
XState lift_two_qubit(const XState& initial, Complex qA, Complex qB);

DensityMatrix4 to_dense(const XState& x);

/// Basis index of |a b> (a, b in {0, 1}) in the ordering used by XState.
constexpr int basis_index(int a, int b) { return (1 - a) * 2 + (1 - b); }

}  // namespace entdyn
