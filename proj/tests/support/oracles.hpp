#pragma once

// Test-only generators and brute-force references. Nothing here calls the
// closed-form X-state paths it is used to check.

#include <cmath>
#include <numbers>
#include <random>

#include "entdyn/dynamics.hpp"
#include "entdyn/qmath.hpp"
#include "entdyn/reservoir.hpp"

namespace entdyn::oracle {

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

inline Complex random_amplitude(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

/// Uniform on the probability simplex for the diagonal; coherences drawn
/// inside their positivity bound with random phase.
inline XState random_x_state(std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double d[4];
  double sum = 0.0;
  for (double& x : d) sum += (x = e(rng));
  XState s;
  s.d1 = d[0] / sum;
  s.d2 = d[1] / sum;
  s.d3 = d[2] / sum;
  s.d4 = 1.0 - s.d1 - s.d2 - s.d3;
  s.ad14 = std::polar(u(rng) * std::sqrt(s.d1 * s.d4), 2.0 * std::numbers::pi * u(rng));
  s.ad23 = std::polar(u(rng) * std::sqrt(s.d2 * s.d3), 2.0 * std::numbers::pi * u(rng));
  return s;
}

inline BandGapDip random_band_gap(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  BandGapDip p;
  p.gamma1 = log_uniform(rng, 0.1, 10.0);
  p.lambda1 = log_uniform(rng, 0.05, 200.0);
  p.lambda2 = log_uniform(rng, 0.05, 200.0);
  const double cap = std::min(p.gamma1, p.gamma1 * p.lambda1 * p.lambda1 / (p.lambda2 * p.lambda2));
  p.gamma2 = u(rng) * cap;
  return p;
}

inline DetunedLorentzian random_lorentzian(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DetunedLorentzian p;
  p.gamma = log_uniform(rng, 0.1, 10.0);
  p.lambda = p.gamma * log_uniform(rng, 0.01, 100.0);
  p.delta = p.lambda * 10.0 * u(rng);
  return p;
}

/// Single-qubit transfer tensor A[i][i'][l][l'] in the {1, 0} bit labelling:
/// rho_{ii'}(t) = sum A[i][i'][l][l'] rho_{ll'}(0).
struct TransferTensor {
  Complex a[2][2][2][2]{};
};

inline TransferTensor damping_tensor(Complex q) {
  TransferTensor t;
  const double p = std::norm(q);
  // Bit value 1 = excited, 0 = ground.
  t.a[1][1][1][1] = p;
  t.a[0][0][1][1] = 1.0 - p;
  t.a[0][0][0][0] = 1.0;
  t.a[1][0][1][0] = q;
  t.a[0][1][0][1] = std::conj(q);
  return t;
}

/// Full 16-element product map on a dense two-qubit matrix.
inline Matrix4 apply_product_map(const Matrix4& rho, Complex qA, Complex qB) {
  const auto A = damping_tensor(qA);
  const auto B = damping_tensor(qB);
  Matrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int ip = 0; ip < 2; ++ip)
      for (int j = 0; j < 2; ++j)
        for (int jp = 0; jp < 2; ++jp) {
          Complex s = 0.0;
          for (int l = 0; l < 2; ++l)
            for (int lp = 0; lp < 2; ++lp)
              for (int m = 0; m < 2; ++m)
                for (int mp = 0; mp < 2; ++mp)
                  s += A.a[i][ip][l][lp] * B.a[j][jp][m][mp] *
                       rho(basis_index(l, m), basis_index(lp, mp));
          out(basis_index(i, j), basis_index(ip, jp)) = s;
        }
  return out;
}

inline double max_abs_diff(const Matrix4& x, const Matrix4& y) {
  double m = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m = std::max(m, std::abs(x(r, c) - y(r, c)));
  return m;
}

}  // namespace entdyn::oracle
