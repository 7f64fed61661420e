#pragma once

#include <cmath>
#include <vector>

#include "qrabi/controls.hpp"
#include "qrabi/tridiag.hpp"

namespace qrabi {

// Within the charge sector with Bargmann index q the two-mode Hamiltonian is
// exactly tridiagonal: the number operator contributes 2n + 2q - 1 on the
// diagonal, the bilinear coupling connects n and n+1 with matrix element
// g*sqrt((n+1)(n+2q)) while flipping the qubit, and fixing the parity
// eigenvalue p pins the qubit state at level n to p*(-1)^n.
inline TridiagonalMatrix build_sector_matrix(const ModelParams& p, BargmannQ q,
                                             Parity parity, int n_trunc) {
  if (p.family != ModelFamily::TwoMode)
    throw InvalidSector("build_sector_matrix handles the two-mode family only");
  validate(p.family, q);
  if (n_trunc < 1) throw Error("truncation must be >= 1");

  TridiagonalMatrix m;
  m.family = p.family;
  m.q = q;
  m.parity = parity;
  double qv = q.value();
  int sign = parity_sign(parity);
  m.diag.resize(n_trunc + 1);
  m.offdiag.resize(n_trunc);
  for (int n = 0; n <= n_trunc; ++n) {
    double spin = (n % 2 == 0 ? sign : -sign);
    m.diag[n] = 2.0 * n + 2.0 * qv - 1.0 + p.delta * spin;
  }
  for (int n = 0; n < n_trunc; ++n)
    m.offdiag[n] = p.g * std::sqrt((n + 1.0) * (n + 2.0 * qv));
  return m;
}

// Two-photon analogue: photon number N_ph = 2n (q=1/4) or 2n+1 (q=3/4),
// coupling element g*sqrt((N_ph+1)(N_ph+2)) between n and n+1.
inline TridiagonalMatrix build_twophoton_matrix(const ModelParams& p, BargmannQ q,
                                                Parity parity, int n_trunc) {
  if (q.quarters != 1 && q.quarters != 3)
    throw InvalidSector("two-photon Bargmann index must be 1/4 or 3/4");
  if (n_trunc < 1) throw Error("truncation must be >= 1");

  TridiagonalMatrix m;
  m.family = ModelFamily::TwoPhoton;
  m.q = q;
  m.parity = parity;
  int odd = q.quarters == 3 ? 1 : 0;
  int sign = parity_sign(parity);
  m.diag.resize(n_trunc + 1);
  m.offdiag.resize(n_trunc);
  for (int n = 0; n <= n_trunc; ++n) {
    double nph = 2.0 * n + odd;
    double spin = (n % 2 == 0 ? sign : -sign);
    m.diag[n] = nph + p.delta * spin;
  }
  for (int n = 0; n < n_trunc; ++n) {
    double nph = 2.0 * n + odd;
    m.offdiag[n] = p.g * std::sqrt((nph + 1.0) * (nph + 2.0));
  }
  return m;
}

inline TridiagonalMatrix build_matrix(const ModelParams& p, BargmannQ q,
                                      Parity parity, int n_trunc) {
  return p.family == ModelFamily::TwoMode
             ? build_sector_matrix(p, q, parity, n_trunc)
             : build_twophoton_matrix(p, q, parity, n_trunc);
}

struct EdLevel {
  double energy = 0.0;
  int truncation_used = 0;
  bool converged = false;
};

/// Truncated-diagonalization spectrum of one sector: doubles the truncation
/// until the requested levels move by less than tol_ed, up to n_hard.
/// Non-convergence is recorded per level, not thrown; close to the critical
/// coupling the low-lying states contain very many excitations and the
/// truncated values keep drifting.
///
/// g at or beyond the critical coupling is refused unless
/// allow_beyond_critical is set (useful only to demonstrate the collapse).
inline std::vector<EdLevel> ed_spectrum(const ModelParams& p, BargmannQ q,
                                        Parity parity, int n_levels,
                                        const EdControls& ctl = {},
                                        bool allow_beyond_critical = false) {
  if (n_levels < 1) throw Error("n_levels must be >= 1");
  if (allow_beyond_critical) {
    if (!(p.g >= 0.0) || !(p.delta >= 0.0))
      throw Error("g and delta must be nonnegative");
  } else {
    validate(p);
  }
  validate(p.family, q);

  int n_trunc = std::max(ctl.n0, n_levels);
  auto eigs = [&](int nt) {
    return eigenvalues_tridiagonal(build_matrix(p, q, parity, nt), n_levels);
  };

  std::vector<double> prev = eigs(n_trunc);
  std::vector<char> level_ok(n_levels, 0);
  bool all_ok = false;
  while (!all_ok && n_trunc < ctl.n_hard) {
    n_trunc = std::min(2 * n_trunc, ctl.n_hard);
    std::vector<double> cur = eigs(n_trunc);
    all_ok = true;
    for (int i = 0; i < n_levels; ++i) {
      level_ok[i] = std::abs(cur[i] - prev[i]) < ctl.tol_ed;
      all_ok = all_ok && level_ok[i];
    }
    prev = std::move(cur);
  }

  std::vector<EdLevel> out(n_levels);
  for (int i = 0; i < n_levels; ++i)
    out[i] = EdLevel{prev[i], n_trunc, static_cast<bool>(level_ok[i])};
  return out;
}

}  // namespace qrabi
