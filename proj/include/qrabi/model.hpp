#pragma once

#include <cmath>
#include <string>

#include "qrabi/errors.hpp"

namespace qrabi {

// Two-mode model: qubit coupled bilinearly to two cavity modes,
//   H = delta*sz + (n1 + n2) + g*(a1'a2' + a1 a2)*sx,   omega = 1.
// Two-photon model: qubit coupled quadratically to one mode,
//   H = delta*sz + n + g*(a'^2 + a^2)*sx.
// Both have a conserved charge splitting the Hilbert space into sectors
// labelled by a Bargmann index q, plus a Z2 parity inside each sector.
enum class ModelFamily { TwoMode, TwoPhoton };

inline const char* family_name(ModelFamily f) {
  return f == ModelFamily::TwoMode ? "two-mode" : "two-photon";
}

/// Critical coupling: spectral collapse point; no normalizable states at or above.
inline double critical_coupling(ModelFamily f) {
  return f == ModelFamily::TwoMode ? 1.0 : 0.5;
}

/// Bargmann index, stored exactly in quarter units so two-photon quarter
/// integers and two-mode half integers share one drift-free representation.
struct BargmannQ {
  int quarters = 2;  // q = quarters/4

  constexpr double value() const { return quarters / 4.0; }
  constexpr bool is_half_integer() const { return quarters % 2 == 0; }

  static BargmannQ from_quarters(int n) { return BargmannQ{n}; }

  /// Nearest exact quarter-integer; rejects anything off the quarter grid.
  static BargmannQ from_value(double q) {
    double scaled = q * 4.0;
    double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) > 1e-9 || rounded < 1.0)
      throw InvalidSector("Bargmann index must be a positive multiple of 1/4, got " +
                          std::to_string(q));
    return BargmannQ{static_cast<int>(rounded)};
  }

  friend bool operator==(BargmannQ a, BargmannQ b) { return a.quarters == b.quarters; }
  friend bool operator<(BargmannQ a, BargmannQ b) { return a.quarters < b.quarters; }
};

enum class Parity : int { Plus = +1, Minus = -1 };

inline int parity_sign(Parity p) { return static_cast<int>(p); }
inline const char* parity_name(Parity p) { return p == Parity::Plus ? "plus" : "minus"; }

/// One invariant subspace: charge sector q split by parity.
struct Sector {
  BargmannQ q;
  Parity parity = Parity::Plus;
};

struct ModelParams {
  double delta = 0.0;  // qubit splitting, >= 0
  double g = 0.0;      // coupling, 0 <= g < critical_coupling(family)
  ModelFamily family = ModelFamily::TwoMode;
};

/// Throws unless 0 <= g < g_c and delta >= 0.
inline void validate(const ModelParams& p) {
  double gc = critical_coupling(p.family);
  if (!(p.g >= 0.0) || !(p.g < gc))
    throw CouplingOutOfRange("g=" + std::to_string(p.g) + " outside [0, " +
                             std::to_string(gc) + ") for the " +
                             family_name(p.family) + " model");
  if (!(p.delta >= 0.0))
    throw Error("delta must be nonnegative, got " + std::to_string(p.delta));
}

/// Checks q lies on the family's allowed grid (half integers >= 1/2 for
/// two-mode, 1/4 or 3/4 for two-photon).
inline void validate(ModelFamily family, BargmannQ q) {
  if (family == ModelFamily::TwoMode) {
    if (q.quarters < 2 || q.quarters % 2 != 0)
      throw InvalidSector("two-mode Bargmann index must be in {1/2, 1, 3/2, ...}");
  } else {
    if (q.quarters != 1 && q.quarters != 3)
      throw InvalidSector("two-photon Bargmann index must be 1/4 or 3/4");
  }
}

/// beta = sqrt(1 - g^2) (two-mode) or sqrt(1 - 4 g^2) (two-photon).
inline double squeeze_beta(const ModelParams& p) {
  validate(p);
  double ge = p.family == ModelFamily::TwoMode ? p.g : 2.0 * p.g;
  return std::sqrt((1.0 - ge) * (1.0 + ge));
}

/// Effective coupling entering the squeeze ratio: g (two-mode), 2g (two-photon).
inline double effective_coupling(const ModelParams& p) {
  return p.family == ModelFamily::TwoMode ? p.g : 2.0 * p.g;
}

/// Constant offset in the x -> E map: E = 2*beta*(x+q) - offset.
inline double energy_offset(ModelFamily f) {
  return f == ModelFamily::TwoMode ? 1.0 : 0.5;
}

/// Mode-mixing squeeze transformation underlying the solvable basis.
struct BogoliubovData {
  double beta;   // sqrt(1 - g_eff^2)
  double u;      // sqrt((1+beta)/(2 beta))
  double v;      // sqrt((1-beta)/(2 beta))
  double ratio;  // v/u, computed as (1-beta)/g_eff for stability at small g
};

inline BogoliubovData bogoliubov(const ModelParams& p) {
  double beta = squeeze_beta(p);
  double ge = effective_coupling(p);
  // (1-beta)/g_eff == g_eff/(1+beta): the right-hand form is exact at g=0.
  double ratio = ge / (1.0 + beta);
  return BogoliubovData{beta, std::sqrt((1.0 + beta) / (2.0 * beta)),
                        std::sqrt((1.0 - beta) / (2.0 * beta)), ratio};
}

/// E = 2*beta*(x + q) - offset.
inline double energy_from_x(const ModelParams& p, BargmannQ q, double x) {
  return 2.0 * squeeze_beta(p) * (x + q.value()) - energy_offset(p.family);
}

/// Inverse of energy_from_x: x = (E + offset)/(2*beta) - q.
inline double x_from_energy(const ModelParams& p, BargmannQ q, double E) {
  return (E + energy_offset(p.family)) / (2.0 * squeeze_beta(p)) - q.value();
}

}  // namespace qrabi
