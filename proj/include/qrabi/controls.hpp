#pragma once

namespace qrabi {

/// Truncation and pole-guard knobs for the series evaluation.
struct SeriesControls {
  double eps_tail = 1e-14;  // relative tail threshold
  int tail_window = 4;      // consecutive sub-threshold terms required
  int n_max_hard = 20000;   // hard truncation cap
  double pole_guard = 1e-6; // evaluation refused within this distance of a pole
};

/// Root-finding knobs. x_floor <= 0 marks "use the default ground-state
/// scan floor" -(1+delta)/beta - 2q, which provably undershoots the true
/// ground level.
struct RootControls {
  int grid_points = 64;     // scan points per pole-free interval
  double tol_x = 1e-12;     // bisection bracket width
  double x_floor = 1.0;     // >0 means auto
};

/// Truncated-diagonalization oracle knobs.
struct EdControls {
  int n0 = 200;       // starting truncation
  int n_hard = 8000;  // truncation cap
  double tol_ed = 1e-10;
};

struct Controls {
  SeriesControls series;
  RootControls root;
  EdControls ed;
};

}  // namespace qrabi
