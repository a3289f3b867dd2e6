#pragma once

#include "ptwell/numerics.hpp"
#include "ptwell/potential.hpp"
#include "ptwell/turning.hpp"

namespace ptwell {

enum class Side { Left, Right };

/// Everything an action evaluation needs besides the point (E, eps): the
/// potential, the real reference configuration at (E0, 0) that fixes labels
/// and square-root branches, and the quadrature size.
struct ActionContext {
  PerturbedPotential pot;
  WellStructure well;
  int n = 128;

  ActionContext(PerturbedPotential p, double E0, int nodes = 128);
};

/// Turning points at (E, eps) together with the values of (b-a)/2 * sqrt(G)
/// at the three segment midpoints, continued from the real positive values
/// at a real base energy with eps = 0.
struct AnchoredTurningPoints {
  TurningPoints tp;
  cplx anchor_l, anchor_r, anchor_j;
};

/// Continues labels and branches from (Re E, 0) when Re E lies in the
/// double-well range, otherwise from (E0, 0), in 8 steps.
AnchoredTurningPoints anchored_turning_points(const ActionContext& ctx, cplx E, double eps);

/// I_side(E, eps): integral of (E - V_eps)^(1/2) from alpha to beta.
cplx action_I(const ActionContext& ctx, Side side, cplx E, double eps, const TurningPoints& tp);
/// J(E, eps): integral of (V_eps - E)^(1/2) from beta_l to beta_r.
cplx action_J(const ActionContext& ctx, cplx E, double eps, const TurningPoints& tp);
/// dI/dE = 1/2 * integral of (E - V_eps)^(-1/2).
cplx dI_dE(const ActionContext& ctx, Side side, cplx E, double eps, const TurningPoints& tp);
/// dI/deps = 1/(2i) * integral of (E - V_eps)^(-1/2) W.
cplx dI_de(const ActionContext& ctx, Side side, cplx E, double eps, const TurningPoints& tp);

struct ActionSet {
  cplx I_l, I_r, J;
  cplx dIl_dE, dIr_dE, dIl_de, dIr_de, dJ_dE;
  cplx E;
  double eps = 0.0;
  int n_nodes = 0;
  double residual = 0.0;  // turning point residual
  TurningPoints tp;
};

ActionSet action_set(const ActionContext& ctx, cplx E, double eps);

}  // namespace ptwell
