#pragma once

#include <optional>
#include <utility>

#include "ptwell/actions.hpp"

namespace ptwell {

/// Rescaled window coordinates E = E1 + h F, eps = h eps_tilde,
/// kappa = kappa_tilde + I(E1, 0)/h.
struct WindowCoords {
  double E1;
  cplx F;
  double eps_tilde;
  double kappa_tilde;
  double h;
};

WindowCoords to_window(const ActionContext& ctx, cplx E, double eps, double E1, double h,
                       double kappa = 0.0);
std::pair<cplx, double> from_window(const WindowCoords& w);

/// Leading-order model of the pair of zeros that collide near the critical
/// energy E_c. The symbols are evaluated at E_c, the Bohr-Sommerfeld level of
/// the left well nearest E1 at eps = 0.
struct BifurcationModel {
  double E1;
  double h;
  double kappa_tilde;
  double E_c;
  double F_c;
  double eps_c;        // h * eps_tilde_c
  double eps_tilde_c;  // e^{-J/h} / (2 |dI/deps|)
  double q0;           // 2 (dI/dE)^2
  double m0;           // |dI/deps|
  double J_val;
  double dIdE;
  double dIde_abs;
};

/// Throws A7Violation when |dI/deps| < 1e-10. kappa_tilde defaults to the
/// eigenvalue case kappa = 0.
BifurcationModel build_model(const ActionContext& ctx, double E1, double h,
                             std::optional<double> kappa_tilde = std::nullopt);

enum class PairKind { RealPair, DoubleRoot, ConjugatePair };

PairKind classify(double eps_tilde, const BifurcationModel& model);

/// Zeros of m0 (eps_tilde^2 - eps_tilde_c^2) + q0 (F - F_c)^2 mapped back to
/// E = E1 + h F. The first element has the larger real part (real pair) or
/// the positive imaginary part (conjugate pair).
std::pair<cplx, cplx> predicted_pair(double eps_tilde, const BifurcationModel& model);

}  // namespace ptwell
