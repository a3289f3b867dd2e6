#pragma once

#include <vector>

#include "ptwell/actions.hpp"
#include "ptwell/numerics.hpp"

namespace ptwell {

struct SpectralParams {
  double h;
  double eps = 0.0;
  double kappa = 0.0;  // Floquet offset, meaningful mod pi

  SpectralParams(double h_, double eps_ = 0.0, double kappa_ = 0.0);
};

/// Leading-order quantization function
///   cos(I_l/h - k) cos(I_r/h - k) - 1/4 e^{-2J/h} sin(I_l/h - k) sin(I_r/h - k).
cplx eval_f(const ActionContext& ctx, cplx E, const SpectralParams& params);
cplx eval_f(const ActionSet& actions, const SpectralParams& params);

/// exp(-2J/h), flushed to zero once 2 Re J/h exceeds 745.
cplx tunnel_factor(cplx J, double h);

struct BsLevel {
  int k;
  cplx E;
  Side side;
  double residual;  // |2 I_side(E) - (2k+1) pi h - 2 h kappa|
};

/// Solutions of 2 I_side(E, eps) = (2k+1) pi h + 2 h kappa inside the window,
/// sorted by k. Levels whose Newton solve fails are skipped.
std::vector<BsLevel> bs_levels(const ActionContext& ctx, const SpectralParams& params,
                               const Rectangle& window, Side side);

struct FRoot {
  cplx E;
  int multiplicity = 1;
  double newton_residual = 0.0;
  bool certified = false;
};

struct FRootSearch {
  std::vector<FRoot> roots;
  int winding = 0;        // argument-principle count over the window
  int counted = 0;        // sum of multiplicities
  bool certified = false;
};

/// Zeros of eval_f inside the window, seeded from the Bohr-Sommerfeld levels
/// of both wells and certified against the winding number of f around the
/// window. A disagreement leaves certified == false.
FRootSearch find_f_roots(const ActionContext& ctx, const SpectralParams& params,
                         const Rectangle& window);

/// Throws CertificationMismatch when search.certified is false.
void require_certified(const FRootSearch& search);

/// C h min(1, max(h/|eps|, 1) e^{-Re J/h}) e^{-Re J/h}; eps = 0 reads
/// max(h/eps, 1) as +infinity.
double localization_radius(cplx E, double eps, double h, cplx J, double C = 10.0);

/// (i dI/deps) / (dI/dE) of the left well at (E, 0): the slope of the
/// eigenvalue drift Im E ~ slope * eps.
double gamma_slope(const ActionContext& ctx, double E);

}  // namespace ptwell
