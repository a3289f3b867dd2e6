#pragma once

#include <vector>

#include "ptwell/numerics.hpp"

namespace ptwell {

/// Real polynomial potentials V0, W and the complex family
/// V_eps = V0 + i*eps*W. Coefficients are ascending.
///
/// Construction enforces the confining double-well proxy: deg V0 >= 4 with a
/// positive leading coefficient and deg W < deg V0. With pt_enforced the odd
/// coefficients of V0 and the even coefficients of W must be exactly zero.
class PerturbedPotential {
public:
  PerturbedPotential(std::vector<double> v0_coeffs, std::vector<double> w_coeffs,
                     bool pt_enforced);

  /// 0.05 x^4 - 0.5 x^2 + i eps x.
  static PerturbedPotential quartic();

  const std::vector<double>& v0_coeffs() const noexcept { return v0_; }
  const std::vector<double>& w_coeffs() const noexcept { return w_; }
  bool pt_enforced() const noexcept { return pt_enforced_; }

  cplx V(cplx z, double eps) const noexcept;
  cplx dV(cplx z, double eps) const noexcept;
  double V0(double x) const noexcept;
  double dV0(double x) const noexcept;
  cplx W(cplx z) const noexcept;

  /// V_eps(z) - E as a polynomial in z.
  ComplexPolynomial shifted(cplx E, double eps) const;

  int degree() const noexcept { return static_cast<int>(v0_.size()) - 1; }

private:
  std::vector<double> v0_;
  std::vector<double> w_;
  bool pt_enforced_;
};

cplx eval_V(const PerturbedPotential& pot, cplx z, double eps);
cplx eval_dV(const PerturbedPotential& pot, cplx z, double eps);

/// Real turning points at (E0, 0) together with the extrema of V0 that bound
/// the double-well energy range.
struct WellStructure {
  double E0;
  double alpha_l, beta_l, beta_r, alpha_r;
  double barrier_top;      // V0 at its local max between the wells
  double barrier_x;
  double well_min_left;    // V0 at the left minimum
  double well_min_right;
  double well_x_left, well_x_right;
};

/// Throws NotDoubleWell or NearDegenerateTurningPoint.
WellStructure classify_wells(const PerturbedPotential& pot, double E0);

/// True iff V0 is even and W is odd, coefficientwise and exactly.
bool pt_check(const PerturbedPotential& pot);

/// Integral of (E0 - V0)^(-1/2) W over the left well (alpha_l, beta_l).
/// A value with magnitude below 1e-10 means the non-degeneracy assumption on
/// W fails.
double a7_check(const PerturbedPotential& pot, const WellStructure& well, int n = 128);

}  // namespace ptwell
