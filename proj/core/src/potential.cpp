#include "ptwell/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ptwell/error.hpp"
#include "segment_quadrature.hpp"

namespace ptwell {

namespace {

std::vector<double> trimmed(std::vector<double> c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  return c;
}

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

cplx horner(const std::vector<double>& c, cplx z) {
  cplx acc{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double horner_derivative(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) acc = acc * x + static_cast<double>(k) * c[k];
  return acc;
}

cplx horner_derivative(const std::vector<double>& c, cplx z) {
  cplx acc{};
  for (std::size_t k = c.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * c[k];
  return acc;
}

// Real roots of a real polynomial, ascending.
std::vector<double> real_roots(const std::vector<double>& c, double imag_tol) {
  const auto p = ComplexPolynomial::from_real(c);
  std::vector<double> out;
  for (const cplx& r : poly_roots(p, 1e-12))
    if (std::abs(r.imag()) < imag_tol) out.push_back(r.real());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

PerturbedPotential::PerturbedPotential(std::vector<double> v0_coeffs,
                                       std::vector<double> w_coeffs, bool pt_enforced)
    : v0_(trimmed(std::move(v0_coeffs))), w_(trimmed(std::move(w_coeffs))),
      pt_enforced_(pt_enforced) {
  if (v0_.size() < 5)
    throw Error(ErrorCode::InvalidPotential, "V0 must have degree >= 4");
  if (!(v0_.back() > 0.0))
    throw Error(ErrorCode::InvalidPotential, "V0 needs a positive leading coefficient");
  if (w_.size() >= v0_.size())
    throw Error(ErrorCode::InvalidPotential, "deg W must be below deg V0");
  for (double c : v0_)
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidPotential, "non-finite V0 coefficient");
  for (double c : w_)
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidPotential, "non-finite W coefficient");
  if (pt_enforced_ && !pt_check(*this))
    throw Error(ErrorCode::InvalidPotential,
                "pt_enforced requires V0 even and W odd (coefficientwise)");
}

PerturbedPotential PerturbedPotential::quartic() {
  return PerturbedPotential({0.0, 0.0, -0.5, 0.0, 0.05}, {0.0, 1.0}, true);
}

cplx PerturbedPotential::V(cplx z, double eps) const noexcept {
  return horner(v0_, z) + cplx(0.0, eps) * horner(w_, z);
}

cplx PerturbedPotential::dV(cplx z, double eps) const noexcept {
  return horner_derivative(v0_, z) + cplx(0.0, eps) * horner_derivative(w_, z);
}

double PerturbedPotential::V0(double x) const noexcept { return horner(v0_, x); }
double PerturbedPotential::dV0(double x) const noexcept { return horner_derivative(v0_, x); }
cplx PerturbedPotential::W(cplx z) const noexcept { return horner(w_, z); }

ComplexPolynomial PerturbedPotential::shifted(cplx E, double eps) const {
  std::vector<cplx> c(v0_.size(), 0.0);
  for (std::size_t k = 0; k < v0_.size(); ++k) c[k] = v0_[k];
  for (std::size_t k = 0; k < w_.size(); ++k) c[k] += cplx(0.0, eps * w_[k]);
  c[0] -= E;
  return ComplexPolynomial(std::move(c));
}

cplx eval_V(const PerturbedPotential& pot, cplx z, double eps) { return pot.V(z, eps); }
cplx eval_dV(const PerturbedPotential& pot, cplx z, double eps) { return pot.dV(z, eps); }

bool pt_check(const PerturbedPotential& pot) {
  const auto& v0 = pot.v0_coeffs();
  const auto& w = pot.w_coeffs();
  for (std::size_t k = 1; k < v0.size(); k += 2)
    if (v0[k] != 0.0) return false;
  for (std::size_t k = 0; k < w.size(); k += 2)
    if (w[k] != 0.0) return false;
  return true;
}

WellStructure classify_wells(const PerturbedPotential& pot, double E0) {
  std::vector<double> shifted = pot.v0_coeffs();
  shifted[0] -= E0;
  const auto roots = real_roots(shifted, 1e-10);
  if (roots.size() != 4) {
    std::ostringstream os;
    os << "V0 - E0 has " << roots.size() << " real roots at E0=" << E0 << ", expected 4";
    throw Error(ErrorCode::NotDoubleWell, os.str());
  }

  WellStructure ws{};
  ws.E0 = E0;
  ws.alpha_l = roots[0];
  ws.beta_l = roots[1];
  ws.beta_r = roots[2];
  ws.alpha_r = roots[3];

  const double slopes[4] = {pot.dV0(ws.alpha_l), pot.dV0(ws.beta_l), pot.dV0(ws.beta_r),
                            pot.dV0(ws.alpha_r)};
  for (double s : slopes) {
    if (std::abs(s) <= 1e-8) {
      std::ostringstream os;
      os << "|V0'| = " << std::abs(s) << " at a turning point for E0=" << E0;
      throw Error(ErrorCode::NearDegenerateTurningPoint, os.str());
    }
  }
  if (!(slopes[0] < 0.0 && slopes[1] > 0.0 && slopes[2] < 0.0 && slopes[3] > 0.0))
    throw Error(ErrorCode::NotDoubleWell, "turning point slopes violate the (-,+,-,+) pattern");

  std::vector<double> dcoeffs(pot.v0_coeffs().size() - 1);
  for (std::size_t k = 1; k < pot.v0_coeffs().size(); ++k)
    dcoeffs[k - 1] = static_cast<double>(k) * pot.v0_coeffs()[k];
  const auto crit = real_roots(dcoeffs, 1e-8);

  bool have_top = false, have_left = false, have_right = false;
  for (double x : crit) {
    const double v = pot.V0(x);
    if (x > ws.beta_l && x < ws.beta_r && (!have_top || v > ws.barrier_top)) {
      ws.barrier_top = v;
      ws.barrier_x = x;
      have_top = true;
    } else if (x > ws.alpha_l && x < ws.beta_l && (!have_left || v < ws.well_min_left)) {
      ws.well_min_left = v;
      ws.well_x_left = x;
      have_left = true;
    } else if (x > ws.beta_r && x < ws.alpha_r && (!have_right || v < ws.well_min_right)) {
      ws.well_min_right = v;
      ws.well_x_right = x;
      have_right = true;
    }
  }
  if (!have_top || !have_left || !have_right)
    throw Error(ErrorCode::NotDoubleWell, "could not locate barrier top and both well minima");
  return ws;
}

double a7_check(const PerturbedPotential& pot, const WellStructure& well, int n) {
  const auto q = pot.shifted(well.E0, 0.0);
  const auto rule = chebyshev_rule(ChebyshevKind::First, n);
  const auto seg = detail::sample_segment(q, well.alpha_l, well.beta_l, +1, rule, cplx(1.0));
  // (E0 - V0)^(-1/2) dt = ds / (sqrt(1 - s^2) sqrt(G))
  cplx acc{};
  for (std::size_t j = 0; j < rule.size(); ++j)
    acc += rule.weights[j] * pot.W(seg.t[j]) / seg.sqrt_g[j];
  return acc.real();
}

}  // namespace ptwell
