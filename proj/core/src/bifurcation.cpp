#include "ptwell/bifurcation.hpp"

#include <cmath>
#include <sstream>

#include "ptwell/error.hpp"

namespace ptwell {

namespace {

double reduce_mod_pi(double x) {
  double r = std::fmod(x, kPi);
  if (r < 0.0) r += kPi;
  return r;
}

double left_action(const ActionContext& ctx, double E) {
  return action_set(ctx, cplx(E, 0.0), 0.0).I_l.real();
}

}  // namespace

WindowCoords to_window(const ActionContext& ctx, cplx E, double eps, double E1, double h,
                       double kappa) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "h must be positive");
  WindowCoords w;
  w.E1 = E1;
  w.h = h;
  w.F = (E - E1) / h;
  w.eps_tilde = eps / h;
  w.kappa_tilde = reduce_mod_pi(kappa - left_action(ctx, E1) / h);
  return w;
}

std::pair<cplx, double> from_window(const WindowCoords& w) {
  return {w.E1 + w.h * w.F, w.h * w.eps_tilde};
}

BifurcationModel build_model(const ActionContext& ctx, double E1, double h,
                             std::optional<double> kappa_tilde) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "h must be positive");
  const double I1 = left_action(ctx, E1);
  const double kappa = kappa_tilde ? *kappa_tilde + I1 / h : 0.0;

  // critical energy: the left-well level I(E, 0) = h (kappa + (k + 1/2) pi)
  // nearest E1
  const int k = static_cast<int>(std::lround((I1 / h - kappa) / kPi - 0.5));
  const double target = h * (kappa + (k + 0.5) * kPi);
  double E = E1;
  for (int iter = 0; iter < 60; ++iter) {
    const auto s = action_set(ctx, cplx(E, 0.0), 0.0);
    const double step = (s.I_l.real() - target) / s.dIl_dE.real();
    E -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(E))) break;
  }

  const auto s = action_set(ctx, cplx(E, 0.0), 0.0);
  BifurcationModel m;
  m.E1 = E1;
  m.h = h;
  m.kappa_tilde = kappa_tilde ? *kappa_tilde : reduce_mod_pi(-I1 / h);
  m.E_c = E;
  m.F_c = (E - E1) / h;
  m.J_val = s.J.real();
  m.dIdE = s.dIl_dE.real();
  m.dIde_abs = std::abs(s.dIl_de);
  if (m.dIde_abs < 1e-10) {
    std::ostringstream os;
    os << "|dI/deps| = " << m.dIde_abs << " at E_c = " << E;
    throw Error(ErrorCode::A7Violation, os.str());
  }
  m.eps_tilde_c = std::exp(-m.J_val / h) / (2.0 * m.dIde_abs);
  m.eps_c = h * m.eps_tilde_c;
  m.q0 = 2.0 * m.dIdE * m.dIdE;
  m.m0 = m.dIde_abs;
  return m;
}

PairKind classify(double eps_tilde, const BifurcationModel& model) {
  const double e = std::abs(eps_tilde);
  if (std::abs(e - model.eps_tilde_c) <= 1e-12 * model.eps_tilde_c) return PairKind::DoubleRoot;
  return e < model.eps_tilde_c ? PairKind::RealPair : PairKind::ConjugatePair;
}

std::pair<cplx, cplx> predicted_pair(double eps_tilde, const BifurcationModel& model) {
  const auto to_E = [&](cplx F) { return model.E1 + model.h * F; };
  if (classify(eps_tilde, model) == PairKind::DoubleRoot)
    return {to_E(model.F_c), to_E(model.F_c)};
  const double fc = model.m0 * (eps_tilde * eps_tilde - model.eps_tilde_c * model.eps_tilde_c);
  const double d2 = -fc / model.q0;
  if (d2 >= 0.0) {
    const double d = std::sqrt(d2);
    return {to_E(model.F_c + d), to_E(model.F_c - d)};
  }
  const double d = std::sqrt(-d2);
  return {to_E(cplx(model.F_c, d)), to_E(cplx(model.F_c, -d))};
}

}  // namespace ptwell
