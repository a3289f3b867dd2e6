#include "ptwell/actions.hpp"

#include <cmath>
#include <sstream>

#include "ptwell/error.hpp"
#include "segment_quadrature.hpp"

namespace ptwell {

ActionContext::ActionContext(PerturbedPotential p, double E0, int nodes)
    : pot(std::move(p)), well(classify_wells(pot, E0)), n(nodes) {
  if (n < 16) throw Error(ErrorCode::InvalidArgument, "action quadrature needs n >= 16");
}

namespace {

constexpr int kHomotopySteps = 8;

cplx nearest_sign(cplx v, cplx prev) { return std::abs(v - prev) <= std::abs(-v - prev) ? v : -v; }

struct Anchors {
  cplx l, r, j;
};

Anchors principal_anchors(const PerturbedPotential& pot, const TurningPoints& tp) {
  const auto q = pot.shifted(tp.E, tp.eps);
  return {detail::midpoint_value(q, tp.alpha_l, tp.beta_l, +1),
          detail::midpoint_value(q, tp.beta_r, tp.alpha_r, +1),
          detail::midpoint_value(q, tp.beta_l, tp.beta_r, -1)};
}

TurningPoints real_configuration(const WellStructure& w) {
  TurningPoints tp{w.alpha_l, w.beta_l, w.beta_r, w.alpha_r, w.E0, 0.0, 0.0};
  return tp;
}

void check_same_labels(const TurningPoints& a, const TurningPoints& b) {
  const auto pa = a.as_array();
  const auto pb = b.as_array();
  for (int i = 0; i < 4; ++i)
    if (std::abs(pa[i] - pb[i]) > 1e-8 * (1.0 + std::abs(pa[i]))) {
      std::ostringstream os;
      os << "supplied turning points disagree with the continued labels at E=" << a.E;
      throw Error(ErrorCode::LabelAmbiguity, os.str());
    }
}

enum class Integrand { Action, InverseRoot, InverseRootW };

cplx integrate(const ActionContext& ctx, const TurningPoints& tp, cplx a, cplx b, int sign,
               cplx anchor, Integrand kind) {
  const auto q = ctx.pot.shifted(tp.E, tp.eps);
  if (kind == Integrand::Action) {
    const auto rule = chebyshev_rule(ChebyshevKind::Second, ctx.n);
    const auto seg = detail::sample_segment(q, a, b, sign, rule, anchor);
    cplx acc{};
    for (std::size_t j = 0; j < rule.size(); ++j) acc += rule.weights[j] * seg.sqrt_g[j];
    return seg.half * seg.half * acc;
  }
  const auto rule = chebyshev_rule(ChebyshevKind::First, ctx.n);
  const auto seg = detail::sample_segment(q, a, b, sign, rule, anchor);
  cplx acc{};
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const cplx w = kind == Integrand::InverseRootW ? ctx.pot.W(seg.t[j]) : cplx(1.0);
    acc += rule.weights[j] * w / seg.sqrt_g[j];
  }
  return acc;
}

}  // namespace

AnchoredTurningPoints anchored_turning_points(const ActionContext& ctx, cplx E, double eps) {
  WellStructure base = ctx.well;
  try {
    base = classify_wells(ctx.pot, E.real());
  } catch (const Error&) {
    // Re E outside the double-well range: continue from the reference energy
  }
  TurningPoints tp = real_configuration(base);
  Anchors anchors = principal_anchors(ctx.pot, tp);

  const cplx E_base(base.E0, 0.0);
  if (E != E_base || eps != 0.0) {
    std::vector<PathPoint> path;
    for (int k = 1; k <= kHomotopySteps; ++k) {
      const double s = static_cast<double>(k) / kHomotopySteps;
      path.push_back({E_base + s * (E - E_base), s * eps});
    }
    path.back() = {E, eps};
    for (const auto& step : continue_path(ctx.pot, path, tp)) {
      const Anchors next = principal_anchors(ctx.pot, step);
      anchors = {nearest_sign(next.l, anchors.l), nearest_sign(next.r, anchors.r),
                 nearest_sign(next.j, anchors.j)};
      tp = step;
    }
  }
  return {tp, anchors.l, anchors.r, anchors.j};
}

cplx action_I(const ActionContext& ctx, Side side, cplx E, double eps, const TurningPoints& tp) {
  const auto at = anchored_turning_points(ctx, E, eps);
  check_same_labels(at.tp, tp);
  return side == Side::Left
             ? integrate(ctx, tp, tp.alpha_l, tp.beta_l, +1, at.anchor_l, Integrand::Action)
             : integrate(ctx, tp, tp.beta_r, tp.alpha_r, +1, at.anchor_r, Integrand::Action);
}

cplx action_J(const ActionContext& ctx, cplx E, double eps, const TurningPoints& tp) {
  const auto at = anchored_turning_points(ctx, E, eps);
  check_same_labels(at.tp, tp);
  return integrate(ctx, tp, tp.beta_l, tp.beta_r, -1, at.anchor_j, Integrand::Action);
}

cplx dI_dE(const ActionContext& ctx, Side side, cplx E, double eps, const TurningPoints& tp) {
  const auto at = anchored_turning_points(ctx, E, eps);
  check_same_labels(at.tp, tp);
  const cplx v =
      side == Side::Left
          ? integrate(ctx, tp, tp.alpha_l, tp.beta_l, +1, at.anchor_l, Integrand::InverseRoot)
          : integrate(ctx, tp, tp.beta_r, tp.alpha_r, +1, at.anchor_r, Integrand::InverseRoot);
  return 0.5 * v;
}

cplx dI_de(const ActionContext& ctx, Side side, cplx E, double eps, const TurningPoints& tp) {
  const auto at = anchored_turning_points(ctx, E, eps);
  check_same_labels(at.tp, tp);
  const cplx v =
      side == Side::Left
          ? integrate(ctx, tp, tp.alpha_l, tp.beta_l, +1, at.anchor_l, Integrand::InverseRootW)
          : integrate(ctx, tp, tp.beta_r, tp.alpha_r, +1, at.anchor_r, Integrand::InverseRootW);
  return v / cplx(0.0, 2.0);
}

ActionSet action_set(const ActionContext& ctx, cplx E, double eps) {
  const auto at = anchored_turning_points(ctx, E, eps);
  const auto& tp = at.tp;
  ActionSet s;
  s.E = E;
  s.eps = eps;
  s.n_nodes = ctx.n;
  s.residual = tp.residual;
  s.tp = tp;
  s.I_l = integrate(ctx, tp, tp.alpha_l, tp.beta_l, +1, at.anchor_l, Integrand::Action);
  s.I_r = integrate(ctx, tp, tp.beta_r, tp.alpha_r, +1, at.anchor_r, Integrand::Action);
  s.J = integrate(ctx, tp, tp.beta_l, tp.beta_r, -1, at.anchor_j, Integrand::Action);
  s.dIl_dE = 0.5 * integrate(ctx, tp, tp.alpha_l, tp.beta_l, +1, at.anchor_l, Integrand::InverseRoot);
  s.dIr_dE = 0.5 * integrate(ctx, tp, tp.beta_r, tp.alpha_r, +1, at.anchor_r, Integrand::InverseRoot);
  s.dIl_de = integrate(ctx, tp, tp.alpha_l, tp.beta_l, +1, at.anchor_l, Integrand::InverseRootW) /
             cplx(0.0, 2.0);
  s.dIr_de = integrate(ctx, tp, tp.beta_r, tp.alpha_r, +1, at.anchor_r, Integrand::InverseRootW) /
             cplx(0.0, 2.0);
  // dJ/dE = -1/2 * integral of (V - E)^(-1/2)
  s.dJ_dE = -0.5 * integrate(ctx, tp, tp.beta_l, tp.beta_r, -1, at.anchor_j, Integrand::InverseRoot);
  return s;
}

}  // namespace ptwell
