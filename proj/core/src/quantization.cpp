#include "ptwell/quantization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "ptwell/error.hpp"

namespace ptwell {

SpectralParams::SpectralParams(double h_, double eps_, double kappa_)
    : h(h_), eps(eps_), kappa(kappa_) {
  if (!(h > 0.0 && h <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "h must lie in (0, 1]");
}

cplx tunnel_factor(cplx J, double h) {
  if (2.0 * J.real() / h > 745.0) return 0.0;
  return std::exp(-2.0 * J / h);
}

cplx eval_f(const ActionSet& s, const SpectralParams& p) {
  const cplx xl = s.I_l / p.h - p.kappa;
  const cplx xr = s.I_r / p.h - p.kappa;
  return std::cos(xl) * std::cos(xr) - 0.25 * tunnel_factor(s.J, p.h) * std::sin(xl) * std::sin(xr);
}

cplx eval_f(const ActionContext& ctx, cplx E, const SpectralParams& params) {
  return eval_f(action_set(ctx, E, params.eps), params);
}

// ---------------------------------------------------------------------------

namespace {

// action_set memoised on the last point; Newton asks for f and f' at the
// same E back to back.
class ActionCache {
public:
  ActionCache(const ActionContext& ctx, double eps) : ctx_(ctx), eps_(eps) {}

  const ActionSet& at(cplx E) {
    if (!last_ || last_->E != E) last_ = action_set(ctx_, E, eps_);
    return *last_;
  }

private:
  const ActionContext& ctx_;
  double eps_;
  std::optional<ActionSet> last_;
};

cplx side_action(const ActionSet& s, Side side) { return side == Side::Left ? s.I_l : s.I_r; }
cplx side_dIdE(const ActionSet& s, Side side) { return side == Side::Left ? s.dIl_dE : s.dIr_dE; }

}  // namespace

std::vector<BsLevel> bs_levels(const ActionContext& ctx, const SpectralParams& params,
                               const Rectangle& window, Side side) {
  constexpr int kSamples = 17;
  std::vector<cplx> Es;
  std::vector<double> Is;
  for (int j = 0; j < kSamples; ++j) {
    const cplx E(window.re_min() + 2.0 * window.half_width * j / (kSamples - 1),
                 window.center.imag());
    try {
      Is.push_back(side_action(action_set(ctx, E, params.eps), side).real());
      Es.push_back(E);
    } catch (const Error&) {
      // sample outside the region where the turning points are defined
    }
  }
  if (Es.size() < 2) return {};

  const auto [lo, hi] = std::minmax_element(Is.begin(), Is.end());
  const double h = params.h;
  const int k_min = static_cast<int>(std::ceil((*lo / h - params.kappa) / kPi - 0.5));
  const int k_max = static_cast<int>(std::floor((*hi / h - params.kappa) / kPi - 0.5));

  std::vector<BsLevel> out;
  ActionCache cache(ctx, params.eps);
  for (int k = k_min; k <= k_max; ++k) {
    const double target = h * (params.kappa + (k + 0.5) * kPi);
    cplx seed = Es.front();
    for (std::size_t j = 0; j + 1 < Es.size(); ++j) {
      const double a = Is[j], b = Is[j + 1];
      if ((a - target) * (b - target) <= 0.0 && a != b) {
        seed = Es[j] + (Es[j + 1] - Es[j]) * ((target - a) / (b - a));
        break;
      }
    }
    AnalyticFunction g{
        [&](cplx E) { return side_action(cache.at(E), side) - target; },
        [&](cplx E) { return side_dIdE(cache.at(E), side); }};
    try {
      const cplx E = newton_refine(g, seed, 5e-13 * std::max(1.0, target), 60);
      if (!window.contains(E)) continue;
      const double res = std::abs(2.0 * side_action(cache.at(E), side) - 2.0 * target);
      out.push_back({k, E, side, res});
    } catch (const Error&) {
      // not fatal: the level is reported missing by omission
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct NewtonOutcome {
  cplx E;
  double residual;
  bool ok;
};

// Accepts when the last Newton correction is below step_tol.
NewtonOutcome newton_on_f(const ActionContext& ctx, const SpectralParams& p, cplx seed,
                          double step_tol) {
  auto f = [&](cplx E) -> std::optional<cplx> {
    try {
      return eval_f(ctx, E, p);
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  const double eta = 1e-7 * p.h;
  cplx E = seed;
  auto f0 = f(E);
  if (!f0) return {seed, 0.0, false};
  cplx fE = *f0;
  double last_step = std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < 100 && fE != cplx{}; ++iter) {
    const auto fp = f(E + eta), fm = f(E - eta);
    if (!fp || !fm) break;
    const cplx df = (*fp - *fm) / (2.0 * eta);
    if (std::abs(df) < 1e-300) break;
    const cplx step = fE / df;
    last_step = std::abs(step);
    if (last_step <= 1e-15 * (1.0 + std::abs(E))) break;
    double lambda = 1.0;
    bool decreased = false;
    for (int halving = 0; halving <= 40; ++halving, lambda *= 0.5) {
      const auto ft = f(E - lambda * step);
      if (ft && std::abs(*ft) < std::abs(fE)) {
        E -= lambda * step;
        fE = *ft;
        decreased = true;
        break;
      }
    }
    if (!decreased) break;
  }
  const bool ok = last_step <= step_tol || fE == cplx{};
  return {E, std::abs(fE), ok};
}

// Half of the eps = 0 splitting of a Bohr-Sommerfeld doublet.
double pair_scale(const ActionSet& s, double h) {
  const double x = s.J.real() / h;
  if (x > 700.0) return 0.0;
  return h * std::exp(-x) / (2.0 * std::abs(s.dIl_dE));
}

}  // namespace

FRootSearch find_f_roots(const ActionContext& ctx, const SpectralParams& params,
                         const Rectangle& window) {
  std::vector<cplx> centres;
  for (Side side : {Side::Left, Side::Right})
    for (const auto& lvl : bs_levels(ctx, params, window, side)) {
      centres.push_back(lvl.E);
      centres.push_back(std::conj(lvl.E));
    }

  struct Candidate {
    cplx E;
    double residual;
    double tol;
  };
  std::vector<Candidate> found;
  for (const cplx& c : centres) {
    double s0 = 0.0;
    try {
      s0 = pair_scale(action_set(ctx, c, params.eps), params.h);
    } catch (const Error&) {
      continue;
    }
    const double tol = std::max(std::min(1e-3 * params.h, 0.05 * s0), 1e-14 * (1.0 + std::abs(c)));
    std::vector<cplx> seeds{c};
    if (s0 > 0.0)
      for (cplx d : {cplx(s0, 0), cplx(-s0, 0), cplx(0, s0), cplx(0, -s0)}) seeds.push_back(c + d);
    for (const cplx& seed : seeds) {
      const auto r = newton_on_f(ctx, params, seed, 0.05 * tol);
      if (r.ok && window.contains(r.E)) found.push_back({r.E, r.residual, tol});
    }
  }

  std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
    return a.E.real() != b.E.real() ? a.E.real() < b.E.real() : a.E.imag() < b.E.imag();
  });

  FRootSearch out;
  std::vector<bool> used(found.size(), false);
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> cluster{i};
    used[i] = true;
    for (std::size_t j = i + 1; j < found.size(); ++j)
      if (!used[j] && std::abs(found[j].E - found[i].E) <= found[i].tol) {
        used[j] = true;
        cluster.push_back(j);
      }
    FRoot root;
    root.E = found[i].E;
    root.newton_residual = found[i].residual;
    for (std::size_t j : cluster)
      if (found[j].residual < root.newton_residual) {
        root.E = found[j].E;
        root.newton_residual = found[j].residual;
      }
    if (cluster.size() >= 2) {
      const double r = 10.0 * found[i].tol;
      try {
        const int w = winding_count([&](cplx E) { return eval_f(ctx, E, params); },
                                    Rectangle(root.E, r, r), 64);
        root.multiplicity = std::max(1, w);
      } catch (const Error&) {
        root.multiplicity = 1;
      }
    }
    out.roots.push_back(root);
  }

  for (const auto& r : out.roots) out.counted += r.multiplicity;
  out.winding = winding_count([&](cplx E) { return eval_f(ctx, E, params); }, window, 64);
  out.certified = out.winding == out.counted;
  for (auto& r : out.roots) r.certified = out.certified;
  return out;
}

void require_certified(const FRootSearch& search) {
  if (!search.certified) {
    std::ostringstream os;
    os << "winding number " << search.winding << " but " << search.counted
       << " zeros found (with multiplicity)";
    throw Error(ErrorCode::CertificationMismatch, os.str());
  }
}

double localization_radius(cplx /*E*/, double eps, double h, cplx J, double C) {
  const double x = J.real() / h;
  const double ex = x > 745.0 ? 0.0 : std::exp(-x);
  if (ex == 0.0) return 0.0;
  const double mx = eps == 0.0 ? std::numeric_limits<double>::infinity()
                               : std::max(h / std::abs(eps), 1.0);
  return C * h * std::min(1.0, mx * ex) * ex;
}

double gamma_slope(const ActionContext& ctx, double E) {
  const auto s = action_set(ctx, cplx(E, 0.0), 0.0);
  return (cplx(0.0, 1.0) * s.dIl_de / s.dIl_dE).real();
}

}  // namespace ptwell
