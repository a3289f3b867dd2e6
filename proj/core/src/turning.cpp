#include "ptwell/turning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ptwell/error.hpp"

namespace ptwell {

double TurningPoints::min_separation() const {
  const auto p = as_array();
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) m = std::min(m, std::abs(p[i] - p[j]));
  return m;
}

namespace {

cplx polish(const ComplexPolynomial& q, const ComplexPolynomial& dq, cplx z) {
  double best = std::abs(q(z));
  for (int k = 0; k < 3; ++k) {
    const cplx d = dq(z);
    if (std::abs(d) < 1e-300) break;
    const cplx next = z - q(z) / d;
    const double r = std::abs(q(next));
    if (!(r < best)) break;
    z = next;
    best = r;
  }
  return z;
}

}  // namespace

TurningPoints turning_points(const PerturbedPotential& pot, cplx E, double eps,
                             const WellStructure& ref) {
  return turning_points(pot, E, eps,
                        std::array<cplx, 4>{ref.alpha_l, ref.beta_l, ref.beta_r, ref.alpha_r});
}

TurningPoints turning_points(const PerturbedPotential& pot, cplx E, double eps,
                             const std::array<cplx, 4>& ref) {
  const auto q = pot.shifted(E, eps);
  const auto dq = q.derivative();
  const auto roots = poly_roots(q, 1e-12);

  std::array<std::size_t, 4> pick{};
  for (int i = 0; i < 4; ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < roots.size(); ++j)
      if (std::abs(roots[j] - ref[i]) < std::abs(roots[best] - ref[i])) best = j;
    pick[i] = best;
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (pick[i] == pick[j]) {
        std::ostringstream os;
        os << "labels " << i << " and " << j << " match the same root at E=" << E
           << ", eps=" << eps;
        throw Error(ErrorCode::LabelAmbiguity, os.str());
      }

  std::array<cplx, 4> z{};
  for (int i = 0; i < 4; ++i) {
    const cplx seed = roots[pick[i]];
    z[i] = polish(q, dq, seed);
    // a polish that hops to a neighbouring root would silently swap labels
    if (std::abs(z[i] - seed) > 0.5 * kSeparationFloor) z[i] = seed;
  }

  TurningPoints tp{z[0], z[1], z[2], z[3], E, eps, 0.0};
  for (const cplx& p : z) tp.residual = std::max(tp.residual, std::abs(q(p)));

  if (tp.min_separation() < kSeparationFloor) {
    std::ostringstream os;
    os << "turning points closer than " << kSeparationFloor << " at E=" << E << ", eps=" << eps;
    throw Error(ErrorCode::LabelAmbiguity, os.str());
  }
  for (std::size_t j = 0; j < roots.size(); ++j) {
    if (std::find(pick.begin(), pick.end(), j) != pick.end()) continue;
    for (const cplx& p : z)
      if (std::abs(roots[j] - p) < kSeparationFloor)
        throw Error(ErrorCode::LabelAmbiguity, "unlabelled root collides with a turning point");
  }
  return tp;
}

namespace {

void advance(const PerturbedPotential& pot, const TurningPoints& from, const PathPoint& to,
             int depth, TurningPoints& out) {
  const double step = std::abs(to.E - from.E) + std::abs(to.eps - from.eps);
  if (step <= 0.1 * from.min_separation()) {
    out = turning_points(pot, to.E, to.eps, from.as_array());
    return;
  }
  if (depth >= 20) {
    std::ostringstream os;
    os << "continuation step " << step << " still exceeds 0.1 x separation "
       << from.min_separation() << " after 20 bisections near E=" << from.E;
    throw Error(ErrorCode::StepTooLarge, os.str());
  }
  const PathPoint mid{0.5 * (from.E + to.E), 0.5 * (from.eps + to.eps)};
  TurningPoints half;
  advance(pot, from, mid, depth + 1, half);
  advance(pot, half, to, depth + 1, out);
}

}  // namespace

std::vector<TurningPoints> continue_path(const PerturbedPotential& pot,
                                         const std::vector<PathPoint>& path,
                                         const TurningPoints& start) {
  std::vector<TurningPoints> out;
  out.reserve(path.size());
  TurningPoints current = start;
  for (const auto& p : path) {
    TurningPoints next;
    advance(pot, current, p, 0, next);
    out.push_back(next);
    current = next;
  }
  return out;
}

std::vector<TurningPoints> continue_path(const PerturbedPotential& pot,
                                         const std::vector<PathPoint>& path,
                                         const WellStructure& ref) {
  if (path.empty()) return {};
  const TurningPoints first = turning_points(pot, path.front().E, path.front().eps, ref);
  std::vector<TurningPoints> out{first};
  if (path.size() > 1) {
    auto rest = continue_path(pot, std::vector<PathPoint>(path.begin() + 1, path.end()), first);
    out.insert(out.end(), rest.begin(), rest.end());
  }
  return out;
}

}  // namespace ptwell
