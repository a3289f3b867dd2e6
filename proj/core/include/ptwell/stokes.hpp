#pragma once

#include <array>
#include <string>
#include <vector>

#include "ptwell/numerics.hpp"
#include "ptwell/potential.hpp"

namespace ptwell {

// Convention: with phi(z) = integral of (V_eps - E)^(1/2) from the turning
// point, Stokes curves are level sets of Re phi and anti-Stokes curves level
// sets of Im phi.
enum class CurveKind { Stokes, AntiStokes };

std::string to_string(CurveKind kind);

struct StokesCurve {
  int origin = 0;  // index of the turning point among the roots of V_eps - E
  cplx origin_point;
  CurveKind kind = CurveKind::Stokes;
  int k = 0;  // branch index in {0, 1, 2}, by increasing seed angle
  std::vector<cplx> points;
  double phi_drift = 0.0;
  double arc_length() const;
};

/// Angles in [0, 2 pi), increasing, of the three curves of the given kind
/// leaving the simple root tp of q, located on a circle of radius r0.
/// Throws SeedCountMismatch unless the circle shows three curves of each kind.
std::array<double, 3> seed_angles(const ComplexPolynomial& q, cplx tp, CurveKind kind, double r0);

struct TraceOptions {
  double step = 1e-2;
  double max_arc = 20.0;
};

/// Unit-speed RK4 trace of dz/ds = u/|u|, u = i/sqrt(q) (Stokes) or 1/sqrt(q)
/// (anti-Stokes), from tp + 10 step e^{i seed_angle}. Stops on leaving the
/// domain, at max_arc, or within 5 step of another root of q. Throws
/// BranchAmbiguity when |sqrt(q)| drops below 5e-13.
StokesCurve trace_stokes(const ComplexPolynomial& q, cplx tp, CurveKind kind, double seed_angle,
                         const TraceOptions& opt, const Rectangle& domain);

StokesCurve trace_stokes(const PerturbedPotential& pot, cplx E, double eps, cplx tp,
                         CurveKind kind, double seed_angle, const TraceOptions& opt,
                         const Rectangle& domain);

/// Fixed-step integration from z0, starting on the branch of sqrt(q) closest
/// to sqrt0. Returns n_steps + 1 points. Exposed for convergence checks.
std::vector<cplx> integrate_curve(const ComplexPolynomial& q, cplx z0, cplx sqrt0,
                                  CurveKind kind, double step, int n_steps);

/// All 3 + 3 curves at every root of V_eps - E, roots sorted by (Re, Im).
std::vector<StokesCurve> stokes_family(const PerturbedPotential& pot, cplx E, double eps,
                                       const TraceOptions& opt, const Rectangle& domain);

/// Symmetric Hausdorff distance between two point clouds.
double hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b);

}  // namespace ptwell
