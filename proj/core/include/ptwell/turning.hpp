#pragma once

#include <array>
#include <utility>
#include <vector>

#include "ptwell/numerics.hpp"
#include "ptwell/potential.hpp"

namespace ptwell {

inline constexpr double kSeparationFloor = 1e-6;

/// The four labelled complex roots of V_eps(z) = E.
struct TurningPoints {
  cplx alpha_l, beta_l, beta_r, alpha_r;
  cplx E;
  double eps = 0.0;
  double residual = 0.0;  // max |V_eps(z) - E| over the four points

  std::array<cplx, 4> as_array() const { return {alpha_l, beta_l, beta_r, alpha_r}; }
  double min_separation() const;
};

/// Roots of V_eps - E labelled by nearest-neighbour matching against the
/// reference quadruple and polished by Newton. Throws LabelAmbiguity when the
/// matching is not a bijection or two points come closer than the separation
/// floor.
TurningPoints turning_points(const PerturbedPotential& pot, cplx E, double eps,
                             const WellStructure& ref);
TurningPoints turning_points(const PerturbedPotential& pot, cplx E, double eps,
                             const std::array<cplx, 4>& ref);

struct PathPoint {
  cplx E;
  double eps;
};

/// Transports labels along a path of (E, eps). Steps larger than 0.1 times
/// the current minimum turning-point separation are bisected, at most 20
/// times, before StepTooLarge is raised.
std::vector<TurningPoints> continue_path(const PerturbedPotential& pot,
                                         const std::vector<PathPoint>& path,
                                         const WellStructure& ref);

/// Same, starting from an already labelled configuration.
std::vector<TurningPoints> continue_path(const PerturbedPotential& pot,
                                         const std::vector<PathPoint>& path,
                                         const TurningPoints& start);

}  // namespace ptwell
