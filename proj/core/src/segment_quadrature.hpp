#pragma once

// Shared machinery for integrals of (E - V_eps)^(+-1/2) between two simple
// roots a, b of q = V_eps - E. On the segment t = m + d s, s in (-1,1),
// with m = (a+b)/2 and d = (b-a)/2,
//
//   -q(t) = (t - a)(b - t) G(t) = d^2 (1 - s^2) G(t),
//
// so the square-root endpoint behaviour is absorbed by Chebyshev weights and
// only sqrt(G), an analytic nonvanishing function near the segment, remains.

#include <vector>

#include "ptwell/numerics.hpp"

namespace ptwell::detail {

struct SegmentSamples {
  cplx a, b, mid, half;           // endpoints, midpoint, d = (b - a)/2
  std::vector<cplx> t;            // nodes on the segment
  std::vector<cplx> sqrt_g;       // continuous branch of sqrt(sign * G)
  cplx sqrt_g_mid;
};

/// sign = +1 integrates (E - V)^(1/2)-type quantities, sign = -1 the
/// (V - E)^(1/2) ones. The branch of sqrt(sign*G) at the midpoint is chosen
/// so that d * sqrt(sign*G(mid)) is closest to anchor; the remaining nodes are
/// continued outward from the midpoint. Throws BranchJump when sign*G turns by
/// more than pi/2 between adjacent nodes.
SegmentSamples sample_segment(const ComplexPolynomial& q, cplx a, cplx b, int sign,
                              const QuadratureRule& rule, cplx anchor);

/// d * sqrt(sign * G(mid)) on the principal branch, used to seed anchors.
cplx midpoint_value(const ComplexPolynomial& q, cplx a, cplx b, int sign);

}  // namespace ptwell::detail
