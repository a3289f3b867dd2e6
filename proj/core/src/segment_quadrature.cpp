#include "segment_quadrature.hpp"

#include <cmath>
#include <sstream>

#include "ptwell/error.hpp"

namespace ptwell::detail {

namespace {

struct GEvaluator {
  const ComplexPolynomial& q;
  ComplexPolynomial deflated;
  cplx a, b;
  double near;

  GEvaluator(const ComplexPolynomial& poly, cplx a_, cplx b_)
      : q(poly), deflated(poly.deflate(a_).deflate(b_)), a(a_), b(b_),
        near(1e-3 * std::abs(b_ - a_)) {}

  // q(t) / ((t - a)(t - b))
  cplx operator()(cplx t) const {
    if (std::abs(t - a) < near || std::abs(t - b) < near) return deflated(t);
    return q(t) / ((t - a) * (t - b));
  }
};

cplx closest_root(cplx g, cplx reference) {
  const cplx r = std::sqrt(g);
  return std::abs(r - reference) <= std::abs(-r - reference) ? r : -r;
}

}  // namespace

cplx midpoint_value(const ComplexPolynomial& q, cplx a, cplx b, int sign) {
  const GEvaluator G(q, a, b);
  const cplx mid = 0.5 * (a + b);
  return 0.5 * (b - a) * std::sqrt(static_cast<double>(sign) * G(mid));
}

SegmentSamples sample_segment(const ComplexPolynomial& q, cplx a, cplx b, int sign,
                              const QuadratureRule& rule, cplx anchor) {
  const GEvaluator G(q, a, b);
  SegmentSamples out;
  out.a = a;
  out.b = b;
  out.mid = 0.5 * (a + b);
  out.half = 0.5 * (b - a);
  const double sg = static_cast<double>(sign);

  const cplx g_mid = sg * G(out.mid);
  cplx root = std::sqrt(g_mid);
  if (std::abs(out.half * root - anchor) > std::abs(-out.half * root - anchor)) root = -root;
  out.sqrt_g_mid = root;

  const std::size_t n = rule.size();
  out.t.resize(n);
  out.sqrt_g.resize(n);
  std::vector<cplx> g(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.t[j] = out.mid + out.half * rule.nodes[j];
    g[j] = sg * G(out.t[j]);
  }

  auto continue_from = [&](std::size_t j, cplx prev_g, cplx prev_root) {
    if (std::abs(std::arg(g[j] / prev_g)) > kPi / 2.0) {
      std::ostringstream os;
      os << "sqrt(G) turns by " << std::arg(g[j] / prev_g) / 2.0 << " rad between nodes near t="
         << out.t[j];
      throw Error(ErrorCode::BranchJump, os.str());
    }
    out.sqrt_g[j] = closest_root(g[j], prev_root);
  };

  // first node with s >= 0
  std::size_t right = 0;
  while (right < n && rule.nodes[right] < 0.0) ++right;
  cplx prev_g = g_mid, prev_root = root;
  for (std::size_t j = right; j < n; ++j) {
    continue_from(j, prev_g, prev_root);
    prev_g = g[j];
    prev_root = out.sqrt_g[j];
  }
  prev_g = g_mid;
  prev_root = root;
  for (std::size_t j = right; j-- > 0;) {
    continue_from(j, prev_g, prev_root);
    prev_g = g[j];
    prev_root = out.sqrt_g[j];
  }
  return out;
}

}  // namespace ptwell::detail
