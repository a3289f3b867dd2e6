#include <doctest.h>

#include <cmath>

#include "golden.hpp"
#include "ptwell/bifurcation.hpp"
#include "ptwell/error.hpp"
#include "ptwell/quantization.hpp"

using namespace ptwell;

namespace {

const ActionContext& ctx() {
  static const ActionContext c(PerturbedPotential::quartic(), -1.0, 128);
  return c;
}

}  // namespace

TEST_CASE("f is real on the real axis and obeys both conjugations") {
  const SpectralParams p(0.2, 0.0);
  for (double E : {-1.1, -1.0, -0.93}) CHECK(std::abs(eval_f(ctx(), cplx(E, 0), p).imag()) < 1e-10);

  for (double re : {-1.04, -1.0, -0.96})
    for (double im : {-0.02, 0.01})
      for (double eps : {-2e-3, 1e-3}) {
        const cplx E(re, im);
        const cplx f = eval_f(ctx(), E, SpectralParams(0.2, eps));
        CHECK(std::abs(eval_f(ctx(), std::conj(E), SpectralParams(0.2, -eps)) - std::conj(f)) < 1e-10);
        CHECK(std::abs(eval_f(ctx(), std::conj(E), SpectralParams(0.2, eps)) - std::conj(f)) < 1e-10);
      }
  CHECK_THROWS_AS(SpectralParams(0.0), Error);
  CHECK_THROWS_AS(SpectralParams(1.5), Error);
}

TEST_CASE("tunnel factor flushes to zero") {
  CHECK(tunnel_factor(cplx(1.0, 0), 0.5) == std::exp(cplx(-4.0, 0)));
  CHECK(tunnel_factor(cplx(10.0, 0), 0.01) == cplx(0));
}

TEST_CASE("Bohr-Sommerfeld levels satisfy the quantization rule") {
  const SpectralParams p(0.05);
  const Rectangle window(cplx(-0.8, 0), 0.4, 0.1);
  const auto left = bs_levels(ctx(), p, window, Side::Left);
  const auto right = bs_levels(ctx(), p, window, Side::Right);
  REQUIRE(left.size() >= 5);
  REQUIRE(left.size() == right.size());
  for (std::size_t j = 0; j < left.size(); ++j) {
    CHECK(left[j].residual < 1e-10);
    CHECK(std::abs(left[j].E - right[j].E) < 1e-10);
    const auto s = action_set(ctx(), left[j].E, 0.0);
    CHECK(std::abs(2.0 * s.I_l - (2 * left[j].k + 1) * kPi * p.h) < 1e-9);
    if (j > 0) CHECK(left[j].k == left[j - 1].k + 1);
  }
}

TEST_CASE("zeros of f near E = -1 at h = 0.2 are a certified doublet") {
  const SpectralParams p(0.2);
  const auto res = find_f_roots(ctx(), p, Rectangle(cplx(-1.0, 0), 0.1, 0.05));
  CHECK(res.certified);
  CHECK(res.winding == 2);
  CHECK(res.counted == 2);
  REQUIRE(res.roots.size() == 2);
  for (const auto& r : res.roots) {
    CHECK(std::abs(r.E.imag()) < 1e-10);
    CHECK(std::abs(r.E.real() + 1.0530900) < 1e-6);
  }
  CHECK_NOTHROW(require_certified(res));

  FRootSearch bad = res;
  bad.certified = false;
  CHECK_THROWS_AS(require_certified(bad), Error);
}

TEST_CASE("localization radius") {
  const cplx J(2.5, 0);
  const double h = 0.2, C = 10.0;
  const double t = std::exp(-J.real() / h);
  CHECK(localization_radius(cplx(-1), 0.0, h, J, C) == doctest::Approx(C * h * t));
  CHECK(localization_radius(cplx(-1), 1e-3, h, J, C) == doctest::Approx(C * h * (h / 1e-3) * t * t));
  // tiny eps saturates the min at 1
  CHECK(localization_radius(cplx(-1), 1e-9, h, J, C) == doctest::Approx(C * h * t));
  CHECK(localization_radius(cplx(-1), -1e-9, h, J, C) == doctest::Approx(C * h * t));
}

TEST_CASE("gamma slope") {
  CHECK(gamma_slope(ctx(), -1.0) == doctest::Approx(golden::gamma_m1).epsilon(1e-12));
}

TEST_CASE("window coordinates round trip") {
  const cplx E(-1.03, 0.002);
  const auto w = to_window(ctx(), E, 3e-4, -1.0, 0.2);
  CHECK(w.eps_tilde == doctest::Approx(3e-4 / 0.2));
  const auto [E2, eps2] = from_window(w);
  CHECK(std::abs(E2 - E) < 1e-15);
  CHECK(eps2 == doctest::Approx(3e-4));
}

TEST_CASE("bifurcation model at h = 0.2") {
  const auto m = build_model(ctx(), -1.0, 0.2);
  CHECK(m.E_c == doctest::Approx(-1.0530900).epsilon(1e-7));
  const auto s = action_set(ctx(), cplx(m.E_c, 0), 0.0);
  CHECK(m.J_val == doctest::Approx(s.J.real()).epsilon(1e-14));
  CHECK(m.eps_tilde_c == doctest::Approx(std::exp(-m.J_val / m.h) / (2 * m.dIde_abs)));
  CHECK(m.eps_c == doctest::Approx(m.h * m.eps_tilde_c));

  CHECK(classify(0.5 * m.eps_tilde_c, m) == PairKind::RealPair);
  CHECK(classify(m.eps_tilde_c, m) == PairKind::DoubleRoot);
  CHECK(classify(2.0 * m.eps_tilde_c, m) == PairKind::ConjugatePair);

  const auto [a, b] = predicted_pair(2.0 * m.eps_tilde_c, m);
  CHECK(a.imag() > 0.0);
  CHECK(std::abs(b - std::conj(a)) < 1e-15);
  const auto [c, d] = predicted_pair(0.5 * m.eps_tilde_c, m);
  CHECK(c.real() > d.real());
  CHECK(c.imag() == 0.0);

  const ActionContext flat(PerturbedPotential({0, 0, -0.5, 0, 0.05}, {0, 0, 0, 0}, false), -1.0);
  CHECK_THROWS_AS(build_model(flat, -1.0, 0.2), Error);
}
