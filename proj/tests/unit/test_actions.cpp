#include <doctest.h>

#include <cmath>

#include "golden.hpp"
#include "ptwell/actions.hpp"
#include "ptwell/error.hpp"
#include "ptwell/quantization.hpp"

using namespace ptwell;

namespace {

const ActionContext& ctx() {
  static const ActionContext c(PerturbedPotential::quartic(), -1.0, 128);
  return c;
}

}  // namespace

TEST_CASE("actions on the real axis match the golden table") {
  for (const auto& row : golden::table) {
    const auto s = action_set(ctx(), cplx(row.E, 0), 0.0);
    CAPTURE(row.E);
    CHECK(std::abs(s.I_l - row.I) < 1e-13);
    CHECK(std::abs(s.I_r - row.I) < 1e-13);
    CHECK(std::abs(s.J - row.J) < 1e-13);
    CHECK(std::abs(s.dIl_dE - row.dIdE) < 1e-12);
  }
  const auto s = action_set(ctx(), cplx(-1, 0), 0.0);
  CHECK(std::abs(s.dJ_dE - golden::dJdE_m1) < 1e-12);
  CHECK(std::abs(cplx(0, 1) * s.dIl_de - golden::i_dIde_m1) < 1e-12);
  CHECK(std::abs(cplx(0, 1) * s.dIr_de + golden::i_dIde_m1) < 1e-12);
  CHECK(gamma_slope(ctx(), -1.0) == doctest::Approx(golden::gamma_m1).epsilon(1e-12));
}

TEST_CASE("node doubling") {
  const ActionContext fine(PerturbedPotential::quartic(), -1.0, 256);
  const cplx E(-0.97, 0.03);
  const auto a = action_set(ctx(), E, 0.01);
  const auto b = action_set(fine, E, 0.01);
  CHECK(std::abs(a.I_l - b.I_l) <= 1e-12 * std::abs(b.I_l));
  CHECK(std::abs(a.J - b.J) <= 1e-12 * std::abs(b.J));
  CHECK(std::abs(a.dIr_de - b.dIr_de) <= 1e-12 * std::abs(b.dIr_de));
  CHECK_THROWS_AS(ActionContext(PerturbedPotential::quartic(), -1.0, 8), Error);
}

TEST_CASE("derivatives agree with central differences") {
  const cplx E(-1.01, 0.02);
  const double eps = 0.004, d = 1e-5;
  const auto s = action_set(ctx(), E, eps);
  const auto ep = action_set(ctx(), E + d, eps), em = action_set(ctx(), E - d, eps);
  const auto xp = action_set(ctx(), E, eps + d), xm = action_set(ctx(), E, eps - d);
  const cplx fd_E = (ep.I_l - em.I_l) / (2 * d);
  const cplx fd_eps = (xp.I_r - xm.I_r) / (2 * d);
  const cplx fd_J = (ep.J - em.J) / (2 * d);
  CHECK(std::abs(fd_E - s.dIl_dE) <= 1e-7 * std::abs(s.dIl_dE));
  CHECK(std::abs(fd_eps - s.dIr_de) <= 1e-7 * std::abs(s.dIr_de));
  CHECK(std::abs(fd_J - s.dJ_dE) <= 1e-7 * std::abs(s.dJ_dE));
}

TEST_CASE("conjugation and PT identities") {
  const cplx E(-1.0, 0.05);
  const double eps = 1e-3;
  const auto a = action_set(ctx(), E, eps);
  const auto star = action_set(ctx(), std::conj(E), -eps);
  CHECK(std::abs(std::conj(star.I_l) - a.I_l) < 1e-10);
  CHECK(std::abs(std::conj(star.I_r) - a.I_r) < 1e-10);
  CHECK(std::abs(std::conj(star.J) - a.J) < 1e-10);
  const auto dag = action_set(ctx(), std::conj(E), eps);
  CHECK(std::abs(std::conj(dag.I_l) - a.I_r) < 1e-10);
  CHECK(std::abs(std::conj(dag.J) - a.J) < 1e-10);
  CHECK(std::abs(std::conj(dag.dIl_de) - a.dIr_de) < 1e-10);
}

TEST_CASE("anchored branches are continuous along a vertical path") {
  cplx prev = action_set(ctx(), cplx(-1, 0), 0.0).I_l;
  for (int j = 1; j <= 20; ++j) {
    const cplx cur = action_set(ctx(), cplx(-1, 0.01 * j), 0.0).I_l;
    CHECK(std::abs(cur - prev) < 0.05);
    prev = cur;
  }
}
