#include <doctest.h>

#include <cmath>

#include "golden.hpp"
#include "ptwell/error.hpp"
#include "ptwell/potential.hpp"
#include "ptwell/turning.hpp"

using namespace ptwell;

TEST_CASE("quartic potential values") {
  const auto pot = PerturbedPotential::quartic();
  CHECK(pot.degree() == 4);
  CHECK(pt_check(pot));
  CHECK(pot.V0(2.0) == doctest::Approx(0.8 - 2.0));
  CHECK(pot.dV0(1.0) == doctest::Approx(0.2 - 1.0));
  const cplx z(0.3, -0.7);
  const double eps = 0.02;
  const cplx expect = 0.05 * z * z * z * z - 0.5 * z * z + cplx(0, eps) * z;
  CHECK(std::abs(eval_V(pot, z, eps) - expect) < 1e-15);
  CHECK(std::abs(eval_dV(pot, z, eps) - (0.2 * z * z * z - z + cplx(0, eps))) < 1e-15);
  CHECK(std::abs(pot.shifted(cplx(-1, 0.1), eps)(z) - (expect - cplx(-1, 0.1))) < 1e-15);
}

TEST_CASE("invalid potentials are rejected") {
  CHECK_THROWS_AS(PerturbedPotential({0, 0, 1}, {0, 1}, false), Error);
  CHECK_THROWS_AS(PerturbedPotential({0, 0, -0.5, 0, -0.05}, {0, 1}, false), Error);
  CHECK_THROWS_AS(PerturbedPotential({0, 0, -0.5, 0, 0.05}, {0, 0, 0, 0, 1}, false), Error);
  // odd V0 term breaks PT when enforced, and is fine otherwise
  CHECK_THROWS_AS(PerturbedPotential({0, 0.1, -0.5, 0, 0.05}, {0, 1}, true), Error);
  CHECK_FALSE(pt_check(PerturbedPotential({0, 0.1, -0.5, 0, 0.05}, {0, 1}, false)));
  CHECK_THROWS_AS(PerturbedPotential({0, 0, -0.5, 0, 0.05}, {1}, true), Error);
}

TEST_CASE("well structure at E0 = -1") {
  const auto w = classify_wells(PerturbedPotential::quartic(), -1.0);
  CHECK(w.alpha_l == doctest::Approx(-golden::alpha_m1).epsilon(1e-13));
  CHECK(w.beta_l == doctest::Approx(-golden::beta_m1).epsilon(1e-13));
  CHECK(w.beta_r == doctest::Approx(golden::beta_m1).epsilon(1e-13));
  CHECK(w.alpha_r == doctest::Approx(golden::alpha_m1).epsilon(1e-13));
  CHECK(w.barrier_top == doctest::Approx(0.0));
  CHECK(w.well_min_left == doctest::Approx(-1.25));
  CHECK(w.well_x_right == doctest::Approx(std::sqrt(5.0)));

  CHECK_THROWS_AS(classify_wells(PerturbedPotential::quartic(), 0.5), Error);
  CHECK_THROWS_AS(classify_wells(PerturbedPotential::quartic(), -1.3), Error);
}

TEST_CASE("non-degeneracy integral of W") {
  const auto pot = PerturbedPotential::quartic();
  const auto w = classify_wells(pot, -1.0);
  CHECK(a7_check(pot, w) == doctest::Approx(golden::a7_x).epsilon(1e-12));
  const PerturbedPotential cubic({0, 0, -0.5, 0, 0.05}, {0, 0, 0, 1}, true);
  CHECK(a7_check(cubic, w) == doctest::Approx(golden::a7_x3).epsilon(1e-12));
  const PerturbedPotential flat({0, 0, -0.5, 0, 0.05}, {1}, false);
  CHECK(a7_check(flat, w) == doctest::Approx(golden::a7_one).epsilon(1e-12));
}

TEST_CASE("turning points are labelled and obey the symmetries") {
  const auto pot = PerturbedPotential::quartic();
  const auto w = classify_wells(pot, -1.0);
  const auto tp0 = turning_points(pot, cplx(-1, 0), 0.0, w);
  CHECK(std::abs(tp0.beta_r - golden::beta_m1) < 1e-12);
  CHECK(std::abs(tp0.alpha_l + golden::alpha_m1) < 1e-12);
  CHECK(tp0.residual < 1e-12);

  const cplx E(-1.02, 0.01);
  const double eps = 0.003;
  const auto a = turning_points(pot, E, eps, w);
  const auto b = turning_points(pot, std::conj(E), -eps, w);
  // complex conjugation keeps the labels
  CHECK(std::abs(b.beta_l - std::conj(a.beta_l)) < 1e-12);
  CHECK(std::abs(b.alpha_r - std::conj(a.alpha_r)) < 1e-12);
  // PT: z -> -conj z swaps the wells
  const auto c = turning_points(pot, std::conj(E), eps, w);
  CHECK(std::abs(c.beta_r + std::conj(a.beta_l)) < 1e-12);
  CHECK(std::abs(c.alpha_l + std::conj(a.alpha_r)) < 1e-12);
}

TEST_CASE("continue_path transports labels") {
  const auto pot = PerturbedPotential::quartic();
  const auto w = classify_wells(pot, -1.0);
  std::vector<PathPoint> path;
  for (int j = 0; j <= 10; ++j) path.push_back({cplx(-1.0, 0.02 * j), 0.01 * j});
  const auto res = continue_path(pot, path, w);
  REQUIRE(res.size() == path.size());
  const auto direct = turning_points(pot, path.back().E, path.back().eps, w);
  CHECK(std::abs(res.back().beta_l - direct.beta_l) < 1e-10);
  CHECK(std::abs(res.back().alpha_r - direct.alpha_r) < 1e-10);
}
