#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "golden.hpp"
#include "ptwell/error.hpp"
#include "ptwell/numerics.hpp"

using namespace ptwell;

namespace {

bool has_root(const std::vector<cplx>& roots, cplx z, double tol) {
  return std::any_of(roots.begin(), roots.end(), [&](cplx r) { return std::abs(r - z) < tol; });
}

}  // namespace

TEST_CASE("polynomial basics") {
  const ComplexPolynomial p({cplx(1), cplx(2), cplx(3), cplx(0), cplx(0)});
  CHECK(p.degree() == 2);
  CHECK(std::abs(p(cplx(2, 0)) - cplx(17, 0)) < 1e-14);
  CHECK(p.derivative().degree() == 1);
  CHECK(std::abs(p.derivative()(cplx(1, 0)) - cplx(8, 0)) < 1e-14);
  CHECK(ComplexPolynomial().degree() == -1);

  const cplx r[] = {cplx(1, 1), cplx(-2, 0), cplx(0, 3)};
  const auto q = ComplexPolynomial::from_roots(r);
  CHECK(q.degree() == 3);
  for (cplx z : r) CHECK(std::abs(q(z)) < 1e-13);
  const auto d = q.deflate(r[0]);
  CHECK(d.degree() == 2);
  CHECK(std::abs(d(r[1])) < 1e-13);
}

TEST_CASE("quartic roots at E = -1") {
  const double c[] = {1.0, 0.0, -0.5, 0.0, 0.05};
  const auto p = ComplexPolynomial::from_real(c);
  const auto roots = poly_roots(p);
  REQUIRE(roots.size() == 4);
  for (double s : {-1.0, 1.0}) {
    CHECK(has_root(roots, s * golden::beta_m1, 1e-12));
    CHECK(has_root(roots, s * golden::alpha_m1, 1e-12));
  }
  for (cplx z : roots) CHECK(std::abs(p(z)) <= 1e-12 * p.scale_at(z));
}

TEST_CASE("poly_roots on a double root and degree zero") {
  const cplx r[] = {cplx(0.5, 0), cplx(0.5, 0), cplx(-1, 2)};
  const auto p = ComplexPolynomial::from_roots(r);
  const auto roots = poly_roots(p);
  REQUIRE(roots.size() == 3);
  CHECK(std::count_if(roots.begin(), roots.end(), [](cplx z) { return std::abs(z - 0.5) < 1e-6; }) == 2);
  CHECK_THROWS_AS(poly_roots(ComplexPolynomial({cplx(3)})), Error);
}

TEST_CASE("poly_roots residuals on random polynomials") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    const int deg = 1 + trial % 8;
    std::vector<cplx> c(deg + 1);
    for (auto& x : c) x = cplx(g(rng), g(rng));
    const ComplexPolynomial p(c);
    const auto roots = poly_roots(p);
    REQUIRE(static_cast<int>(roots.size()) == deg);
    for (cplx z : roots) CHECK(std::abs(p(z)) <= 1e-12 * p.scale_at(z));
  }
}

TEST_CASE("newton_refine") {
  const AnalyticFunction fn{[](cplx z) { return z * z + 1.0; }, [](cplx z) { return 2.0 * z; }};
  const cplx z = newton_refine(fn, cplx(0.3, 0.8), 1e-14);
  CHECK(std::abs(z - cplx(0, 1)) < 1e-12);

  const AnalyticFunction flat{[](cplx) { return cplx(1); }, [](cplx) { return cplx(0); }};
  CHECK_THROWS_AS(newton_refine(flat, cplx(0), 1e-12), Error);
}

TEST_CASE("chebyshev rules integrate polynomials exactly") {
  for (int n : {1, 4, 16, 64}) {
    const auto first = chebyshev_rule(ChebyshevKind::First, n);
    const auto second = chebyshev_rule(ChebyshevKind::Second, n);
    REQUIRE(first.size() == static_cast<std::size_t>(n));
    CHECK(std::is_sorted(first.nodes.begin(), first.nodes.end()));
    double w1 = 0, w2 = 0, s2 = 0;
    for (std::size_t j = 0; j < first.size(); ++j) {
      w1 += first.weights[j];
      w2 += second.weights[j];
      s2 += second.weights[j] * second.nodes[j] * second.nodes[j];
    }
    CHECK(w1 == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(w2 == doctest::Approx(kPi / 2).epsilon(1e-14));
    if (n >= 2) CHECK(s2 == doctest::Approx(kPi / 8).epsilon(1e-14));
  }
  CHECK_THROWS_AS(chebyshev_rule(ChebyshevKind::First, 0), Error);
}

TEST_CASE("rectangle") {
  const Rectangle r(cplx(1, 1), 2, 0.5);
  CHECK(r.contains(cplx(2.9, 1.4)));
  CHECK_FALSE(r.contains(cplx(3.1, 1.0)));
  CHECK(r.re_min() == -1.0);
  CHECK(r.inflated(2.0).half_height == 1.0);
  CHECK_THROWS_AS(Rectangle(cplx(0), -1, 1), Error);
}

TEST_CASE("winding_count counts zeros with multiplicity") {
  const cplx r[] = {cplx(0.1, 0.1), cplx(0.1, 0.1), cplx(-0.4, 0.2), cplx(3, 0)};
  const auto p = ComplexPolynomial::from_roots(r);
  const Rectangle box(cplx(0), 1, 1);
  CHECK(winding_count([&](cplx z) { return p(z); }, box) == 3);
  CHECK(winding_count([](cplx z) { return std::exp(z); }, box) == 0);
}
