#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ptwell/error.hpp"
#include "ptwell/fdsolve.hpp"

using namespace ptwell;

namespace {

// Dirichlet eigenvalues of -h^2 D^2 on the grid: 4 h^2/d^2 sin^2(k pi / 2N)
double laplace_eig(const Grid& g, double h, int k) {
  const double s = std::sin(k * kPi / (2.0 * g.N));
  return 4.0 * h * h / (g.delta * g.delta) * s * s;
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid(1.0, 5), Error);
  CHECK_THROWS_AS(Grid(1.0, 2), Error);
  CHECK_THROWS_AS(Grid(-1.0, 10), Error);
  const Grid g(2.0, 8);
  CHECK(g.delta == doctest::Approx(0.5));
  CHECK(g.x(0) == -2.0);
  CHECK(g.x(8) == doctest::Approx(2.0));
}

TEST_CASE("operator assembly and apply") {
  const Grid g(4.0, 40);
  const auto op = assemble(PerturbedPotential::quartic(), g, 0.1, 0.01);
  REQUIRE(op.size() == 39);
  const double x = g.x(7);
  CHECK(std::abs(op.diag[6] - (cplx(2 * 0.01 / (g.delta * g.delta) + 0.05 * x * x * x * x - 0.5 * x * x, 0.01 * x))) < 1e-13);
  CHECK(op.off == doctest::Approx(-0.01 / (g.delta * g.delta)));

  std::vector<cplx> v(op.size(), cplx(0)), y(op.size());
  v[3] = 1.0;
  op.apply(v, y);
  CHECK(y[2] == cplx(op.off));
  CHECK(y[3] == op.diag[3]);
  CHECK(y[4] == cplx(op.off));
  CHECK(y[5] == cplx(0));
}

TEST_CASE("shifted LU solves") {
  const Grid g(3.0, 200);
  const auto op = assemble(PerturbedPotential::quartic(), g, 0.05, 0.02);
  const cplx sigma(-0.7, 0.01);
  std::vector<cplx> b(op.size());
  for (std::size_t j = 0; j < b.size(); ++j) b[j] = cplx(std::sin(0.1 * j), std::cos(0.3 * j));
  const auto x = lu_solve(op, sigma, b);
  std::vector<cplx> r(op.size());
  op.apply(x, r);
  double err = 0.0, nb = 0.0;
  for (std::size_t j = 0; j < b.size(); ++j) {
    err = std::max(err, std::abs(r[j] - sigma * x[j] - b[j]));
    nb = std::max(nb, std::abs(b[j]));
  }
  CHECK(err < 1e-10 * nb);
}

TEST_CASE("a shift on an eigenvalue is singular") {
  const Grid g(1.0, 4);
  const auto op = assemble([](double) { return cplx(0); }, g, 1.0);
  CHECK_THROWS_AS(ShiftedLU(op, cplx(laplace_eig(g, 1.0, 1))), Error);
}

TEST_CASE("discrete Laplacian spectrum") {
  const Grid g(1.0, 400);
  const double h = 0.1;
  const auto op = assemble([](double) { return cplx(0); }, g, h);
  const auto res = eigs_near(op, cplx(0.5, 0), {8, 1e-12, 20});
  REQUIRE(res.pairs.size() == 8);
  for (const auto& p : res.pairs) {
    double best = 1e9;
    for (int k = 1; k < g.N; ++k) best = std::min(best, std::abs(p.lambda - laplace_eig(g, h, k)));
    CHECK(best < 1e-10);
    CHECK(p.residual < 1e-9);
  }
}

TEST_CASE("quartic doublets at h = 0.01") {
  const Grid g(4.0, 4000);
  const auto op = assemble(PerturbedPotential::quartic(), g, 0.01, 0.0);
  const auto res = eigs_near(op, cplx(-1.23, 0), {4, 1e-10, 20});
  REQUIRE(res.pairs.size() == 4);
  std::vector<double> re;
  for (const auto& p : res.pairs) {
    CHECK(std::abs(p.lambda.imag()) <= 1e-9 * res.opnorm);
    re.push_back(p.lambda.real());
  }
  std::sort(re.begin(), re.end());
  // two doublets: -1.25 + h and -1.25 + 3h to harmonic order
  CHECK(std::abs(re[0] - re[1]) < 1e-9);
  CHECK(std::abs(re[2] - re[3]) < 1e-9);
  CHECK(std::abs(re[0] + 1.24) < 2e-3);
  CHECK(std::abs(re[2] + 1.22) < 2e-3);
}

TEST_CASE("eigs_window returns eigenvalues sorted and inside") {
  const Grid g(6.0, 1000);
  const auto op = assemble(PerturbedPotential::quartic(), g, 0.1, 0.0);
  const Rectangle w(cplx(-1.0, 0), 0.2, 0.05);
  const auto res = eigs_window(op, w);
  CHECK_FALSE(res.incomplete);
  REQUIRE(res.pairs.size() >= 2);
  for (std::size_t j = 0; j < res.pairs.size(); ++j) {
    CHECK(w.contains(res.pairs[j].lambda));
    if (j > 0) CHECK(res.pairs[j - 1].lambda.real() <= res.pairs[j].lambda.real());
  }
  CHECK(res.pairs.size() % 2 == 0);
}

TEST_CASE("grid self test") {
  const auto st = grid_selftest(PerturbedPotential::quartic(), 0.1, 0.0, Rectangle(cplx(-1.0, 0), 0.2, 0.05),
                                Grid(6.0, 1000));
  CHECK(st.N_fine == 2 * st.N_coarse);
  CHECK(st.coarse.size() == st.fine.size());
  CHECK(st.max_drift < 1e-4);
}
