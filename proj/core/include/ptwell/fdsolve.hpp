#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ptwell/numerics.hpp"
#include "ptwell/potential.hpp"

namespace ptwell {

/// Uniform grid on [-L, L] with N subintervals; interior nodes x_1..x_{N-1}.
struct Grid {
  double L = 0.0;
  int N = 0;
  double delta = 0.0;
  /// Throws InvalidGrid unless L > 0 and N is even and at least 4.
  Grid(double L_, int N_);
  double x(int j) const noexcept { return -L + j * delta; }
};

/// -h^2 d^2/dx^2 + V_eps with Dirichlet conditions, 3-point stencil.
struct TridiagonalOperator {
  Grid grid;
  std::vector<cplx> diag;  // N - 1 entries
  double off = 0.0;
  double h = 0.0;
  double eps = 0.0;

  std::size_t size() const noexcept { return diag.size(); }
  /// max |diag| + 2 |off|
  double opnorm() const noexcept;
  void apply(std::span<const cplx> x, std::span<cplx> y) const;
};

TridiagonalOperator assemble(const PerturbedPotential& pot, const Grid& grid, double h, double eps);
/// Same with an arbitrary potential function, e.g. V = 0.
TridiagonalOperator assemble(const std::function<cplx(double)>& V, const Grid& grid, double h);

/// LU factorization of A - sigma with partial pivoting; the U factor carries
/// two superdiagonals.
class ShiftedLU {
public:
  /// Throws SingularShift when a pivot falls below 64 eps_mach opnorm.
  ShiftedLU(const TridiagonalOperator& op, cplx sigma);
  std::vector<cplx> solve(std::span<const cplx> rhs) const;
  void solve_in_place(std::span<cplx> x) const;
  cplx sigma() const noexcept { return sigma_; }
  double min_pivot() const noexcept { return min_pivot_; }

private:
  cplx sigma_;
  std::vector<cplx> dl_, d_, du_, du2_;
  std::vector<unsigned char> swapped_;
  double min_pivot_ = 0.0;
};

std::vector<cplx> lu_solve(const TridiagonalOperator& op, cplx sigma, std::span<const cplx> rhs);

struct Eigenpair {
  cplx lambda;
  double residual;  // ||A v - lambda v|| / ||v||
};

struct EigenpairSet {
  std::vector<Eigenpair> pairs;
  cplx target;
  double opnorm = 0.0;
  bool converged = true;   // false: fewer than m pairs accepted (NotConverged)
  bool incomplete = false; // eigs_window: shifted rerun disagreed
};

struct ArnoldiOptions {
  int m = 6;
  double tol = 1e-10;
  int max_restart = 20;
};

/// The m eigenvalues nearest sigma by shift-invert Arnoldi with locking.
/// Restarts continue until a pass contributes nothing closer than the m-th
/// accepted value, so numerically degenerate pairs are both returned.
EigenpairSet eigs_near(const TridiagonalOperator& op, cplx sigma, const ArnoldiOptions& opt = {});

struct WindowOptions {
  double tol = 1e-10;
  double level_spacing = 0.0;  // <= 0: start from square cells as tall as the window
  int m_per_shift = 6;
  int max_restart = 20;
  bool verify = true;  // rerun on the offset shift grid
};

/// Eigenvalues inside the window, sorted by (Re, Im). Shifts start on a grid
/// of spacing level_spacing / 2; a cell not covered by the m_per_shift values
/// found at its centre is bisected until it is.
EigenpairSet eigs_window(const TridiagonalOperator& op, const Rectangle& window,
                         const WindowOptions& opt = {});

struct GridSelftest {
  int N_coarse = 0, N_fine = 0;
  std::vector<cplx> coarse, fine;
  std::vector<double> drift;  // relative, per matched eigenvalue
  double max_drift = 0.0;
  bool pass = false;
};

/// eigs_window at N and 2N; PASS when the largest relative drift is <= 1e-6.
GridSelftest grid_selftest(const PerturbedPotential& pot, double h, double eps,
                           const Rectangle& window, const Grid& grid,
                           const WindowOptions& opt = {});

}  // namespace ptwell
