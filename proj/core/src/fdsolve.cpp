#include "ptwell/fdsolve.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <sstream>

#include "ptwell/error.hpp"

namespace ptwell {

Grid::Grid(double L_, int N_) : L(L_), N(N_) {
  if (!(L > 0.0) || N < 4 || N % 2 != 0) {
    std::ostringstream os;
    os << "grid needs L > 0 and even N >= 4, got L=" << L << " N=" << N;
    throw Error(ErrorCode::InvalidGrid, os.str());
  }
  delta = 2.0 * L / N;
}

double TridiagonalOperator::opnorm() const noexcept {
  double m = 0.0;
  for (const cplx& d : diag) m = std::max(m, std::abs(d));
  return m + 2.0 * std::abs(off);
}

void TridiagonalOperator::apply(std::span<const cplx> x, std::span<cplx> y) const {
  const std::size_t n = diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    cplx acc = diag[i] * x[i];
    if (i > 0) acc += off * x[i - 1];
    if (i + 1 < n) acc += off * x[i + 1];
    y[i] = acc;
  }
}

TridiagonalOperator assemble(const PerturbedPotential& pot, const Grid& grid, double h, double eps) {
  TridiagonalOperator op{grid, {}, 0.0, h, eps};
  const double k = h * h / (grid.delta * grid.delta);
  op.off = -k;
  op.diag.resize(grid.N - 1);
  for (int j = 1; j < grid.N; ++j) op.diag[j - 1] = 2.0 * k + pot.V(grid.x(j), eps);
  return op;
}

TridiagonalOperator assemble(const std::function<cplx(double)>& V, const Grid& grid, double h) {
  TridiagonalOperator op{grid, {}, 0.0, h, 0.0};
  const double k = h * h / (grid.delta * grid.delta);
  op.off = -k;
  op.diag.resize(grid.N - 1);
  for (int j = 1; j < grid.N; ++j) op.diag[j - 1] = 2.0 * k + V(grid.x(j));
  return op;
}

// ---------------------------------------------------------------------------

ShiftedLU::ShiftedLU(const TridiagonalOperator& op, cplx sigma) : sigma_(sigma) {
  const std::size_t n = op.size();
  d_.resize(n);
  for (std::size_t i = 0; i < n; ++i) d_[i] = op.diag[i] - sigma;
  dl_.assign(n > 0 ? n - 1 : 0, op.off);
  du_.assign(n > 0 ? n - 1 : 0, op.off);
  du2_.assign(n > 1 ? n - 2 : 0, 0.0);
  swapped_.assign(n > 0 ? n - 1 : 0, 0);

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d_[i]) >= std::abs(dl_[i])) {
      const cplx fact = dl_[i] / d_[i];
      dl_[i] = fact;
      d_[i + 1] -= fact * du_[i];
    } else {
      const cplx fact = d_[i] / dl_[i];
      d_[i] = dl_[i];
      dl_[i] = fact;
      const cplx tmp = du_[i];
      du_[i] = d_[i + 1];
      d_[i + 1] = tmp - fact * d_[i + 1];
      if (i + 2 < n) {
        du2_[i] = du_[i + 1];
        du_[i + 1] = -fact * du_[i + 1];
      }
      swapped_[i] = 1;
    }
  }

  min_pivot_ = std::numeric_limits<double>::infinity();
  for (const cplx& p : d_) min_pivot_ = std::min(min_pivot_, std::abs(p));
  const double guard = 64.0 * std::numeric_limits<double>::epsilon() * (op.opnorm() + std::abs(sigma));
  if (!(min_pivot_ > guard)) {
    std::ostringstream os;
    os << "pivot " << min_pivot_ << " at shift " << sigma;
    throw Error(ErrorCode::SingularShift, os.str());
  }
}

void ShiftedLU::solve_in_place(std::span<cplx> b) const {
  const std::size_t n = d_.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!swapped_[i]) {
      b[i + 1] -= dl_[i] * b[i];
    } else {
      const cplx tmp = b[i];
      b[i] = b[i + 1];
      b[i + 1] = tmp - dl_[i] * b[i];
    }
  }
  if (n == 0) return;
  b[n - 1] /= d_[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
  for (std::size_t i = n - 2; i-- > 0;)
    b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
}

std::vector<cplx> ShiftedLU::solve(std::span<const cplx> rhs) const {
  std::vector<cplx> x(rhs.begin(), rhs.end());
  solve_in_place(x);
  return x;
}

std::vector<cplx> lu_solve(const TridiagonalOperator& op, cplx sigma, std::span<const cplx> rhs) {
  return ShiftedLU(op, sigma).solve(rhs);
}

// ---------------------------------------------------------------------------

namespace {

using Vec = std::vector<cplx>;

// The kernels below spell out complex arithmetic in real parts; std::complex
// multiplication carries inf/nan recovery that blocks vectorization.

cplx dot(const Vec& a, const Vec& b) {  // a^* b
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ar = a[i].real(), ai = a[i].imag(), br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

double norm(const Vec& a) {
  double s = 0.0;
  for (const cplx& x : a) s += std::norm(x);
  return std::sqrt(s);
}

void scale(Vec& a, cplx s) {
  const double sr = s.real(), si = s.imag();
  for (cplx& x : a) x = {sr * x.real() - si * x.imag(), sr * x.imag() + si * x.real()};
}

void axpy(Vec& y, cplx a, const Vec& x) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < y.size(); ++i)
    y[i] = {y[i].real() + ar * x[i].real() - ai * x[i].imag(),
            y[i].imag() + ar * x[i].imag() + ai * x[i].real()};
}

// Classical Gram-Schmidt, applied twice. Returns the coefficients.
std::vector<cplx> orthogonalize(Vec& w, const std::vector<Vec>& basis) {
  std::vector<cplx> c(basis.size(), 0.0);
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<cplx> h(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) h[j] = dot(basis[j], w);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      axpy(w, -h[j], basis[j]);
      c[j] += h[j];
    }
  }
  return c;
}

double residual(const TridiagonalOperator& op, const Vec& v, cplx lambda) {
  Vec Av(v.size());
  op.apply(v, Av);
  axpy(Av, -lambda, v);
  return norm(Av) / norm(v);
}

cplx rayleigh(const TridiagonalOperator& op, const Vec& v) {
  Vec Av(v.size());
  op.apply(v, Av);
  return dot(v, Av) / dot(v, v);
}

struct Locked {
  cplx lambda;
  double residual;
  Vec v;  // unit norm
};

// Inverse iteration from the Ritz vector x near lambda. Stops once the
// residual reaches 1e-13 opnorm or stops improving.
Locked polish(const TridiagonalOperator& op, Vec x, cplx lambda) {
  const double onorm = op.opnorm();
  const cplx dir = std::polar(1.0, kPi / 4.0);
  std::unique_ptr<ShiftedLU> lu;
  for (double rel : {1e-12, 1e-10, 1e-8}) {
    try {
      lu = std::make_unique<ShiftedLU>(op, lambda + rel * onorm * dir);
      break;
    } catch (const Error&) {
    }
  }
  scale(x, 1.0 / norm(x));
  Locked best{rayleigh(op, x), 0.0, x};
  best.residual = residual(op, x, best.lambda);
  if (!lu) return best;
  for (int it = 0; it < 6 && best.residual > 1e-13 * onorm; ++it) {
    lu->solve_in_place(x);
    const double nx = norm(x);
    if (!(nx > 0.0) || !std::isfinite(nx)) break;
    scale(x, 1.0 / nx);
    const cplx mu = rayleigh(op, x);
    const double r = residual(op, x, mu);
    if (!(r < best.residual)) {
      if (it > 0) break;
      continue;
    }
    best = {mu, r, x};
  }
  return best;
}

struct NearResult {
  std::vector<Locked> pairs;
  bool converged = false;
};

// Same eigenvector up to the accuracy of the polished vectors: close value
// and no appreciable component outside the span of the close locked vectors.
bool is_duplicate(const Locked& cand, const std::vector<Locked>& locked, double onorm) {
  std::vector<Vec> close;
  for (const auto& l : locked)
    if (std::abs(l.lambda - cand.lambda) <= 1e-8 * onorm) close.push_back(l.v);
  if (close.empty()) return false;
  // orthonormal basis of the close span
  std::vector<Vec> basis;
  for (Vec v : close) {
    orthogonalize(v, basis);
    const double nv = norm(v);
    if (nv > 1e-8) {
      scale(v, 1.0 / nv);
      basis.push_back(std::move(v));
    }
  }
  Vec w = cand.v;
  orthogonalize(w, basis);
  return norm(w) < 3e-4;
}

NearResult arnoldi_near(const TridiagonalOperator& op, cplx sigma, const ArnoldiOptions& opt) {
  const std::size_t n = op.size();
  const double onorm = op.opnorm();
  const int m = std::min<int>(opt.m, static_cast<int>(n));

  std::unique_ptr<ShiftedLU> lu;
  try {
    lu = std::make_unique<ShiftedLU>(op, sigma);
  } catch (const Error&) {
    sigma += 1e-8 * cplx(1.0, 1.0);
    lu = std::make_unique<ShiftedLU>(op, sigma);
  }

  std::vector<Locked> locked;
  std::vector<Vec> Y;  // orthonormal basis of span(locked vectors)
  auto dist = [&](cplx l) { return std::abs(l - sigma); };
  auto mth_distance = [&]() {
    if (static_cast<int>(locked.size()) < m) return std::numeric_limits<double>::infinity();
    std::vector<double> d;
    for (const auto& l : locked) d.push_back(dist(l.lambda));
    std::nth_element(d.begin(), d.begin() + (m - 1), d.end());
    return d[m - 1];
  };

  for (int pass = 0; pass <= opt.max_restart; ++pass) {
    const std::size_t free_dim = n - Y.size();
    if (free_dim == 0) break;
    const int k = static_cast<int>(std::min<std::size_t>(std::max(2 * m + 10, 30), free_dim));

    std::mt19937_64 gen(0x9e3779b97f4a7c15ULL + static_cast<unsigned long long>(pass));
    std::normal_distribution<double> nd;
    Vec v0(n);
    for (auto& x : v0) x = cplx(nd(gen), nd(gen));
    orthogonalize(v0, Y);
    scale(v0, 1.0 / norm(v0));

    std::vector<Vec> V{v0};
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(k + 1, k);
    int k_eff = k;
    for (int j = 0; j < k; ++j) {
      Vec w = lu->solve(V[j]);
      const double wn0 = norm(w);
      orthogonalize(w, Y);
      const auto c = orthogonalize(w, V);
      for (int i = 0; i <= j; ++i) H(i, j) = c[i];
      const double wn = norm(w);
      H(j + 1, j) = wn;
      if (wn <= 1e-13 * wn0) {
        k_eff = j + 1;
        break;
      }
      scale(w, 1.0 / wn);
      V.push_back(std::move(w));
    }

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(H.topLeftCorner(k_eff, k_eff));
    if (es.info() != Eigen::Success) continue;
    std::vector<int> order;
    for (int i = 0; i < k_eff; ++i)
      if (std::abs(es.eigenvalues()[i]) > 0.0) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::abs(es.eigenvalues()[a]) > std::abs(es.eigenvalues()[b]);
    });
    if (static_cast<int>(order.size()) > 2 * m + 4) order.resize(2 * m + 4);

    bool added_close = false;
    for (int i : order) {
      const cplx lambda = sigma + 1.0 / es.eigenvalues()[i];
      if (dist(lambda) > 2.0 * mth_distance()) continue;
      Vec x(n, 0.0);
      for (int j = 0; j < k_eff; ++j) axpy(x, es.eigenvectors()(j, i), V[j]);
      Locked cand = polish(op, std::move(x), lambda);
      if (cand.residual > opt.tol * onorm || is_duplicate(cand, locked, onorm)) continue;
      const double threshold = mth_distance();
      Vec y = cand.v;
      orthogonalize(y, Y);
      const double ny = norm(y);
      if (ny > 1e-10) {
        scale(y, 1.0 / ny);
        Y.push_back(std::move(y));
      }
      if (dist(cand.lambda) < threshold) added_close = true;
      locked.push_back(std::move(cand));
    }
    if (static_cast<int>(locked.size()) >= m && !added_close) break;
  }

  std::sort(locked.begin(), locked.end(),
            [&](const Locked& a, const Locked& b) { return dist(a.lambda) < dist(b.lambda); });
  NearResult out;
  out.converged = static_cast<int>(locked.size()) >= m;
  if (out.converged) locked.resize(m);
  out.pairs = std::move(locked);
  return out;
}

bool by_re_im(const Eigenpair& a, const Eigenpair& b) {
  return a.lambda.real() != b.lambda.real() ? a.lambda.real() < b.lambda.real()
                                            : a.lambda.imag() < b.lambda.imag();
}

}  // namespace

EigenpairSet eigs_near(const TridiagonalOperator& op, cplx sigma, const ArnoldiOptions& opt) {
  if (opt.m < 1 || opt.m > 40) throw Error(ErrorCode::InvalidArgument, "m must lie in [1, 40]");
  const auto r = arnoldi_near(op, sigma, opt);
  EigenpairSet out;
  out.target = sigma;
  out.opnorm = op.opnorm();
  out.converged = r.converged;
  for (const auto& l : r.pairs) out.pairs.push_back({l.lambda, l.residual});
  return out;
}

namespace {

double mth_distance(const NearResult& r, cplx sigma) {
  double d = 0.0;
  for (const auto& l : r.pairs) d = std::max(d, std::abs(l.lambda - sigma));
  return d;
}

// Covers the window with cells, one shift per cell centre. A cell whose
// half diagonal exceeds the distance to the m-th eigenvalue found at its
// centre is split in two along its longer side.
std::vector<Locked> window_pass(const TridiagonalOperator& op, const Rectangle& window,
                                const WindowOptions& opt, bool offset, bool& converged) {
  const double spacing = opt.level_spacing > 0.0
                             ? 0.5 * opt.level_spacing
                             : 2.0 * std::min(window.half_width, window.half_height);
  const int nx = std::max(1, static_cast<int>(std::ceil(2.0 * window.half_width / spacing)));
  const int ny = std::max(1, static_cast<int>(std::ceil(2.0 * window.half_height / spacing)));
  const double dx = 2.0 * window.half_width / nx, dy = 2.0 * window.half_height / ny;
  const double shift = offset ? 0.5 : 0.0;
  const int cx = offset ? nx + 1 : nx, cy = offset ? ny + 1 : ny;

  struct Cell {
    double x0, x1, y0, y1;
  };
  std::vector<Cell> todo;
  for (int i = 0; i < cx; ++i)
    for (int j = 0; j < cy; ++j) {
      const double x0 = std::max(window.re_min(), window.re_min() + (i - shift) * dx);
      const double x1 = std::min(window.re_max(), window.re_min() + (i + 1 - shift) * dx);
      const double y0 = std::max(window.im_min(), window.im_min() + (j - shift) * dy);
      const double y1 = std::min(window.im_max(), window.im_min() + (j + 1 - shift) * dy);
      if (x1 > x0 && y1 > y0) todo.push_back({x0, x1, y0, y1});
    }

  const double onorm = op.opnorm();
  const double min_size = 1e-6 * std::max(window.half_width, window.half_height);
  std::vector<Locked> acc;
  ArnoldiOptions aopt{opt.m_per_shift, opt.tol, opt.max_restart};
  while (!todo.empty()) {
    const Cell c = todo.back();
    todo.pop_back();
    const cplx sigma(0.5 * (c.x0 + c.x1), 0.5 * (c.y0 + c.y1));
    const auto r = arnoldi_near(op, sigma, aopt);
    converged = converged && r.converged;
    for (const auto& l : r.pairs)
      if (window.contains(l.lambda) && !is_duplicate(l, acc, onorm)) acc.push_back(l);
    const double half_diag = 0.5 * std::hypot(c.x1 - c.x0, c.y1 - c.y0);
    if (!r.converged || mth_distance(r, sigma) >= half_diag) continue;
    if (half_diag < min_size) {
      converged = false;
      continue;
    }
    if (c.x1 - c.x0 >= c.y1 - c.y0) {
      const double xm = 0.5 * (c.x0 + c.x1);
      todo.push_back({c.x0, xm, c.y0, c.y1});
      todo.push_back({xm, c.x1, c.y0, c.y1});
    } else {
      const double ym = 0.5 * (c.y0 + c.y1);
      todo.push_back({c.x0, c.x1, c.y0, ym});
      todo.push_back({c.x0, c.x1, ym, c.y1});
    }
  }
  return acc;
}

}  // namespace

EigenpairSet eigs_window(const TridiagonalOperator& op, const Rectangle& window,
                         const WindowOptions& opt) {
  EigenpairSet out;
  out.target = window.center;
  out.opnorm = op.opnorm();
  bool converged = true;
  const auto main = window_pass(op, window, opt, false, converged);
  if (opt.verify) {
    const auto check = window_pass(op, window, opt, true, converged);
    std::size_t unmatched = 0;
    for (const auto& l : check) unmatched += is_duplicate(l, main, out.opnorm) ? 0 : 1;
    out.incomplete = unmatched > 0 || check.size() != main.size();
  }
  out.converged = converged;
  for (const auto& l : main) out.pairs.push_back({l.lambda, l.residual});
  std::sort(out.pairs.begin(), out.pairs.end(), by_re_im);
  return out;
}

GridSelftest grid_selftest(const PerturbedPotential& pot, double h, double eps,
                           const Rectangle& window, const Grid& grid, const WindowOptions& opt) {
  GridSelftest out;
  out.N_coarse = grid.N;
  out.N_fine = 2 * grid.N;
  const auto a = eigs_window(assemble(pot, grid, h, eps), window, opt);
  const auto b = eigs_window(assemble(pot, Grid(grid.L, 2 * grid.N), h, eps), window, opt);
  for (const auto& p : a.pairs) out.coarse.push_back(p.lambda);
  for (const auto& p : b.pairs) out.fine.push_back(p.lambda);
  // coarse eigenvalues matched in order; a missing partner counts as full drift
  for (std::size_t i = 0; i < out.coarse.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (const cplx& f : out.fine) best = std::min(best, std::abs(f - out.coarse[i]));
    const double d = best / std::max(std::abs(out.coarse[i]), 1e-300);
    out.drift.push_back(d);
    out.max_drift = std::max(out.max_drift, d);
  }
  out.pass = !out.coarse.empty() && out.coarse.size() == out.fine.size() && out.max_drift <= 1e-6;
  return out;
}

}  // namespace ptwell
