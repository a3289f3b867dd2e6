#include "ptwell/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "ptwell/quantization.hpp"

namespace ptwell {

namespace {

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::clamp<std::size_t>(threads > 0 ? threads : 1, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  for (auto& th : pool) th.join();
}

struct Cell {
  double h;
  double eps;
};

std::vector<Cell> cells_of(const RunConfig& cfg) {
  std::vector<Cell> cells;
  for (double h : cfg.sweep_h)
    for (double eps : cfg.sweep_eps) cells.push_back({h, eps});
  return cells;
}

CellError cell_error(const Cell& c, const Error& e) {
  return {c.h, c.eps, std::string(to_string(e.code())), e.what()};
}

bool row_less(const SpectrumRow& a, const SpectrumRow& b) {
  if (a.h != b.h) return a.h < b.h;
  if (a.eps != b.eps) return a.eps < b.eps;
  if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
  if (a.lambda.imag() != b.lambda.imag()) return a.lambda.imag() < b.lambda.imag();
  return a.method < b.method;
}

WindowOptions window_options(const RunConfig& cfg, double spacing) {
  WindowOptions o;
  o.tol = cfg.solver_tol;
  o.level_spacing = spacing;
  o.m_per_shift = cfg.solver_m;
  o.max_restart = cfg.solver_max_restart;
  o.verify = cfg.solver_verify;
  return o;
}

// FD sweep with a per-cell window.
SweepResult fd_sweep(const RunConfig& cfg, int threads,
                     const std::function<Rectangle(const Cell&)>& window_of,
                     const std::function<double(const Cell&)>& spacing_of) {
  const auto cells = cells_of(cfg);
  const auto pot = cfg.potential();
  std::vector<std::vector<SpectrumRow>> rows(cells.size());
  std::vector<std::optional<CellError>> errs(cells.size());
  std::vector<int> incomplete(cells.size(), 0);

  parallel_for(cells.size(), threads, [&](std::size_t i) {
    const Cell& c = cells[i];
    try {
      const Rectangle win = window_of(c);
      const auto op = assemble(pot, grid_for(cfg, win), c.h, c.eps);
      const auto set = eigs_window(op, win, window_options(cfg, spacing_of(c)));
      for (const auto& p : set.pairs) rows[i].push_back({"fd", c.h, c.eps, p.lambda, p.residual});
      incomplete[i] = set.incomplete ? 1 : 0;
      if (!set.converged)
        errs[i] = CellError{c.h, c.eps, std::string(to_string(ErrorCode::NotConverged)),
                            "some shifts returned fewer than solver.m pairs"};
    } catch (const Error& e) {
      errs[i] = cell_error(c, e);
    }
  });

  SweepResult out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out.rows.insert(out.rows.end(), rows[i].begin(), rows[i].end());
    if (errs[i]) out.errors.push_back(*errs[i]);
  }
  out.incomplete = std::move(incomplete);
  sort_rows(out.rows);
  return out;
}

double expected_spacing(const ActionContext& ctx, double h, double E) {
  const auto s = action_set(ctx, cplx(E, 0.0), 0.0);
  return kPi * h / std::abs(s.dIl_dE);
}

}  // namespace

void sort_rows(std::vector<SpectrumRow>& rows) { std::sort(rows.begin(), rows.end(), row_less); }

SweepResult run_sweep(const RunConfig& cfg, int threads) {
  const Rectangle win = cfg.window();
  return fd_sweep(
      cfg, threads, [&](const Cell&) { return win; },
      [&](const Cell&) { return cfg.solver_level_spacing; });
}

SweepResult run_wkb(const RunConfig& cfg, int threads) {
  const auto cells = cells_of(cfg);
  const ActionContext ctx(cfg.potential(), cfg.E0, cfg.quadrature_n_nodes);
  const Rectangle win = cfg.window();
  std::vector<std::vector<SpectrumRow>> rows(cells.size());
  std::vector<std::optional<CellError>> errs(cells.size());

  parallel_for(cells.size(), threads, [&](std::size_t i) {
    const Cell& c = cells[i];
    try {
      const SpectralParams p(c.h, c.eps);
      const auto search = find_f_roots(ctx, p, win);
      for (const auto& r : search.roots)
        for (int k = 0; k < r.multiplicity; ++k)
          rows[i].push_back({"wkb", c.h, c.eps, r.E, r.newton_residual});
      for (Side side : {Side::Left, Side::Right})
        for (const auto& l : bs_levels(ctx, p, win, side))
          rows[i].push_back({"bs", c.h, c.eps, l.E, l.residual});
      require_certified(search);
    } catch (const Error& e) {
      errs[i] = cell_error(c, e);
    }
  });

  SweepResult out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out.rows.insert(out.rows.end(), rows[i].begin(), rows[i].end());
    if (errs[i]) out.errors.push_back(*errs[i]);
  }
  sort_rows(out.rows);
  return out;
}

// ---------------------------------------------------------------------------

CompareReport compare_spectrum(const RunConfig& cfg, int threads) {
  const auto cells = cells_of(cfg);
  const auto pot = cfg.potential();
  const ActionContext ctx(pot, cfg.E0, cfg.quadrature_n_nodes);
  const Rectangle win = cfg.window();
  CompareReport report;
  report.config_hash = cfg.hash();
  report.cells.resize(cells.size());

  parallel_for(cells.size(), threads, [&](std::size_t i) {
    const Cell& c = cells[i];
    CompareCell& cell = report.cells[i];
    cell.h = c.h;
    cell.eps = c.eps;
    try {
    const double spacing = cfg.solver_level_spacing > 0.0
                               ? cfg.solver_level_spacing
                               : expected_spacing(ctx, c.h, win.center.real());
    const auto op = assemble(pot, grid_for(cfg, win), c.h, c.eps);
    const auto fd = eigs_window(op, win, window_options(cfg, spacing));
    const SpectralParams p(c.h, c.eps);
    const auto search = find_f_roots(ctx, p, win);
    cell.wkb_certified = search.certified;

    std::vector<cplx> fdv, wkb;
    for (const auto& e : fd.pairs) fdv.push_back(e.lambda);
    for (const auto& r : search.roots)
      for (int k = 0; k < r.multiplicity; ++k) wkb.push_back(r.E);
    cell.cardinality_mismatch = fdv.size() != wkb.size();

    // greedy nearest matching
    struct Cand {
      double d;
      std::size_t a, b;
    };
    std::vector<Cand> cand;
    for (std::size_t a = 0; a < fdv.size(); ++a)
      for (std::size_t b = 0; b < wkb.size(); ++b) cand.push_back({std::abs(fdv[a] - wkb[b]), a, b});
    std::sort(cand.begin(), cand.end(), [](const Cand& x, const Cand& y) {
      return x.d != y.d ? x.d < y.d : (x.a != y.a ? x.a < y.a : x.b < y.b);
    });
    std::vector<bool> ua(fdv.size(), false), ub(wkb.size(), false);
    for (const auto& k : cand) {
      if (ua[k.a] || ub[k.b]) continue;
      ua[k.a] = ub[k.b] = true;
      cell.matched.push_back({fdv[k.a], wkb[k.b], k.d});
      cell.max_delta = std::max(cell.max_delta, k.d);
    }
    for (std::size_t a = 0; a < fdv.size(); ++a)
      if (!ua[a]) cell.unmatched_fd.push_back(fdv[a]);
    for (std::size_t b = 0; b < wkb.size(); ++b)
      if (!ub[b]) cell.unmatched_wkb.push_back(wkb[b]);

    // localization discs around the Bohr-Sommerfeld levels and their conjugates
    struct Disc {
      cplx c;
      double r;
    };
    std::vector<Disc> discs;
    for (Side side : {Side::Left, Side::Right})
      for (const auto& l : bs_levels(ctx, p, win, side)) {
        const auto s = action_set(ctx, l.E, c.eps);
        const double r = localization_radius(l.E, c.eps, c.h, s.J, cfg.localization_C);
        discs.push_back({l.E, r});
        discs.push_back({std::conj(l.E), r});
      }
    for (const cplx& z : fdv) {
      DiscCheck chk{z, false, std::numeric_limits<double>::infinity(), 0.0};
      for (const auto& d : discs) {
        const double dist = std::abs(z - d.c);
        if (dist <= d.r) chk.contained = true;
        if (dist < chk.nearest_center_distance) {
          chk.nearest_center_distance = dist;
          chk.radius = d.r;
        }
      }
      cell.all_contained = cell.all_contained && chk.contained;
      cell.discs.push_back(chk);
    }
    } catch (const Error& e) {
      cell.error = e.what();
      cell.all_contained = false;
    }
  });
  return report;
}

// ---------------------------------------------------------------------------

ThresholdResult empirical_threshold(const RunConfig& cfg, double E1, double h) {
  const auto pot = cfg.potential();
  const ActionContext ctx(pot, cfg.E0, cfg.quadrature_n_nodes);
  ThresholdResult out;
  out.E1 = E1;
  out.h = h;
  out.model = build_model(ctx, E1, h);
  out.eps_c_model = out.model.eps_c;

  const double spacing = expected_spacing(ctx, h, out.model.E_c);
  const Grid grid = grid_for(cfg, Rectangle(cplx(out.model.E_c, 0.0), spacing, spacing));
  const ArnoldiOptions aopt{3, cfg.solver_tol, cfg.solver_max_restart};

  const auto r0 = eigs_near(assemble(pot, grid, h, 0.0), out.model.E_c, aopt);
  if (!r0.converged) throw Error(ErrorCode::PairLost, "no FD pair near the critical energy");
  const cplx a = r0.pairs[0].lambda, b = r0.pairs[1].lambda;
  out.splitting0 = std::abs(a - b);
  const double centre = 0.5 * (a + b).real();
  if (std::abs(r0.pairs[2].lambda - centre) < 0.25 * spacing)
    throw Error(ErrorCode::PairLost, "third eigenvalue inside the doublet tracking radius");

  const double im_threshold =
      1e-3 * (out.splitting0 + h * std::exp(-out.model.J_val / h));
  const double track_radius = 0.25 * spacing;
  const ArnoldiOptions popt{2, cfg.solver_tol, cfg.solver_max_restart};
  auto broken = [&](double eps) {
    const auto r = eigs_near(assemble(pot, grid, h, eps), centre, popt);
    if (!r.converged) throw Error(ErrorCode::PairLost, "pair not converged at eps = " + format_double(eps));
    double im = 0.0;
    for (const auto& p : r.pairs) {
      if (std::abs(p.lambda - centre) > track_radius)
        throw Error(ErrorCode::PairLost, "pair left the tracking radius at eps = " + format_double(eps));
      im = std::max(im, std::abs(p.lambda.imag()));
    }
    return im > im_threshold;
  };

  double lo = 0.0, hi = 10.0 * out.eps_c_model;
  if (!broken(hi)) throw Error(ErrorCode::PairLost, "pair still real at 10 eps_c");
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    (broken(mid) ? hi : lo) = mid;
  }
  out.eps_star_fd = 0.5 * (lo + hi);
  out.ratio = out.eps_star_fd / out.eps_c_model;
  return out;
}

// ---------------------------------------------------------------------------

std::vector<double> figure1_eps() {
  std::vector<double> eps;
  for (int m = 5; m >= 2; --m)
    for (int k = 1; k <= 5; ++k) eps.push_back(k / std::pow(10.0, m));
  return eps;
}

double figure_half_height(const RunConfig& cfg, double eps) {
  return std::min(cfg.window_half_height, 2.5 * std::abs(eps) + 5e-3);
}

FigureResult figure1(const RunConfig& cfg, int threads) {
  auto window_of = [&](const Cell& c) {
    return Rectangle(cfg.window_center, cfg.window_half_width, figure_half_height(cfg, c.eps));
  };
  const ActionContext ctx(cfg.potential(), cfg.E0, cfg.quadrature_n_nodes);
  // initial shift cells about as wide as the span of solver.m levels
  auto spacing_of = [&](const Cell& c) {
    if (cfg.solver_level_spacing > 0.0) return cfg.solver_level_spacing;
    return 0.5 * cfg.solver_m * expected_spacing(ctx, c.h, cfg.window_center.real());
  };
  FigureResult fig;
  fig.sweep = fd_sweep(cfg, threads, window_of, spacing_of);
  for (const Cell& c : cells_of(cfg)) {
    FigurePanel panel{c.eps, window_of(c), {}};
    for (const auto& r : fig.sweep.rows)
      if (r.h == c.h && r.eps == c.eps) panel.points.push_back(r);
    fig.panels.push_back(std::move(panel));
  }
  return fig;
}

}  // namespace ptwell
