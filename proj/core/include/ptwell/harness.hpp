#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ptwell/actions.hpp"
#include "ptwell/bifurcation.hpp"
#include "ptwell/error.hpp"
#include "ptwell/fdsolve.hpp"
#include "ptwell/numerics.hpp"
#include "ptwell/potential.hpp"
#include "ptwell/stokes.hpp"

namespace ptwell {

// ----------------------------------------------------------------- config

/// Flat "key = value" configuration. Arrays are written [a, b, c]; '#'
/// starts a comment. Unknown keys are rejected with ConfigError.
struct RunConfig {
  std::vector<double> v0{0.0, 0.0, -0.5, 0.0, 0.05};
  std::vector<double> w{0.0, 1.0};
  bool pt_enforced = true;
  double E0 = -1.0;

  int grid_N = 4000;
  double grid_L = 0.0;  // <= 0: L_factor times the outer turning point at the window top
  double grid_L_factor = 1.5;

  std::vector<double> sweep_h{0.01};
  std::vector<double> sweep_eps{0.0};

  cplx window_center{-0.15, 0.0};
  double window_half_width = 0.5;
  double window_half_height = 0.15;

  double solver_tol = 1e-10;
  int solver_m = 16;
  int solver_max_restart = 20;
  double solver_level_spacing = 0.0;  // <= 0: derived from dI/dE (compare, figure1) or the window height
  bool solver_verify = true;

  int quadrature_n_nodes = 128;
  double localization_C = 10.0;

  std::string output_dir = ".";
  std::vector<std::string> output_formats{"csv"};

  PerturbedPotential potential() const;
  Rectangle window() const;
  /// Canonical text form; parse_config(serialize(c)) == c.
  std::string serialize() const;
  /// FNV-1a 64 of serialize(), as 16 hex digits.
  std::string hash() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
/// Checks module preconditions that can be decided without computing.
void validate(const RunConfig& cfg);

/// Dirichlet box for a window: grid_L when set, otherwise grid_L_factor times
/// the outermost real turning point at the window's top energy.
Grid grid_for(const RunConfig& cfg, const Rectangle& window);

std::uint64_t fnv1a(const std::string& s);

// ------------------------------------------------------------------ sweep

struct SpectrumRow {
  std::string method;  // fd | wkb | bs
  double h;
  double eps;
  cplx lambda;
  double residual;
};

struct CellError {
  double h;
  double eps;
  std::string code;
  std::string message;
};

struct SweepResult {
  std::vector<SpectrumRow> rows;  // sorted by (h, eps, Re, Im)
  std::vector<CellError> errors;
  std::vector<int> incomplete;  // per cell, in sweep order (h major)
};

/// FD eigenvalues in the window for every (h, eps) cell, computed by a pool
/// of worker threads. Failing cells land in errors.
SweepResult run_sweep(const RunConfig& cfg, int threads = 1);

/// WKB zeros of f and Bohr-Sommerfeld levels for every cell.
SweepResult run_wkb(const RunConfig& cfg, int threads = 1);

void sort_rows(std::vector<SpectrumRow>& rows);

// ---------------------------------------------------------------- compare

struct MatchedPair {
  cplx fd;
  cplx wkb;
  double delta;
};

struct DiscCheck {
  cplx fd;
  bool contained;
  double nearest_center_distance;  // to the closest disc centre
  double radius;                   // radius of that disc
};

struct CompareCell {
  double h = 0.0;
  double eps = 0.0;
  std::vector<MatchedPair> matched;
  std::vector<cplx> unmatched_fd, unmatched_wkb;
  double max_delta = 0.0;
  std::vector<DiscCheck> discs;
  bool all_contained = true;
  bool cardinality_mismatch = false;
  bool wkb_certified = false;
  std::string error;  // set when the cell failed; other fields are then partial
};

struct CompareReport {
  std::vector<CompareCell> cells;
  std::string config_hash;
};

CompareReport compare_spectrum(const RunConfig& cfg, int threads = 1);

// -------------------------------------------------------------- threshold

struct ThresholdResult {
  double E1;
  double h;
  double eps_c_model;
  double eps_star_fd;
  double ratio;
  double splitting0;  // FD doublet splitting at eps = 0
  BifurcationModel model;
};

/// Bisection (40 steps) on [0, 10 eps_c] for the smallest eps at which the
/// FD pair nearest E_c leaves the real axis. Throws PairLost when the pair
/// cannot be followed.
ThresholdResult empirical_threshold(const RunConfig& cfg, double E1, double h);

// ---------------------------------------------------------------- figure 1

struct FigurePanel {
  double eps;
  Rectangle window;
  std::vector<SpectrumRow> points;
};

struct FigureResult {
  std::vector<FigurePanel> panels;
  SweepResult sweep;
};

/// Window half-height used for the panel at eps.
double figure_half_height(const RunConfig& cfg, double eps);

/// The paper's grid: eps = k 10^-m, k = 1..5, m = 2..5.
std::vector<double> figure1_eps();

FigureResult figure1(const RunConfig& cfg, int threads = 1);

// ----------------------------------------------------------------- output

void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumRow>& rows,
                        const std::string& config_hash);
void write_errors_csv(std::ostream& os, const std::vector<CellError>& errors,
                      const std::string& config_hash);
void write_threshold_csv(std::ostream& os, const std::vector<ThresholdResult>& rows,
                         const std::string& config_hash);
void write_stokes_csv(std::ostream& os, const std::vector<StokesCurve>& curves);
void write_figure_svg(std::ostream& os, const FigureResult& fig, const std::string& config_hash);
void write_stokes_svg(std::ostream& os, const std::vector<StokesCurve>& curves,
                      const Rectangle& domain);

/// Reads a spectrum.csv back. Throws ConfigError on a malformed file or when
/// rows carry more than one config hash.
std::vector<SpectrumRow> read_spectrum_csv(std::istream& is, std::string* hash = nullptr);

/// Number of <circle class="eig"> elements in an SVG produced above.
std::size_t count_svg_points(const std::string& svg);

/// Shortest round-trip decimal form of x.
std::string format_double(double x);

}  // namespace ptwell
