// ptwell: command line front end for the PT-symmetric double-well toolkit.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ptwell/actions.hpp"
#include "ptwell/bifurcation.hpp"
#include "ptwell/harness.hpp"
#include "ptwell/quantization.hpp"
#include "ptwell/stokes.hpp"

using namespace ptwell;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitStrict = 4;

cplx parse_complex(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::ConfigError, "expected re,im but got '" + s + "'");
  }
}

struct Globals {
  std::string config;
  std::string out_dir;
  int threads = 1;
};

RunConfig load(const Globals& g) {
  RunConfig cfg = g.config.empty() ? RunConfig{} : load_config(g.config);
  if (!g.out_dir.empty()) cfg.output_dir = g.out_dir;
  return cfg;
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.output_dir);
  const auto path = std::filesystem::path(cfg.output_dir) / name;
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot write " + path.string());
  std::cerr << "wrote " << path.string() << "\n";
  return out;
}

void put(json& j, const std::string& key, cplx z) {
  j[key + "_re"] = z.real();
  j[key + "_im"] = z.imag();
}

std::string kind_name(PairKind k) {
  switch (k) {
    case PairKind::RealPair: return "real-pair";
    case PairKind::DoubleRoot: return "double-root";
    case PairKind::ConjugatePair: return "conjugate-pair";
  }
  return "?";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ptwell: spectra of -h^2 d^2/dx^2 + V0(x) + i eps W(x) by WKB and finite differences"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "flat key = value config file");
  app.add_option("--out-dir", g.out_dir, "output directory (overrides output.dir)");
  app.add_option("--threads", g.threads, "worker threads for sweeps")->check(CLI::PositiveNumber);

  auto* spectrum = app.add_subcommand("spectrum", "FD eigenvalues in the window for every (h, eps)");

  auto* wkb = app.add_subcommand("wkb-roots", "zeros of the quantization function and BS levels");
  std::vector<double> wkb_h, wkb_eps;
  wkb->add_option("--h", wkb_h, "override sweep.h");
  wkb->add_option("--eps", wkb_eps, "override sweep.eps");

  auto* actions = app.add_subcommand("actions", "action integrals and derivatives as JSON");
  std::string a_E = "-1,0";
  double a_eps = 0.0, a_h = 0.0;
  actions->add_option("--E", a_E, "energy re,im")->capture_default_str();
  actions->add_option("--eps", a_eps, "perturbation strength")->capture_default_str();
  actions->add_option("--h", a_h, "semiclassical parameter (adds f when > 0)");

  auto* bif = app.add_subcommand("bifurcation", "leading-order collision model as JSON");
  double b_E1 = -1.0, b_h = 0.2;
  std::vector<double> b_eps;
  bif->add_option("--E1", b_E1)->capture_default_str();
  bif->add_option("--h", b_h)->capture_default_str();
  bif->add_option("--eps", b_eps, "eps values to classify");

  auto* stokes = app.add_subcommand("stokes", "trace Stokes and anti-Stokes curves");
  std::string s_E = "-1,0";
  double s_eps = 0.0, s_step = 0.01, s_arc = 20.0, s_half = 6.0;
  bool s_svg = false;
  stokes->add_option("--E", s_E)->capture_default_str();
  stokes->add_option("--eps", s_eps)->capture_default_str();
  stokes->add_option("--step", s_step)->capture_default_str();
  stokes->add_option("--max-arc", s_arc)->capture_default_str();
  stokes->add_option("--half-size", s_half, "domain half size around 0")->capture_default_str();
  stokes->add_flag("--svg", s_svg, "also write stokes.svg");

  auto* compare = app.add_subcommand("compare", "match FD eigenvalues with WKB zeros");
  bool c_strict = false;
  std::string c_input;
  compare->add_flag("--strict", c_strict, "exit 4 on a failed check");
  compare->add_option("--input", c_input, "check a spectrum.csv for a single config hash");

  auto* threshold = app.add_subcommand("threshold", "empirical PT-breaking threshold vs model");
  double t_E1 = -1.0;
  std::vector<double> t_h{0.2};
  bool t_strict = false;
  threshold->add_option("--E1", t_E1)->capture_default_str();
  threshold->add_option("--h", t_h, "one or more h values");
  threshold->add_flag("--strict", t_strict, "exit 4 when a ratio leaves [0.7, 1.3]");

  auto* fig = app.add_subcommand("figure1", "eigenvalue panels for every eps in sweep.eps");
  bool f_paper = false;
  fig->add_flag("--paper-grid", f_paper, "use h = 0.01 and eps = k 10^-m, k = 1..5, m = 2..5");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    RunConfig cfg = load(g);
    const std::string hash = cfg.hash();

    if (*spectrum) {
      const auto res = run_sweep(cfg, g.threads);
      auto out = open_out(cfg, "spectrum.csv");
      write_spectrum_csv(out, res.rows, hash);
      auto err = open_out(cfg, "errors.csv");
      write_errors_csv(err, res.errors, hash);
      return 0;
    }

    if (*wkb) {
      if (!wkb_h.empty()) cfg.sweep_h = wkb_h;
      if (!wkb_eps.empty()) cfg.sweep_eps = wkb_eps;
      validate(cfg);
      const auto res = run_wkb(cfg, g.threads);
      write_spectrum_csv(std::cout, res.rows, cfg.hash());
      for (const auto& e : res.errors) std::cerr << e.code << ": " << e.message << "\n";
      return res.errors.empty() ? 0 : kExitNumerical;
    }

    if (*actions) {
      const ActionContext ctx(cfg.potential(), cfg.E0, cfg.quadrature_n_nodes);
      const auto s = action_set(ctx, parse_complex(a_E), a_eps);
      json j;
      put(j, "I_l", s.I_l);
      put(j, "I_r", s.I_r);
      put(j, "J", s.J);
      put(j, "dIl_dE", s.dIl_dE);
      put(j, "dIr_dE", s.dIr_dE);
      put(j, "dIl_de", s.dIl_de);
      put(j, "dIr_de", s.dIr_de);
      put(j, "dJ_dE", s.dJ_dE);
      j["residual"] = s.residual;
      j["n_nodes"] = s.n_nodes;
      if (a_h > 0.0) put(j, "f", eval_f(s, SpectralParams(a_h, a_eps)));
      std::cout << j.dump(2) << "\n";
      return 0;
    }

    if (*bif) {
      const ActionContext ctx(cfg.potential(), cfg.E0, cfg.quadrature_n_nodes);
      const auto m = build_model(ctx, b_E1, b_h);
      json j{{"E1", m.E1},       {"h", m.h},         {"kappa_tilde", m.kappa_tilde},
             {"E_c", m.E_c},     {"F_c", m.F_c},     {"eps_c", m.eps_c},
             {"eps_tilde_c", m.eps_tilde_c},         {"q0", m.q0},
             {"m0", m.m0},       {"J", m.J_val},     {"dI_dE", m.dIdE},
             {"abs_dI_deps", m.dIde_abs}};
      json table = json::array();
      for (double eps : b_eps) {
        const auto [a, b] = predicted_pair(eps / m.h, m);
        json row{{"eps", eps}, {"kind", kind_name(classify(eps / m.h, m))}};
        put(row, "E_plus", a);
        put(row, "E_minus", b);
        table.push_back(row);
      }
      j["classification"] = table;
      std::cout << j.dump(2) << "\n";
      return 0;
    }

    if (*stokes) {
      const auto pot = cfg.potential();
      const Rectangle domain(0.0, s_half, s_half);
      const auto curves = stokes_family(pot, parse_complex(s_E), s_eps, {s_step, s_arc}, domain);
      auto out = open_out(cfg, "stokes.csv");
      std::cerr << "convention: stokes = level set of Re phi, anti-stokes = level set of Im phi, "
                   "phi = integral of (V - E)^(1/2)\n";
      write_stokes_csv(out, curves);
      if (s_svg) {
        auto svg = open_out(cfg, "stokes.svg");
        write_stokes_svg(svg, curves, domain);
      }
      return 0;
    }

    if (*compare) {
      if (!c_input.empty()) {
        std::ifstream in(c_input);
        if (!in) throw Error(ErrorCode::ConfigError, "cannot open " + c_input);
        std::string h;
        const auto rows = read_spectrum_csv(in, &h);
        std::cerr << rows.size() << " rows, config hash " << h << "\n";
      }
      const auto rep = compare_spectrum(cfg, g.threads);
      bool ok = true;
      json cells = json::array();
      for (const auto& c : rep.cells) {
        json jc{{"h", c.h},
                {"eps", c.eps},
                {"matched", c.matched.size()},
                {"unmatched_fd", c.unmatched_fd.size()},
                {"unmatched_wkb", c.unmatched_wkb.size()},
                {"max_delta", c.max_delta},
                {"max_delta_over_h", c.max_delta / c.h},
                {"all_in_localization_discs", c.all_contained},
                {"cardinality_mismatch", c.cardinality_mismatch},
                {"wkb_certified", c.wkb_certified}};
        if (!c.error.empty()) jc["error"] = c.error;
        cells.push_back(jc);
        ok = ok && c.error.empty() && c.all_contained && !c.cardinality_mismatch && c.max_delta <= 0.05 * c.h;
        if (c.cardinality_mismatch)
          std::cerr << to_string(ErrorCode::MatchCardinalityMismatch) << " at h=" << c.h
                    << " eps=" << c.eps << "\n";
      }
      std::cout << json{{"config_hash", rep.config_hash}, {"cells", cells}}.dump(2) << "\n";
      return (c_strict && !ok) ? kExitStrict : 0;
    }

    if (*threshold) {
      std::vector<ThresholdResult> rows;
      for (double h : t_h) rows.push_back(empirical_threshold(cfg, t_E1, h));
      auto out = open_out(cfg, "threshold.csv");
      write_threshold_csv(out, rows, hash);
      bool ok = true;
      for (const auto& r : rows) ok = ok && r.ratio >= 0.7 && r.ratio <= 1.3;
      return (t_strict && !ok) ? kExitStrict : 0;
    }

    if (*fig) {
      if (f_paper) {
        cfg.sweep_h = {0.01};
        cfg.sweep_eps = figure1_eps();
      }
      const std::string fhash = cfg.hash();
      const auto res = figure1(cfg, g.threads);
      auto out = open_out(cfg, "figure1.csv");
      write_spectrum_csv(out, res.sweep.rows, fhash);
      auto err = open_out(cfg, "errors.csv");
      write_errors_csv(err, res.sweep.errors, fhash);
      auto svg = open_out(cfg, "figure1.svg");
      write_figure_svg(svg, res, fhash);
      return res.sweep.errors.empty() ? 0 : kExitNumerical;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == ErrorCode::ConfigError ? kExitConfig : kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
