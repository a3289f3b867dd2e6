#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ptwell/harness.hpp"

namespace ptwell {

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  std::ostringstream os;
  if (line > 0) os << "line " << line << ": ";
  os << msg;
  throw Error(ErrorCode::ConfigError, os.str());
}

double to_double(const std::string& s, int line) {
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size() || !std::isfinite(v))
    fail(line, "not a number: '" + s + "'");
  return v;
}

int to_int(const std::string& s, int line) {
  int v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) fail(line, "not an integer: '" + s + "'");
  return v;
}

bool to_bool(const std::string& s, int line) {
  if (s == "true") return true;
  if (s == "false") return false;
  fail(line, "expected true or false, got '" + s + "'");
}

std::vector<std::string> to_list(const std::string& s, int line) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') fail(line, "expected [ ... ], got '" + s + "'");
  std::vector<std::string> out;
  const std::string body = trim(s.substr(1, s.size() - 2));
  if (body.empty()) return out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) fail(line, "empty array element");
    out.push_back(item);
  }
  return out;
}

std::vector<double> to_doubles(const std::string& s, int line) {
  std::vector<double> out;
  for (const auto& item : to_list(s, line)) out.push_back(to_double(item, line));
  return out;
}

template <class T>
std::string join(const std::vector<T>& v, const std::function<std::string(const T&)>& f) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + f(v[i]);
  return s + "]";
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table{
      {"potential.v0", [](RunConfig& c, const std::string& v, int l) { c.v0 = to_doubles(v, l); }},
      {"potential.w", [](RunConfig& c, const std::string& v, int l) { c.w = to_doubles(v, l); }},
      {"potential.pt_enforced",
       [](RunConfig& c, const std::string& v, int l) { c.pt_enforced = to_bool(v, l); }},
      {"E0", [](RunConfig& c, const std::string& v, int l) { c.E0 = to_double(v, l); }},
      {"grid.N", [](RunConfig& c, const std::string& v, int l) { c.grid_N = to_int(v, l); }},
      {"grid.L", [](RunConfig& c, const std::string& v, int l) { c.grid_L = to_double(v, l); }},
      {"grid.L_factor",
       [](RunConfig& c, const std::string& v, int l) { c.grid_L_factor = to_double(v, l); }},
      {"sweep.h", [](RunConfig& c, const std::string& v, int l) { c.sweep_h = to_doubles(v, l); }},
      {"sweep.eps",
       [](RunConfig& c, const std::string& v, int l) { c.sweep_eps = to_doubles(v, l); }},
      {"window.center",
       [](RunConfig& c, const std::string& v, int l) {
         const auto xs = to_doubles(v, l);
         if (xs.size() != 2) fail(l, "window.center needs [re, im]");
         c.window_center = cplx(xs[0], xs[1]);
       }},
      {"window.half_width",
       [](RunConfig& c, const std::string& v, int l) { c.window_half_width = to_double(v, l); }},
      {"window.half_height",
       [](RunConfig& c, const std::string& v, int l) { c.window_half_height = to_double(v, l); }},
      {"solver.tol", [](RunConfig& c, const std::string& v, int l) { c.solver_tol = to_double(v, l); }},
      {"solver.m", [](RunConfig& c, const std::string& v, int l) { c.solver_m = to_int(v, l); }},
      {"solver.max_restart",
       [](RunConfig& c, const std::string& v, int l) { c.solver_max_restart = to_int(v, l); }},
      {"solver.level_spacing",
       [](RunConfig& c, const std::string& v, int l) { c.solver_level_spacing = to_double(v, l); }},
      {"solver.verify",
       [](RunConfig& c, const std::string& v, int l) { c.solver_verify = to_bool(v, l); }},
      {"quadrature.n_nodes",
       [](RunConfig& c, const std::string& v, int l) { c.quadrature_n_nodes = to_int(v, l); }},
      {"localization.C",
       [](RunConfig& c, const std::string& v, int l) { c.localization_C = to_double(v, l); }},
      {"output.dir", [](RunConfig& c, const std::string& v, int) { c.output_dir = v; }},
      {"output.formats",
       [](RunConfig& c, const std::string& v, int l) {
         c.output_formats = to_list(v, l);
         for (const auto& f : c.output_formats)
           if (f != "csv" && f != "svg") fail(l, "unknown output format '" + f + "'");
       }},
  };
  return table;
}

}  // namespace

PerturbedPotential RunConfig::potential() const {
  try {
    return PerturbedPotential(v0, w, pt_enforced);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }
}

Rectangle RunConfig::window() const {
  return Rectangle(window_center, window_half_width, window_half_height);
}

std::string RunConfig::serialize() const {
  const std::function<std::string(const double&)> num = [](const double& x) { return format_double(x); };
  const std::function<std::string(const std::string&)> str = [](const std::string& x) { return x; };
  std::ostringstream os;
  os << "potential.v0 = " << join(v0, num) << "\n"
     << "potential.w = " << join(w, num) << "\n"
     << "potential.pt_enforced = " << (pt_enforced ? "true" : "false") << "\n"
     << "E0 = " << format_double(E0) << "\n"
     << "grid.N = " << grid_N << "\n"
     << "grid.L = " << format_double(grid_L) << "\n"
     << "grid.L_factor = " << format_double(grid_L_factor) << "\n"
     << "sweep.h = " << join(sweep_h, num) << "\n"
     << "sweep.eps = " << join(sweep_eps, num) << "\n"
     << "window.center = [" << format_double(window_center.real()) << ", "
     << format_double(window_center.imag()) << "]\n"
     << "window.half_width = " << format_double(window_half_width) << "\n"
     << "window.half_height = " << format_double(window_half_height) << "\n"
     << "solver.tol = " << format_double(solver_tol) << "\n"
     << "solver.m = " << solver_m << "\n"
     << "solver.max_restart = " << solver_max_restart << "\n"
     << "solver.level_spacing = " << format_double(solver_level_spacing) << "\n"
     << "solver.verify = " << (solver_verify ? "true" : "false") << "\n"
     << "quadrature.n_nodes = " << quadrature_n_nodes << "\n"
     << "localization.C = " << format_double(localization_C) << "\n"
     << "output.dir = " << output_dir << "\n"
     << "output.formats = " << join(output_formats, str) << "\n";
  return os.str();
}

std::string RunConfig::hash() const {
  // output location does not change results
  RunConfig c = *this;
  c.output_dir = ".";
  c.output_formats = {"csv"};
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(c.serialize())));
  return buf;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  std::map<std::string, int> seen;
  while (std::getline(is, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) fail(line, "unknown key '" + key + "'");
    if (seen.count(key)) fail(line, "duplicate key '" + key + "'");
    seen[key] = line;
    if (value.empty()) fail(line, "missing value for '" + key + "'");
    it->second(cfg, value, line);
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate(const RunConfig& cfg) {
  (void)cfg.potential();
  if (cfg.grid_N < 4 || cfg.grid_N % 2 != 0) fail(0, "grid.N must be even and >= 4");
  if (cfg.grid_L < 0.0 || !(cfg.grid_L_factor > 1.0)) fail(0, "grid.L must be >= 0 and grid.L_factor > 1");
  if (cfg.sweep_h.empty()) fail(0, "sweep.h is empty");
  for (double h : cfg.sweep_h)
    if (!(h > 0.0 && h <= 1.0)) fail(0, "sweep.h entries must lie in (0, 1]");
  if (cfg.sweep_eps.empty()) fail(0, "sweep.eps is empty");
  if (!(cfg.window_half_width > 0.0) || !(cfg.window_half_height > 0.0))
    fail(0, "window half sizes must be positive");
  if (!(cfg.solver_tol > 0.0)) fail(0, "solver.tol must be positive");
  if (cfg.solver_m < 1 || cfg.solver_m > 40) fail(0, "solver.m must lie in [1, 40]");
  if (cfg.solver_max_restart < 0) fail(0, "solver.max_restart must be >= 0");
  if (cfg.quadrature_n_nodes < 16) fail(0, "quadrature.n_nodes must be >= 16");
  if (!(cfg.localization_C > 0.0)) fail(0, "localization.C must be positive");
  if (cfg.output_dir.empty()) fail(0, "output.dir is empty");
}

Grid grid_for(const RunConfig& cfg, const Rectangle& window) {
  if (cfg.grid_L > 0.0) return Grid(cfg.grid_L, cfg.grid_N);
  const auto pot = cfg.potential();
  auto q = pot.shifted(cplx(window.re_max(), 0.0), 0.0);
  double outer = 0.0;
  for (const cplx& r : poly_roots(q))
    if (std::abs(r.imag()) < 1e-8) outer = std::max(outer, std::abs(r.real()));
  if (outer == 0.0) throw Error(ErrorCode::ConfigError, "no real turning point at the window top");
  return Grid(cfg.grid_L_factor * outer, cfg.grid_N);
}

}  // namespace ptwell
