#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ptwell/error.hpp"
#include "ptwell/harness.hpp"

using namespace ptwell;

TEST_CASE("config parses, round trips and hashes") {
  const std::string text =
      "# test config\n"
      "sweep.h = [0.2, 0.1]\n"
      "sweep.eps = [0, 1e-4]   # two cells each\n"
      "window.center = [-1, 0]\n"
      "window.half_width = 0.1\n"
      "solver.m = 8\n"
      "output.formats = [csv, svg]\n";
  const auto cfg = parse_config(text);
  CHECK(cfg.sweep_h == std::vector<double>{0.2, 0.1});
  CHECK(cfg.sweep_eps[1] == 1e-4);
  CHECK(cfg.window_center == cplx(-1, 0));
  CHECK(cfg.solver_m == 8);
  CHECK(cfg.output_formats.size() == 2);

  const auto again = parse_config(cfg.serialize());
  CHECK(again.serialize() == cfg.serialize());
  CHECK(again.hash() == cfg.hash());
  CHECK(cfg.hash().size() == 16);

  auto moved = cfg;
  moved.output_dir = "/elsewhere";
  CHECK(moved.hash() == cfg.hash());
  moved.solver_tol = 1e-9;
  CHECK(moved.hash() != cfg.hash());
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("bogus = 1\n"), Error);
  CHECK_THROWS_AS(parse_config("grid.N = 10\ngrid.N = 12\n"), Error);
  CHECK_THROWS_AS(parse_config("grid.N = 11\n"), Error);
  CHECK_THROWS_AS(parse_config("sweep.h = 0.1\n"), Error);
  CHECK_THROWS_AS(parse_config("sweep.h = [2]\n"), Error);
  CHECK_THROWS_AS(parse_config("solver.verify = yes\n"), Error);
  CHECK_THROWS_AS(parse_config("output.formats = [pdf]\n"), Error);
  CHECK_THROWS_AS(load_config("/nonexistent/ptwell.cfg"), Error);
  try {
    parse_config("\n\nwindow.half_width = x\n");
    FAIL("expected a ConfigError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("grid policy") {
  RunConfig cfg;
  cfg.window_center = cplx(-1.0, 0);
  cfg.window_half_width = 0.1;
  const auto g = grid_for(cfg, cfg.window());
  // outer turning point at E = -0.9 is about 2.765
  CHECK(g.L == doctest::Approx(1.5 * 2.76510).epsilon(1e-4));
  cfg.grid_L = 7.0;
  CHECK(grid_for(cfg, cfg.window()).L == 7.0);
}

TEST_CASE("spectrum csv round trip") {
  std::vector<SpectrumRow> rows{{"fd", 0.2, 0.0, cplx(-1.05421599, 0), 1e-13},
                                {"wkb", 0.2, 1e-4, cplx(-1.0530900, 2.1e-4), 0.0}};
  std::ostringstream os;
  write_spectrum_csv(os, rows, "00112233aabbccdd");
  std::istringstream is(os.str());
  std::string hash;
  const auto back = read_spectrum_csv(is, &hash);
  CHECK(hash == "00112233aabbccdd");
  REQUIRE(back.size() == 2);
  CHECK(back[1].method == "wkb");
  CHECK(back[1].lambda == rows[1].lambda);
  CHECK(back[0].residual == rows[0].residual);

  std::istringstream mixed(
      "method,h,epsilon,re_lambda,im_lambda,residual,config_hash\n"
      "fd,0.2,0,-1,0,0,aaaa\nfd,0.2,0,-1,0,0,bbbb\n");
  CHECK_THROWS_AS(read_spectrum_csv(mixed), Error);
  std::istringstream wrong("a,b\n");
  CHECK_THROWS_AS(read_spectrum_csv(wrong), Error);
}

TEST_CASE("other writers") {
  std::ostringstream e;
  write_errors_csv(e, {{0.1, 0.0, "PairLost", "a, b"}}, "h");
  CHECK(e.str() == "h,epsilon,code,message,config_hash\n0.1,0,PairLost,a; b,h\n");

  FigureResult fig;
  fig.panels.push_back({1e-3, Rectangle(cplx(-0.15, 0), 0.5, 0.01), {{"fd", 0.01, 1e-3, cplx(-0.5, 0.002), 0.0}}});
  std::ostringstream svg;
  write_figure_svg(svg, fig, "abc");
  CHECK(count_svg_points(svg.str()) == 1);
  CHECK(svg.str().find("config_hash=abc") != std::string::npos);

  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-2.5) == "-2.5");
  CHECK(figure1_eps().size() == 20);
  CHECK(figure1_eps().front() == doctest::Approx(1e-5));
}

TEST_CASE("small sweep and comparison") {
  RunConfig cfg;
  cfg.sweep_h = {0.2};
  cfg.sweep_eps = {0.0};
  cfg.grid_N = 1000;
  cfg.window_center = cplx(-1.0, 0);
  cfg.window_half_width = 0.1;
  cfg.window_half_height = 0.01;
  const auto fd = run_sweep(cfg);
  CHECK(fd.errors.empty());
  REQUIRE(fd.rows.size() == 2);
  const auto wkb = run_wkb(cfg);
  CHECK(wkb.errors.empty());
  const auto rep = compare_spectrum(cfg);
  REQUIRE(rep.cells.size() == 1);
  CHECK(rep.cells[0].error.empty());
  CHECK(rep.cells[0].matched.size() == 2);
  CHECK(rep.cells[0].max_delta < 0.05 * 0.2);
  CHECK(rep.config_hash == cfg.hash());
}
