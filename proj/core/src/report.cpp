#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "ptwell/harness.hpp"

namespace ptwell {

void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumRow>& rows,
                        const std::string& config_hash) {
  os << "method,h,epsilon,re_lambda,im_lambda,residual,config_hash\n";
  for (const auto& r : rows)
    os << r.method << ',' << format_double(r.h) << ',' << format_double(r.eps) << ','
       << format_double(r.lambda.real()) << ',' << format_double(r.lambda.imag()) << ','
       << format_double(r.residual) << ',' << config_hash << '\n';
}

void write_errors_csv(std::ostream& os, const std::vector<CellError>& errors,
                      const std::string& config_hash) {
  os << "h,epsilon,code,message,config_hash\n";
  for (const auto& e : errors) {
    std::string msg = e.message;
    std::replace(msg.begin(), msg.end(), ',', ';');
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    os << format_double(e.h) << ',' << format_double(e.eps) << ',' << e.code << ',' << msg << ','
       << config_hash << '\n';
  }
}

void write_threshold_csv(std::ostream& os, const std::vector<ThresholdResult>& rows,
                         const std::string& config_hash) {
  os << "E1,h,eps_c_model,eps_star_fd,ratio,config_hash\n";
  for (const auto& r : rows)
    os << format_double(r.E1) << ',' << format_double(r.h) << ',' << format_double(r.eps_c_model)
       << ',' << format_double(r.eps_star_fd) << ',' << format_double(r.ratio) << ','
       << config_hash << '\n';
}

void write_stokes_csv(std::ostream& os, const std::vector<StokesCurve>& curves) {
  os << "curve_id,origin,kind,k,s,re_z,im_z\n";
  for (std::size_t id = 0; id < curves.size(); ++id) {
    const auto& c = curves[id];
    double s = 0.0;
    for (std::size_t j = 0; j < c.points.size(); ++j) {
      if (j > 0) s += std::abs(c.points[j] - c.points[j - 1]);
      os << id << ',' << c.origin << ',' << to_string(c.kind) << ',' << c.k << ','
         << format_double(s) << ',' << format_double(c.points[j].real()) << ','
         << format_double(c.points[j].imag()) << '\n';
    }
  }
}

std::vector<SpectrumRow> read_spectrum_csv(std::istream& is, std::string* hash) {
  std::string line;
  if (!std::getline(is, line) || line != "method,h,epsilon,re_lambda,im_lambda,residual,config_hash")
    throw Error(ErrorCode::ConfigError, "not a spectrum.csv header");
  std::vector<SpectrumRow> rows;
  std::string seen;
  int n = 1;
  while (std::getline(is, line)) {
    ++n;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() != 7) throw Error(ErrorCode::ConfigError, "line " + std::to_string(n) + ": expected 7 fields");
    if (seen.empty()) seen = f[6];
    if (f[6] != seen)
      throw Error(ErrorCode::ConfigError, "mixed config hashes: " + seen + " and " + f[6]);
    try {
      rows.push_back({f[0], std::stod(f[1]), std::stod(f[2]), cplx(std::stod(f[3]), std::stod(f[4])),
                      std::stod(f[5])});
    } catch (const std::exception&) {
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(n) + ": bad number");
    }
  }
  if (hash) *hash = seen;
  return rows;
}

// ---------------------------------------------------------------------------

namespace {

struct Axis {
  double lo, hi, px0, px1;
  double operator()(double v) const { return px0 + (v - lo) / (hi - lo) * (px1 - px0); }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace

void write_figure_svg(std::ostream& os, const FigureResult& fig, const std::string& config_hash) {
  constexpr int kCols = 5, kW = 260, kH = 200, kPad = 40;
  const int n = static_cast<int>(fig.panels.size());
  const int rows = (n + kCols - 1) / kCols;
  const int width = kCols * (kW + kPad) + kPad, height = rows * (kH + kPad + 20) + kPad;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"10\">\n"
     << "<metadata>config_hash=" << config_hash << "</metadata>\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int i = 0; i < n; ++i) {
    const auto& p = fig.panels[i];
    const double x0 = kPad + (i % kCols) * (kW + kPad);
    const double y0 = kPad + (i / kCols) * (kH + kPad + 20);
    const Axis ax{p.window.re_min(), p.window.re_max(), x0, x0 + kW};
    const Axis ay{p.window.im_min(), p.window.im_max(), y0 + kH, y0};
    os << "<g class=\"panel\" data-eps=\"" << format_double(p.eps) << "\" data-re=\""
       << label(p.window.re_min()) << "," << label(p.window.re_max()) << "\" data-im=\""
       << label(p.window.im_min()) << "," << label(p.window.im_max()) << "\">\n"
       << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y0) << "\" width=\"" << kW << "\" height=\""
       << kH << "\" fill=\"none\" stroke=\"black\"/>\n"
       << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(ay(0.0)) << "\" x2=\"" << fmt(x0 + kW)
       << "\" y2=\"" << fmt(ay(0.0)) << "\" stroke=\"#bbb\"/>\n"
       << "<text x=\"" << fmt(x0) << "\" y=\"" << fmt(y0 - 6) << "\">eps = " << label(p.eps)
       << "</text>\n"
       << "<text x=\"" << fmt(x0) << "\" y=\"" << fmt(y0 + kH + 12) << "\">" << label(p.window.re_min())
       << "</text>\n"
       << "<text x=\"" << fmt(x0 + kW) << "\" y=\"" << fmt(y0 + kH + 12)
       << "\" text-anchor=\"end\">" << label(p.window.re_max()) << "</text>\n"
       << "<text x=\"" << fmt(x0 - 4) << "\" y=\"" << fmt(y0 + 8) << "\" text-anchor=\"end\">"
       << label(p.window.im_max()) << "</text>\n"
       << "<text x=\"" << fmt(x0 - 4) << "\" y=\"" << fmt(y0 + kH) << "\" text-anchor=\"end\">"
       << label(p.window.im_min()) << "</text>\n";
    for (const auto& r : p.points)
      os << "<circle class=\"eig\" cx=\"" << fmt(ax(r.lambda.real())) << "\" cy=\""
         << fmt(ay(r.lambda.imag())) << "\" r=\"2\" fill=\"#1f4e9c\"/>\n";
    os << "</g>\n";
  }
  os << "</svg>\n";
}

void write_stokes_svg(std::ostream& os, const std::vector<StokesCurve>& curves,
                      const Rectangle& domain) {
  constexpr int kSize = 600;
  const double scale = kSize / (2.0 * std::max(domain.half_width, domain.half_height));
  auto px = [&](cplx z) {
    return std::make_pair(kSize / 2.0 + (z.real() - domain.center.real()) * scale,
                          kSize / 2.0 - (z.imag() - domain.center.imag()) * scale);
  };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
     << "\">\n<metadata>stokes: level sets of Re phi; anti-stokes: level sets of Im phi; "
        "phi = integral of (V - E)^(1/2)</metadata>\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& c : curves) {
    os << "<polyline fill=\"none\" stroke=\""
       << (c.kind == CurveKind::Stokes ? "#c0392b" : "#2471a3") << "\" stroke-width=\"1\" points=\"";
    for (const cplx& z : c.points) {
      const auto [x, y] = px(z);
      os << fmt(x) << ',' << fmt(y) << ' ';
    }
    os << "\"/>\n";
  }
  std::vector<cplx> origins;
  for (const auto& c : curves)
    if (std::find(origins.begin(), origins.end(), c.origin_point) == origins.end())
      origins.push_back(c.origin_point);
  for (const cplx& z : origins) {
    const auto [x, y] = px(z);
    os << "<circle class=\"tp\" cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"3\"/>\n";
  }
  os << "</svg>\n";
}

std::size_t count_svg_points(const std::string& svg) {
  std::size_t count = 0;
  for (std::size_t pos = 0; (pos = svg.find("class=\"eig\"", pos)) != std::string::npos; ++pos) ++count;
  return count;
}

}  // namespace ptwell
