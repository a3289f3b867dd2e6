#include "ptwell/stokes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "ptwell/error.hpp"

namespace ptwell {

std::string to_string(CurveKind kind) {
  return kind == CurveKind::Stokes ? "stokes" : "anti-stokes";
}

double StokesCurve::arc_length() const {
  double s = 0.0;
  for (std::size_t j = 1; j < points.size(); ++j) s += std::abs(points[j] - points[j - 1]);
  return s;
}

namespace {

constexpr double kTwoPi = 2.0 * kPi;

// Gauss-Legendre nodes/weights on [0, 1].
struct Legendre01 {
  std::vector<double> x, w;
  explicit Legendre01(int n) {
    for (int i = 0; i < n; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x.push_back(0.5 * (1.0 - z));
      w.push_back(1.0 / ((1.0 - z * z) * dp * dp));
    }
  }
};

cplx nearest_branch(cplx s, cplx ref) { return std::abs(s - ref) <= std::abs(s + ref) ? s : -s; }

// phi(tp + w)^2 = w^3 (int_0^1 2 s^2 sqrt(R(tp + s^2 w)) ds)^2 with q = (z - tp) R;
// branch free.
cplx phi_squared(const ComplexPolynomial& R, cplx tp, cplx w) {
  static const Legendre01 rule(24);
  cplx acc{}, ref = std::sqrt(R(tp));
  // nodes ascend in s: walk from tp outward
  for (std::size_t jj = 0; jj < rule.x.size(); ++jj) {
    const double s = rule.x[jj];
    ref = nearest_branch(std::sqrt(R(tp + s * s * w)), ref);
    acc += rule.w[jj] * 2.0 * s * s * ref;
  }
  return w * w * w * acc * acc;
}

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t > kTwoPi - 1e-10) t = 0.0;
  return t;
}

class Field {
public:
  Field(const ComplexPolynomial& q, CurveKind kind) : q_(q), rot_(kind == CurveKind::Stokes ? cplx(0, 1) : cplx(1, 0)) {}

  cplx sqrt_q(cplx z, cplx ref) const {
    const cplx s = std::sqrt(q_(z));
    if (std::abs(s) < 5e-13) {
      std::ostringstream os;
      os << "sqrt branches coalesce at z = " << z;
      throw Error(ErrorCode::BranchAmbiguity, os.str());
    }
    return nearest_branch(s, ref);
  }

  cplx direction(cplx z, cplx ref) const {
    const cplx u = rot_ / sqrt_q(z, ref);
    return u / std::abs(u);
  }

  // One RK4 step; ref is sqrt(q) at z on the curve's branch. Returns the new
  // point and updates ref.
  cplx step(cplx z, cplx& ref, double ds) const {
    const cplx k1 = direction(z, ref);
    const cplx k2 = direction(z + 0.5 * ds * k1, ref);
    const cplx k3 = direction(z + 0.5 * ds * k2, ref);
    const cplx k4 = direction(z + ds * k3, ref);
    const cplx zn = z + ds / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    ref = sqrt_q(zn, ref);
    return zn;
  }

  // Simpson increment of phi along the chord [a, b], sqrt continued from ref_a.
  cplx phi_increment(cplx a, cplx b, cplx ref_a) const {
    const cplx sm = sqrt_q(0.5 * (a + b), ref_a);
    const cplx sb = sqrt_q(b, sm);
    return (b - a) / 6.0 * (ref_a + 4.0 * sm + sb);
  }

private:
  const ComplexPolynomial& q_;
  cplx rot_;
};

}  // namespace

std::array<double, 3> seed_angles(const ComplexPolynomial& q, cplx tp, CurveKind kind, double r0) {
  const ComplexPolynomial R = q.deflate(tp);
  auto im_psi = [&](double t) { return phi_squared(R, tp, std::polar(r0, t)).imag(); };

  constexpr int kSamples = 720;
  std::vector<double> roots;
  std::vector<double> re_at;
  double t_prev = (kSamples - 0.5) * kTwoPi / kSamples - kTwoPi;
  double f_prev = im_psi(t_prev);
  for (int j = 0; j < kSamples; ++j) {
    const double t = (j + 0.5) * kTwoPi / kSamples;
    const double f = im_psi(t);
    if ((f_prev < 0.0) != (f < 0.0)) {
      double a = t_prev, b = t, fa = f_prev;
      while (b - a > 1e-10) {
        const double m = 0.5 * (a + b);
        const double fm = im_psi(m);
        if ((fa < 0.0) == (fm < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      const double root = 0.5 * (a + b);
      roots.push_back(root);
      re_at.push_back(phi_squared(R, tp, std::polar(r0, root)).real());
    }
    t_prev = t;
    f_prev = f;
  }

  // phi purely imaginary (phi^2 < 0) on Stokes curves, real on anti-Stokes ones
  std::vector<double> picked;
  int other = 0;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    const bool stokes_like = re_at[j] < 0.0;
    if (stokes_like == (kind == CurveKind::Stokes))
      picked.push_back(wrap_angle(roots[j]));
    else
      ++other;
  }
  if (roots.size() != 6 || picked.size() != 3 || other != 3) {
    std::ostringstream os;
    os << "found " << roots.size() << " sign changes around z = " << tp << " (radius " << r0
       << "), " << picked.size() << " of kind " << to_string(kind);
    throw Error(ErrorCode::SeedCountMismatch, os.str());
  }
  std::sort(picked.begin(), picked.end());
  return {picked[0], picked[1], picked[2]};
}

std::vector<cplx> integrate_curve(const ComplexPolynomial& q, cplx z0, cplx sqrt0,
                                  CurveKind kind, double step, int n_steps) {
  const Field field(q, kind);
  cplx ref = field.sqrt_q(z0, sqrt0);
  std::vector<cplx> pts{z0};
  cplx z = z0;
  for (int j = 0; j < n_steps; ++j) {
    z = field.step(z, ref, step);
    pts.push_back(z);
  }
  return pts;
}

StokesCurve trace_stokes(const ComplexPolynomial& q, cplx tp, CurveKind kind, double seed_angle,
                         const TraceOptions& opt, const Rectangle& domain) {
  if (!(opt.step > 0.0) || !(opt.max_arc > 0.0))
    throw Error(ErrorCode::InvalidArgument, "step and max_arc must be positive");
  const Field field(q, kind);

  std::vector<cplx> others;
  if (q.degree() > 1) {
    auto roots = poly_roots(q);
    auto self = std::min_element(roots.begin(), roots.end(), [&](cplx a, cplx b) {
      return std::abs(a - tp) < std::abs(b - tp);
    });
    roots.erase(self);
    others = std::move(roots);
  }

  const double r0 = 10.0 * opt.step;
  const cplx dir0 = std::polar(1.0, seed_angle);
  const cplx z0 = tp + r0 * dir0;
  // outward branch
  cplx ref = std::sqrt(q(z0));
  if (std::real(field.direction(z0, ref) * std::conj(dir0)) < 0.0) ref = -ref;

  StokesCurve c;
  c.origin_point = tp;
  c.kind = kind;
  c.points.push_back(z0);
  cplx z = z0, phi{};
  double arc = 0.0;
  while (arc < opt.max_arc) {
    const cplx ref_a = ref;
    const cplx zn = field.step(z, ref, opt.step);
    phi += field.phi_increment(z, zn, ref_a);
    c.phi_drift = std::max(c.phi_drift, std::abs(kind == CurveKind::Stokes ? phi.real() : phi.imag()));
    z = zn;
    arc += opt.step;
    c.points.push_back(z);
    if (!domain.contains(z)) break;
    bool near = false;
    for (const cplx& r : others) near = near || std::abs(z - r) < 5.0 * opt.step;
    if (near) break;
  }
  return c;
}

StokesCurve trace_stokes(const PerturbedPotential& pot, cplx E, double eps, cplx tp,
                         CurveKind kind, double seed_angle, const TraceOptions& opt,
                         const Rectangle& domain) {
  return trace_stokes(pot.shifted(E, eps), tp, kind, seed_angle, opt, domain);
}

std::vector<StokesCurve> stokes_family(const PerturbedPotential& pot, cplx E, double eps,
                                       const TraceOptions& opt, const Rectangle& domain) {
  const auto q = pot.shifted(E, eps);
  auto roots = poly_roots(q);
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<StokesCurve> out;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (CurveKind kind : {CurveKind::Stokes, CurveKind::AntiStokes}) {
      const auto angles = seed_angles(q, roots[i], kind, 10.0 * opt.step);
      for (int k = 0; k < 3; ++k) {
        auto c = trace_stokes(q, roots[i], kind, angles[k], opt, domain);
        c.origin = static_cast<int>(i);
        c.k = k;
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Uniform bucket grid for nearest-point queries.
class PointIndex {
public:
  PointIndex(const std::vector<cplx>& pts, double cell) : pts_(pts), cell_(cell) {
    for (std::size_t i = 0; i < pts.size(); ++i) buckets_[key(cell_of(pts[i]))].push_back(i);
  }

  double nearest(cplx z) const {
    const auto [cx, cy] = cell_of(z);
    double best = std::numeric_limits<double>::infinity();
    for (long ring = 0; ring < 1 << 20; ++ring) {
      for (long dx = -ring; dx <= ring; ++dx)
        for (long dy = -ring; dy <= ring; ++dy) {
          if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
          const auto it = buckets_.find(key({cx + dx, cy + dy}));
          if (it == buckets_.end()) continue;
          for (std::size_t i : it->second) best = std::min(best, std::abs(pts_[i] - z));
        }
      if (best <= ring * cell_) break;
    }
    return best;
  }

private:
  std::pair<long, long> cell_of(cplx z) const {
    return {static_cast<long>(std::floor(z.real() / cell_)),
            static_cast<long>(std::floor(z.imag() / cell_))};
  }
  static long long key(std::pair<long, long> c) {
    return (static_cast<long long>(c.first) << 32) ^ (c.second & 0xffffffffLL);
  }
  const std::vector<cplx>& pts_;
  double cell_;
  std::unordered_map<long long, std::vector<std::size_t>> buckets_;
};

double directed(const std::vector<cplx>& from, const std::vector<cplx>& to) {
  if (from.empty()) return 0.0;
  if (to.empty()) return std::numeric_limits<double>::infinity();
  double lo_x = to[0].real(), hi_x = lo_x, lo_y = to[0].imag(), hi_y = lo_y;
  for (const cplx& z : to) {
    lo_x = std::min(lo_x, z.real());
    hi_x = std::max(hi_x, z.real());
    lo_y = std::min(lo_y, z.imag());
    hi_y = std::max(hi_y, z.imag());
  }
  const double extent = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const PointIndex index(to, extent / 512.0);
  double d = 0.0;
  for (const cplx& z : from) d = std::max(d, index.nearest(z));
  return d;
}

}  // namespace

double hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace ptwell
