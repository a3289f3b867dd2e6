#include "ptwell/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ptwell/error.hpp"

namespace ptwell {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegreeZero: return "DegreeZero";
    case ErrorCode::DerivativeUnderflow: return "DerivativeUnderflow";
    case ErrorCode::BoundaryZeroSuspected: return "BoundaryZeroSuspected";
    case ErrorCode::InvalidPotential: return "InvalidPotential";
    case ErrorCode::NotDoubleWell: return "NotDoubleWell";
    case ErrorCode::NearDegenerateTurningPoint: return "NearDegenerateTurningPoint";
    case ErrorCode::LabelAmbiguity: return "LabelAmbiguity";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::BranchJump: return "BranchJump";
    case ErrorCode::CertificationMismatch: return "CertificationMismatch";
    case ErrorCode::A7Violation: return "A7Violation";
    case ErrorCode::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorCode::SeedCountMismatch: return "SeedCountMismatch";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::SingularShift: return "SingularShift";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::PairLost: return "PairLost";
    case ErrorCode::MatchCardinalityMismatch: return "MatchCardinalityMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// ComplexPolynomial

ComplexPolynomial::ComplexPolynomial(std::vector<cplx> coeffs)
    : coeffs_(std::move(coeffs)) {
  trim();
}

ComplexPolynomial ComplexPolynomial::from_real(std::span<const double> coeffs) {
  return ComplexPolynomial(std::vector<cplx>(coeffs.begin(), coeffs.end()));
}

ComplexPolynomial ComplexPolynomial::from_roots(std::span<const cplx> roots) {
  std::vector<cplx> c{1.0};
  for (cplx r : roots) {
    std::vector<cplx> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return ComplexPolynomial(std::move(c));
}

void ComplexPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
}

cplx ComplexPolynomial::operator()(cplx z) const noexcept {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

ComplexPolynomial ComplexPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return ComplexPolynomial{};
  std::vector<cplx> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    d[k - 1] = coeffs_[k] * static_cast<double>(k);
  return ComplexPolynomial(std::move(d));
}

ComplexPolynomial ComplexPolynomial::deflate(cplx root) const {
  if (coeffs_.size() <= 1) return ComplexPolynomial{};
  const std::size_t n = coeffs_.size() - 1;
  std::vector<cplx> q(n);
  cplx carry = coeffs_[n];
  for (std::size_t k = n; k-- > 0;) {
    q[k] = carry;
    carry = coeffs_[k] + carry * root;
  }
  return ComplexPolynomial(std::move(q));
}

double ComplexPolynomial::scale_at(cplx z) const noexcept {
  double m = 0.0;
  for (const cplx& c : coeffs_) m = std::max(m, std::abs(c));
  return m * std::pow(std::max(1.0, std::abs(z)), std::max(degree(), 0));
}

ComplexPolynomial ComplexPolynomial::operator+(const ComplexPolynomial& other) const {
  std::vector<cplx> c(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) c[k] += other.coeffs_[k];
  return ComplexPolynomial(std::move(c));
}

ComplexPolynomial ComplexPolynomial::operator*(cplx s) const {
  std::vector<cplx> c = coeffs_;
  for (auto& v : c) v *= s;
  return ComplexPolynomial(std::move(c));
}

// ---------------------------------------------------------------------------
// Aberth-Ehrlich

std::vector<cplx> poly_roots(const ComplexPolynomial& p, double tol) {
  const int n = p.degree();
  if (n < 1)
    throw Error(ErrorCode::DegreeZero, "polynomial of degree " + std::to_string(n));
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");

  const auto& a = p.coeffs();
  if (n == 1) return {-a[0] / a[1]};

  const ComplexPolynomial dp = p.derivative();
  double radius = std::pow(std::abs(a[0] / a[n]), 1.0 / n);
  if (!(radius > 0.0) || !std::isfinite(radius)) radius = 1.0;

  std::vector<cplx> z(n);
  for (int k = 0; k < n; ++k) {
    // the offset breaks the symmetry that stalls the iteration on even
    // or real polynomials
    const double theta = 2.0 * kPi * k / n + 0.4;
    z[k] = std::polar(radius, theta);
  }

  constexpr int kMaxIter = 200;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  std::vector<bool> done(n, false);
  for (int iter = 0; iter < kMaxIter; ++iter) {
    bool all_done = true;
    for (int k = 0; k < n; ++k) {
      if (done[k]) continue;
      const cplx pz = p(z[k]);
      if (std::abs(pz) <= 4.0 * kEps * p.scale_at(z[k])) {
        done[k] = true;
        continue;
      }
      const cplx ratio = pz / dp(z[k]);
      cplx sum{};
      for (int j = 0; j < n; ++j)
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      const cplx w = ratio / (1.0 - ratio * sum);
      z[k] -= w;
      if (std::abs(w) <= 4.0 * kEps * std::max(1.0, std::abs(z[k])))
        done[k] = true;
      else
        all_done = false;
    }
    if (all_done) break;
  }

  for (const cplx& r : z) {
    const double res = std::abs(p(r));
    if (!(res <= tol * p.scale_at(r))) {
      std::ostringstream os;
      os << "Aberth iteration left residual " << res << " at z=" << r
         << " (degree " << n << ")";
      throw Error(ErrorCode::NoConvergence, os.str());
    }
  }
  return z;
}

// ---------------------------------------------------------------------------

cplx newton_refine(const AnalyticFunction& fn, cplx seed, double tol, int max_iter) {
  cplx z = seed;
  cplx fz = fn.f(z);
  for (int iter = 0; iter <= max_iter; ++iter) {
    const cplx d = fn.df(z);
    if (std::abs(d) < 1e-300) {
      std::ostringstream os;
      os << "|f'| underflows at z=" << z;
      throw Error(ErrorCode::DerivativeUnderflow, os.str());
    }
    if (std::abs(fz) <= tol) return z;
    if (iter == max_iter) break;

    const cplx step = fz / d;
    double lambda = 1.0;
    bool decreased = false;
    for (int halving = 0; halving <= 40; ++halving) {
      const cplx trial = z - lambda * step;
      const cplx ft = fn.f(trial);
      if (std::abs(ft) < std::abs(fz)) {
        z = trial;
        fz = ft;
        decreased = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!decreased) break;
  }
  std::ostringstream os;
  os << "Newton stalled at z=" << z << " with |f|=" << std::abs(fz) << " > " << tol;
  throw Error(ErrorCode::NoConvergence, os.str());
}

// ---------------------------------------------------------------------------

QuadratureRule chebyshev_rule(ChebyshevKind kind, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "chebyshev_rule needs n >= 1");
  QuadratureRule rule{kind, std::vector<double>(n), std::vector<double>(n)};
  for (int j = 1; j <= n; ++j) {
    // nodes come out decreasing in j; store them increasing
    const int slot = n - j;
    if (kind == ChebyshevKind::First) {
      rule.nodes[slot] = std::cos((2.0 * j - 1.0) * kPi / (2.0 * n));
      rule.weights[slot] = kPi / n;
    } else {
      const double t = j * kPi / (n + 1.0);
      rule.nodes[slot] = std::cos(t);
      rule.weights[slot] = kPi / (n + 1.0) * std::sin(t) * std::sin(t);
    }
  }
  // cos() of symmetric angles is not exactly antisymmetric in floating point
  for (int j = 0; j < n / 2; ++j) {
    const double s = 0.5 * (rule.nodes[n - 1 - j] - rule.nodes[j]);
    rule.nodes[j] = -s;
    rule.nodes[n - 1 - j] = s;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

// ---------------------------------------------------------------------------

Rectangle::Rectangle(cplx c, double hw, double hh)
    : center(c), half_width(hw), half_height(hh) {
  if (!(hw > 0.0) || !(hh > 0.0))
    throw Error(ErrorCode::InvalidArgument, "rectangle half sizes must be positive");
}

bool Rectangle::contains(cplx z) const noexcept {
  return std::abs(z.real() - center.real()) < half_width &&
         std::abs(z.imag() - center.imag()) < half_height;
}

Rectangle Rectangle::inflated(double factor) const {
  return Rectangle(center, half_width * factor, half_height * factor);
}

namespace {

struct WindingState {
  const std::function<cplx(cplx)>& f;
  double floor;
};

double phase_increment(WindingState& st, cplx za, cplx fa, cplx zb, cplx fb, int depth) {
  const double d = std::arg(fb / fa);
  if (std::abs(d) < kPi / 2.0 || depth >= 48) return d;
  const cplx zm = 0.5 * (za + zb);
  const cplx fm = st.f(zm);
  if (std::abs(fm) < st.floor) {
    std::ostringstream os;
    os << "|f|=" << std::abs(fm) << " at boundary point " << zm;
    throw Error(ErrorCode::BoundaryZeroSuspected, os.str());
  }
  return phase_increment(st, za, fa, zm, fm, depth + 1) +
         phase_increment(st, zm, fm, zb, fb, depth + 1);
}

}  // namespace

int winding_count(const std::function<cplx(cplx)>& f, const Rectangle& box,
                  int samples_per_side) {
  if (samples_per_side < 64)
    throw Error(ErrorCode::InvalidArgument, "winding_count needs >= 64 samples per side");

  const cplx corners[4] = {{box.re_min(), box.im_min()},
                           {box.re_max(), box.im_min()},
                           {box.re_max(), box.im_max()},
                           {box.re_min(), box.im_max()}};
  std::vector<cplx> zs;
  zs.reserve(4 * samples_per_side + 1);
  for (int side = 0; side < 4; ++side) {
    const cplx a = corners[side];
    const cplx b = corners[(side + 1) % 4];
    for (int j = 0; j < samples_per_side; ++j)
      zs.push_back(a + (b - a) * (static_cast<double>(j) / samples_per_side));
  }
  zs.push_back(corners[0]);

  std::vector<cplx> fs(zs.size());
  std::vector<double> mags(zs.size());
  for (std::size_t j = 0; j < zs.size(); ++j) {
    fs[j] = f(zs[j]);
    mags[j] = std::abs(fs[j]);
  }
  std::vector<double> sorted = mags;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];
  WindingState st{f, 1e-13 * median};
  for (std::size_t j = 0; j < zs.size(); ++j) {
    if (!(mags[j] >= st.floor) || mags[j] == 0.0) {
      std::ostringstream os;
      os << "|f|=" << mags[j] << " at boundary point " << zs[j] << " (median " << median
         << ")";
      throw Error(ErrorCode::BoundaryZeroSuspected, os.str());
    }
  }

  double total = 0.0;
  for (std::size_t j = 0; j + 1 < zs.size(); ++j)
    total += phase_increment(st, zs[j], fs[j], zs[j + 1], fs[j + 1], 0);
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

}  // namespace ptwell
