#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace ptwell {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Polynomial with complex coefficients stored in ascending degree.
/// Trailing zero coefficients are trimmed on construction.
class ComplexPolynomial {
public:
  ComplexPolynomial() = default;
  explicit ComplexPolynomial(std::vector<cplx> coeffs);

  static ComplexPolynomial from_real(std::span<const double> coeffs);
  /// Monic polynomial prod (z - r_j).
  static ComplexPolynomial from_roots(std::span<const cplx> roots);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
  cplx leading() const { return coeffs_.back(); }

  cplx operator()(cplx z) const noexcept;
  ComplexPolynomial derivative() const;

  /// Quotient of synthetic division by (z - root); the remainder is dropped.
  ComplexPolynomial deflate(cplx root) const;

  /// max|coeff| * max(1,|z|)^deg, the magnitude against which residuals
  /// at z are judged.
  double scale_at(cplx z) const noexcept;

  ComplexPolynomial operator+(const ComplexPolynomial& other) const;
  ComplexPolynomial operator*(cplx s) const;

private:
  void trim();
  std::vector<cplx> coeffs_;
};

/// All deg(p) roots by Aberth-Ehrlich simultaneous iteration. Each returned
/// root satisfies |p(z)| <= tol * p.scale_at(z); multiple roots come back as
/// clusters of repeated entries.
std::vector<cplx> poly_roots(const ComplexPolynomial& p, double tol = 1e-12);

/// An analytic function together with its derivative.
struct AnalyticFunction {
  std::function<cplx(cplx)> f;
  std::function<cplx(cplx)> df;
};

/// Damped Newton iteration. Returns z with |f(z)| <= tol. Steps are halved
/// (at most 40 times) while |f| fails to decrease.
cplx newton_refine(const AnalyticFunction& fn, cplx seed, double tol,
                   int max_iter = 60);

enum class ChebyshevKind { First, Second };

struct QuadratureRule {
  ChebyshevKind kind;
  std::vector<double> nodes;  // strictly increasing in (-1, 1)
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Gauss-Chebyshev rule. First kind integrates g(s)/sqrt(1-s^2), second kind
/// integrates g(s)*sqrt(1-s^2); both exact for deg g <= 2n-1.
QuadratureRule chebyshev_rule(ChebyshevKind kind, int n);

struct Rectangle {
  cplx center;
  double half_width;
  double half_height;

  Rectangle(cplx c, double hw, double hh);

  bool contains(cplx z) const noexcept;
  Rectangle inflated(double factor) const;
  double re_min() const noexcept { return center.real() - half_width; }
  double re_max() const noexcept { return center.real() + half_width; }
  double im_min() const noexcept { return center.imag() - half_height; }
  double im_max() const noexcept { return center.imag() + half_height; }
};

/// Number of zeros of f inside box (with multiplicity) from the argument
/// increment along the counterclockwise boundary. A boundary step whose
/// phase jump reaches pi/2 is subdivided.
int winding_count(const std::function<cplx(cplx)>& f, const Rectangle& box,
                  int samples_per_side = 64);

}  // namespace ptwell
