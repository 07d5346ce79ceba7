// Truncated branched Fourier functions on the circle.
//
// A branched function is f(theta) = degree * theta / (2*pi) + sum_{|n|<=N} c_n e^{i n theta},
// so f(theta + 2*pi) = f(theta) + degree.  The antisymmetric form
//
//   S(f, g) = int_{S^1} f dg - degree_f * g(0) - (1/2) degree_f degree_g
//
// reduces on truncated data to the closed form
//
//   S(f, g) = degree_g * c_0(f) - degree_f * c_0(g) + 2*pi*i * sum_{n != 0} n c_{-n}(f) c_n(g),
//
// which pairing() evaluates.  quadrature_pairing() integrates the defining
// formula numerically and serves as an independent cross-check.  Branch values
// at theta = 0 are taken from the right, i.e. g(0) = c_0 + sum_{n != 0} c_n.

#pragma once

#include <complex>
#include <vector>

namespace openjac {

using cplx = std::complex<double>;

class BranchedFunction {
 public:
  BranchedFunction() : degree_(0.0), truncation_(0), coeffs_(1, cplx(0.0)) {}
  BranchedFunction(cplx degree, int truncation)
      : degree_(degree), truncation_(truncation),
        coeffs_(2 * truncation + 1, cplx(0.0)) {}

  static BranchedFunction zero(int truncation) { return BranchedFunction(0.0, truncation); }
  static BranchedFunction constant(cplx value, int truncation);
  // degree * theta / (2*pi), no periodic part
  static BranchedFunction winding(cplx degree, int truncation);
  // a * e^{i n theta}
  static BranchedFunction mode(int n, cplx a, int truncation);

  cplx degree() const { return degree_; }
  int truncation() const { return truncation_; }

  cplx coeff(int n) const { return coeffs_[static_cast<size_t>(n + truncation_)]; }
  void set_coeff(int n, cplx value) { coeffs_[static_cast<size_t>(n + truncation_)] = value; }
  void set_degree(cplx d) { degree_ = d; }

  cplx eval(double theta) const;
  // value of the branch at theta = 0 taken from (0, 2*pi)
  cplx value_at_zero() const;
  // derivative; periodic, returned with degree 0
  BranchedFunction derivative() const;

  bool is_real(double tol = 1e-12) const;
  double max_abs_coeff() const;

  BranchedFunction operator+(const BranchedFunction& o) const;
  BranchedFunction operator-(const BranchedFunction& o) const;
  BranchedFunction operator*(cplx s) const;
  BranchedFunction& operator+=(const BranchedFunction& o);
  BranchedFunction conj() const;

 private:
  cplx degree_;
  int truncation_;
  std::vector<cplx> coeffs_;  // index n + truncation_, n in [-N, N]
};

// S(f, g) via the closed form in Fourier coefficients.  Throws on truncation
// mismatch.  Complex-bilinear in both arguments.
cplx pairing(const BranchedFunction& f, const BranchedFunction& g);

// S(f, g) by uniform trapezoid quadrature of the defining integral, using only
// pointwise branched evaluations.  The winding part of f is integrated by
// parts first so that every trapezoid sees a periodic trigonometric
// polynomial, which the rule integrates exactly once samples >= 4N + 4.
cplx quadrature_pairing(const BranchedFunction& f, const BranchedFunction& g, int samples);

}  // namespace openjac
