#include "openjac/branched.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace openjac {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

BranchedFunction BranchedFunction::constant(cplx value, int truncation) {
  BranchedFunction f(0.0, truncation);
  f.set_coeff(0, value);
  return f;
}

BranchedFunction BranchedFunction::winding(cplx degree, int truncation) {
  return BranchedFunction(degree, truncation);
}

BranchedFunction BranchedFunction::mode(int n, cplx a, int truncation) {
  if (std::abs(n) > truncation) throw std::invalid_argument("mode outside truncation");
  BranchedFunction f(0.0, truncation);
  f.set_coeff(n, a);
  return f;
}

cplx BranchedFunction::eval(double theta) const {
  cplx v = degree_ * (theta / kTwoPi);
  for (int n = -truncation_; n <= truncation_; ++n) {
    v += coeff(n) * std::exp(cplx(0.0, n * theta));
  }
  return v;
}

cplx BranchedFunction::value_at_zero() const {
  cplx v = 0.0;
  for (int n = -truncation_; n <= truncation_; ++n) v += coeff(n);
  return v;
}

BranchedFunction BranchedFunction::derivative() const {
  BranchedFunction d(0.0, truncation_);
  d.set_coeff(0, degree_ / kTwoPi);
  for (int n = -truncation_; n <= truncation_; ++n) {
    if (n == 0) continue;
    d.set_coeff(n, coeff(n) * cplx(0.0, static_cast<double>(n)));
  }
  return d;
}

bool BranchedFunction::is_real(double tol) const {
  if (std::abs(degree_.imag()) > tol) return false;
  for (int n = 0; n <= truncation_; ++n) {
    if (std::abs(coeff(-n) - std::conj(coeff(n))) > tol) return false;
  }
  return true;
}

double BranchedFunction::max_abs_coeff() const {
  double m = std::abs(degree_);
  for (const cplx& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

BranchedFunction BranchedFunction::operator+(const BranchedFunction& o) const {
  BranchedFunction r = *this;
  r += o;
  return r;
}

BranchedFunction BranchedFunction::operator-(const BranchedFunction& o) const {
  return *this + o * cplx(-1.0);
}

BranchedFunction BranchedFunction::operator*(cplx s) const {
  BranchedFunction r = *this;
  r.degree_ *= s;
  for (cplx& c : r.coeffs_) c *= s;
  return r;
}

BranchedFunction& BranchedFunction::operator+=(const BranchedFunction& o) {
  if (o.truncation_ != truncation_) throw std::invalid_argument("truncation mismatch");
  degree_ += o.degree_;
  for (size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

BranchedFunction BranchedFunction::conj() const {
  BranchedFunction r(std::conj(degree_), truncation_);
  for (int n = -truncation_; n <= truncation_; ++n) {
    r.set_coeff(n, std::conj(coeff(-n)));
  }
  return r;
}

cplx pairing(const BranchedFunction& f, const BranchedFunction& g) {
  if (f.truncation() != g.truncation()) throw std::invalid_argument("truncation mismatch");
  const int N = f.truncation();
  cplx s = g.degree() * f.coeff(0) - f.degree() * g.coeff(0);
  for (int n = -N; n <= N; ++n) {
    if (n == 0) continue;
    s += cplx(0.0, kTwoPi) * static_cast<double>(n) * f.coeff(-n) * g.coeff(n);
  }
  return s;
}

cplx quadrature_pairing(const BranchedFunction& f, const BranchedFunction& g, int samples) {
  if (f.truncation() != g.truncation()) throw std::invalid_argument("truncation mismatch");
  const int N = f.truncation();
  if (samples < 4 * N + 4) throw std::invalid_argument("too few quadrature samples");

  // With f = d_f * theta/(2*pi) + P_f, the defining integral collapses to
  //   S(f, g) = int P_f g' dtheta - (d_f / 2*pi) int P_g dtheta,
  // the g(0) and degree terms cancelling after integrating the winding part
  // by parts.  Both remaining integrands are periodic, so the periodic
  // trapezoid rule is exact for them.
  const BranchedFunction dg = g.derivative();
  cplx acc1 = 0.0, acc2 = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double theta = kTwoPi * k / samples;
    const cplx pf = f.eval(theta) - f.degree() * (theta / kTwoPi);
    const cplx pg = g.eval(theta) - g.degree() * (theta / kTwoPi);
    acc1 += pf * dg.eval(theta);
    acc2 += pg;
  }
  const double h = kTwoPi / samples;
  return acc1 * h - f.degree() / kTwoPi * (acc2 * h);
}

}  // namespace openjac
