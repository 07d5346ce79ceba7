#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "helpers.hpp"
#include "openjac/torelli.hpp"

using namespace openjac;
using testing::Rng;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("domain construction and the rejection cases") {
  const auto disk = testing::disk_domain();
  CHECK(disk.circles().size() == 1);
  CHECK(disk.outer().outbound);

  const auto annulus = testing::annulus_domain(0.5);
  CHECK(annulus.circles().size() == 2);
  CHECK(!annulus.circles()[1].outbound);  // inner, counterclockwise: inbound

  CHECK_THROWS_WITH_AS(make_circle_domain({1, {{cplx(-0.5, 0.0), 0.6, 1}, {cplx(0.5, 0.0), 0.6, 1}}}),
                       doctest::Contains("overlap"), std::invalid_argument);
  CHECK_THROWS_AS(make_circle_domain({1, {{cplx(0.8, 0.0), 0.3, 1}}}), std::invalid_argument);
  CHECK_THROWS_AS(make_circle_domain({1, {{cplx(0.0, 0.0), -0.1, 1}}}), std::invalid_argument);
}

TEST_CASE("basis counts match half the boundary dimension") {
  for (int m : {0, 1, 2, 3}) {
    CircleDomainSpec spec;
    const double radius = 0.12;
    for (int k = 0; k < m; ++k) {
      const double angle = kTwoPi * k / std::max(1, m);
      spec.inner.push_back({0.55 * std::exp(cplx(0.0, angle)), radius, 1});
    }
    const auto domain = make_circle_domain(spec);
    const int n = 8;
    const auto basis = holomorphic_basis(domain, n);
    CHECK(static_cast<int>(basis.size()) == n + m * n + m);
    const Chart chart(domain.signature(), n);
    CHECK(2 * static_cast<int>(basis.size()) == chart.dim());
  }
}

TEST_CASE("disk basis restricts to single modes") {
  const auto basis = holomorphic_basis(testing::disk_domain(), 4);
  REQUIRE(basis.size() == 4);
  for (int n = 1; n <= 4; ++n) {
    const BranchedFunction& f = basis[static_cast<size_t>(n - 1)].restriction.at(1);
    CHECK(std::abs(f.coeff(n) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(f.degree()) < 1e-15);
  }
}

TEST_CASE("annulus log branch carries the winding and the modulus offset") {
  const double q = 0.5;
  const auto basis = holomorphic_basis(testing::annulus_domain(q), 6);
  const auto& log_elt = basis.back();
  CHECK(log_elt.kind == HolomorphicBasisElement::Kind::log_branch);
  const BranchedFunction& outer = log_elt.restriction.at(1);
  const BranchedFunction& inner = log_elt.restriction.at(2);
  CHECK(std::abs(outer.degree() - cplx(1.0)) < 1e-15);
  CHECK(std::abs(inner.degree() - cplx(1.0)) < 1e-15);
  const cplx offset = std::log(q) / cplx(0.0, kTwoPi);
  CHECK(std::abs(inner.coeff(0) - outer.coeff(0) - offset) < 1e-15);
}

TEST_CASE("disk variety: W is the span of the positive modes") {
  const auto res = torelli_with_report(testing::disk_domain(), 8);
  CHECK(res.report.pass);
  CHECK(res.oav.genus() == 0);
  CHECK(res.report.isotropy_residual < 1e-14);
  // positivity gram is diagonal with entries 4 pi n (after column scaling)
  const auto& x = res.oav;
  const Eigen::MatrixXcd raw =
      2.0 * cplx(0, 1) * (x.w().transpose() * x.s().cast<cplx>() * x.w().conjugate());
  for (int a = 0; a < raw.rows(); ++a) {
    for (int b = 0; b < raw.cols(); ++b) {
      if (a != b) CHECK(std::abs(raw(a, b)) < 1e-12);
    }
  }
  // columns were normalized; the unnormalized diagonal is 4 pi n against norm^2
  const auto basis = holomorphic_basis(testing::disk_domain(), 8);
  const Chart chart(x.signature(), 8);
  for (int n = 1; n <= 8; ++n) {
    const Eigen::VectorXcd col = chart.encode(basis[static_cast<size_t>(n - 1)].restriction);
    const cplx h = 2.0 * cplx(0, 1) *
                   (col.transpose() * x.s().cast<cplx>() * col.conjugate())(0, 0);
    CHECK(std::abs(h - cplx(4.0 * std::numbers::pi * n)) < 1e-10);
  }
}

TEST_CASE("annulus varieties are exact at any modulus") {
  for (double q : {0.3, 0.5, 0.9}) {
    const auto res = torelli_with_report(testing::annulus_domain(q), 16);
    CHECK(res.report.pass);
    CHECK(res.report.isotropy_residual < 1e-12);
    CHECK(res.report.positivity_min_eig > 0.0);
  }
}

TEST_CASE("pants and asymmetric domains validate within the geometric budget") {
  {
    const auto res = torelli_with_report(testing::pants_domain(), 16);
    CHECK(res.report.pass);
    CHECK(res.rho == doctest::Approx(0.49));
    CHECK(res.report.isotropy_residual < res.isotropy_budget);
    CHECK(res.report.positivity_min_eig > 0.0);
  }
  {
    const auto res = torelli_with_report(testing::asymmetric_domain(), 16);
    CHECK(res.report.pass);
    CHECK(res.report.isotropy_residual < res.isotropy_budget);
    CHECK(res.report.positivity_min_eig > 0.0);
  }
}

TEST_CASE("harmonic split of a cosine on the disk") {
  const auto domain = testing::disk_domain();
  const int n = 8;
  BlockVector f(domain.signature(), n);
  f.at(1) = BranchedFunction::mode(1, 0.5, n) + BranchedFunction::mode(-1, 0.5, n);
  const auto split = harmonic_split(domain, f, n);
  CHECK(split.residual < 1e-13);
  // w = z/2: only the first holomorphic coefficient
  CHECK(std::abs(split.holomorphic_coeffs(0) - cplx(0.5)) < 1e-12);
  for (int k = 1; k < split.holomorphic_coeffs.size(); ++k)
    CHECK(std::abs(split.holomorphic_coeffs(k)) < 1e-12);
  CHECK(std::abs(split.antiholomorphic_coeffs(0) - cplx(0.5)) < 1e-12);
}

TEST_CASE("harmonic split of a constant is trivial in the quotient") {
  const auto domain = testing::disk_domain();
  const int n = 6;
  BlockVector f(domain.signature(), n);
  f.at(1) = BranchedFunction::constant(5.0, n);
  const auto split = harmonic_split(domain, f, n);
  CHECK(split.residual < 1e-13);
  CHECK(split.holomorphic_coeffs.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(split.antiholomorphic_coeffs.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("harmonic split recovers the angular coordinate on the annulus") {
  const double q = 0.5;
  const auto domain = testing::annulus_domain(q);
  const int n = 12;
  BlockVector f(domain.signature(), n);
  f.at(1) = BranchedFunction::winding(1.0, n);
  f.at(2) = BranchedFunction::winding(1.0, n);
  const auto split = harmonic_split(domain, f, n);
  CHECK(split.residual < 1e-10);
  // the log branch and its conjugate carry all of it, half each
  const auto basis = holomorphic_basis(domain, n);
  const int log_index = static_cast<int>(basis.size()) - 1;
  CHECK(std::abs(split.holomorphic_coeffs(log_index) - cplx(0.5)) < 1e-10);
  CHECK(std::abs(split.antiholomorphic_coeffs(log_index) - cplx(0.5)) < 1e-10);
  for (int k = 0; k < log_index; ++k) {
    CHECK(std::abs(split.holomorphic_coeffs(k)) < 1e-10);
  }
}

TEST_CASE("harmonic split closes on random band-limited data") {
  Rng rng(testing::env_seed() + 40);
  const int n = 16;
  for (int variant = 0; variant < 2; ++variant) {
    const auto domain = variant == 0 ? testing::disk_domain() : testing::annulus_domain(0.6);
    BlockVector f(domain.signature(), n);
    for (const auto& c : domain.circles()) {
      BranchedFunction g(0.0, n);
      for (int m = 1; m <= n / 2; ++m) {
        const cplx a(rng.sym() / m, rng.sym() / m);
        g.set_coeff(m, a);
        g.set_coeff(-m, std::conj(a));
      }
      g.set_coeff(0, rng.sym());
      f.at(c.id) = g;
    }
    const auto split = harmonic_split(domain, f, n);
    CHECK(split.residual < 1e-8);
    // parts recompose to the data modulo the domain constant
    const auto sum = split.holomorphic_part + split.antiholomorphic_part;
    CHECK(quotient_equal(sum.gauge_fix(), f.gauge_fix(), 1e-8));
  }
}

TEST_CASE("harmonic split rejects unbalanced degrees") {
  const auto domain = testing::annulus_domain(0.5);
  BlockVector f(domain.signature(), 6);
  f.at(1) = BranchedFunction::winding(1.0, 6);
  CHECK_THROWS_AS(harmonic_split(domain, f, 6), std::invalid_argument);
}

TEST_CASE("integral structure of a genus-zero domain is empty") {
  CHECK(integral_perp_lattice(testing::disk_domain()).genus == 0);
  CHECK(integral_perp_lattice(testing::annulus_domain(0.3)).generators.size() == 0);
  CHECK(integral_perp_lattice(testing::pants_domain()).genus == 0);
}
