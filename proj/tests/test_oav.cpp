#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "openjac/gluing.hpp"
#include "openjac/oav.hpp"
#include "openjac/torelli.hpp"

using namespace openjac;

TEST_CASE("torus datum validates with the expected positivity eigenvalue") {
  const cplx tau(0.3, 0.9);
  const auto x = OpenAbelianVariety::torus(tau);
  const auto rep = validate(x);
  CHECK(rep.pass);
  CHECK(rep.positivity_min_eig == doctest::Approx(4.0 * tau.imag()).epsilon(1e-12));
  CHECK(rep.lattice_divisors == std::vector<int64_t>{1});
}

TEST_CASE("torus datum with conjugate modulus fails positivity") {
  const auto x = OpenAbelianVariety::torus(cplx(0.0, -1.0));
  const auto rep = validate(x);
  CHECK(!rep.pass);
  CHECK(rep.positivity_min_eig < 0.0);
}

TEST_CASE("period of the torus datum recovers the modulus") {
  const cplx tau(0.3, 0.9);
  const auto t = period_matrix(OpenAbelianVariety::torus(tau));
  REQUIRE(t.rows() == 1);
  CHECK(std::abs(t(0, 0) - tau) < 1e-12);
}

TEST_CASE("genus bookkeeping") {
  CHECK(OpenAbelianVariety::torus(cplx(0.0, 1.0)).genus() == 1);
  CHECK(torelli(testing::disk_domain(), 6).genus() == 0);
  const auto t1 = OpenAbelianVariety::torus(cplx(0.1, 1.0));
  const auto t2 = OpenAbelianVariety::torus(cplx(0.0, 2.0));
  CHECK(disjoint_union(t1, t2).genus() == 2);
}

TEST_CASE("union of tori has block-diagonal period matrix") {
  const cplx tau1(0.1, 1.0), tau2(-0.2, 0.7);
  const auto u = disjoint_union(OpenAbelianVariety::torus(tau1),
                                OpenAbelianVariety::torus(tau2));
  const auto t = period_matrix(u);
  REQUIRE(t.rows() == 2);
  CHECK(std::abs(t(0, 0) - tau1) < 1e-12);
  CHECK(std::abs(t(1, 1) - tau2) < 1e-12);
  CHECK(std::abs(t(0, 1)) < 1e-12);
  CHECK(std::abs(t(1, 0)) < 1e-12);
  CHECK(std::abs(t(0, 1) - t(1, 0)) < 1e-12);
}

TEST_CASE("period requires a closed variety") {
  const auto x = torelli(testing::annulus_domain(0.5), 6);
  CHECK_THROWS_AS(period_matrix(x), std::invalid_argument);
}

TEST_CASE("equivalence is reflexive and detects half-integer embedding shifts") {
  const auto x = torelli(testing::annulus_domain(0.5), 8);
  const auto self = equivalent(x, x);
  CHECK(self.comparable);
  CHECK(self.equivalent);

  // shift iota on a degree generator by a constant on one boundary
  auto shifted = [&](double amount) {
    Eigen::MatrixXd iota = x.iota();
    const Eigen::MatrixXd degs = integer_degree_basis(x.chart());
    const Eigen::MatrixXd consts = integer_constant_basis(x.chart());
    // iota' = iota + amount * const_col * deg_row
    iota += amount * (consts.col(0)) * (degs.col(0).transpose());
    return OpenAbelianVariety(x.signature(), x.truncation(), x.reference(), iota, x.s(),
                              x.w(), x.lattice());
  };
  const auto r1 = equivalent(x, shifted(1.0));
  CHECK(r1.comparable);
  CHECK(r1.equivalent);
  const auto r2 = equivalent(x, shifted(0.5));
  CHECK(r2.comparable);
  CHECK(!r2.equivalent);
}

TEST_CASE("equivalence reports non-comparable inputs") {
  const auto a = torelli(testing::annulus_domain(0.5), 6);
  const auto d = torelli(testing::disk_domain(), 6);
  const auto r = equivalent(a, d);
  CHECK(!r.comparable);
  CHECK(!r.reason.empty());
}

TEST_CASE("reorder preserves the variety") {
  const auto x = torelli(testing::annulus_domain(0.4), 6);
  const Ordering swapped({2, 1});
  const auto y = reorder(x, swapped);
  CHECK(validate(y).pass);
  CHECK(y.genus() == x.genus());
  CHECK((y.w() - x.w()).cwiseAbs().maxCoeff() == 0.0);

  // same variety under the identification rules
  const auto r = equivalent(x, y);
  CHECK(r.comparable);
  CHECK(r.equivalent);

  // applying the swap twice returns the embedding up to integer constants
  const auto yy = reorder(y, Ordering({1, 2}));
  const auto rr = equivalent(x, yy);
  CHECK(rr.equivalent);
}

TEST_CASE("normalized undoes a reorder presentation") {
  const auto x = torelli(testing::annulus_domain(0.4), 6);
  const auto y = reorder(x, Ordering({2, 1}));
  CHECK(!y.normal_form());
  const auto z = normalized(y);
  CHECK(z.normal_form());
  CHECK(validate(z).pass);
}

TEST_CASE("discrete group membership") {
  // two-boundary genus-one variety: chain two mixed pants and glue two seams
  const auto p1 = torelli(testing::pants_domain(), 8);
  const auto p2o = torelli(testing::pants_mixed_domain(), 8);
  std::map<BoundaryId, BoundaryId> shift;
  for (BoundaryId id : p2o.signature().flat_ids()) shift[id] = id + 3;
  const auto p2 = relabel(p2o, shift);
  const auto u = disjoint_union(p1, p2);
  // p1: 1 out, 2 in, 3 in; p2: 4 out, 5 in, 6 out
  const auto x = glue_many(u, {{2, 4}, {3, 6}});
  REQUIRE(x.genus() == 1);
  REQUIRE(x.dim_v() > 0);

  const int dv = x.dim_v();
  BlockMatrix2x2 id{Eigen::MatrixXd::Identity(dv, dv), Eigen::MatrixXd::Zero(dv, 2),
                    Eigen::MatrixXd::Zero(2, dv), Eigen::MatrixXd::Identity(2, 2)};
  CHECK(sp_open_member(id, x));

  auto phi = id;
  phi.perp_perp << 1.0, 0.5, 0.0, 1.0;
  CHECK(!sp_open_member(phi, x));

  phi = id;
  phi.perp_perp << 1.0, 1.0, 0.0, 1.0;  // integral symplectic
  CHECK(sp_open_member(phi, x));

  // send one lattice generator to the integral constant on one boundary
  phi = id;
  phi.v_perp.col(0) = integer_constant_basis(x.chart()).col(0);
  CHECK(sp_open_member(phi, x));
  phi.v_perp.col(0) = 0.5 * integer_constant_basis(x.chart()).col(0);
  CHECK(!sp_open_member(phi, x));

  // identity on every corpus variety
  for (const auto* y : {&p1, &x}) {
    const int n = y->dim_v();
    const int g2 = 2 * y->genus();
    BlockMatrix2x2 idy{Eigen::MatrixXd::Identity(n, n), Eigen::MatrixXd::Zero(n, g2),
                       Eigen::MatrixXd::Zero(g2, n), Eigen::MatrixXd::Identity(g2, g2)};
    CHECK(sp_open_member(idy, *y));
  }
}

TEST_CASE("smoothness diagnostic") {
  // disk: W is exactly the plus polarization
  const auto d = torelli(testing::disk_domain(), 8);
  const auto rd = smoothness_diagnostic(d);
  CHECK(rd.fredholm_index == 0);
  for (double s : rd.singular_values) CHECK(s < 1e-12);

  // annulus: singular values decay by about q per mode level
  const double q = 0.5;
  const auto a = torelli(testing::annulus_domain(q), 12);
  const auto ra = smoothness_diagnostic(a);
  CHECK(ra.fredholm_index == 0);
  // levels come in pairs (z^n and z^{-n} contribute one each)
  std::vector<double> sv = ra.singular_values;
  for (int level = 0; level + 3 < 8; level += 2) {
    const double ratio = sv[static_cast<size_t>(level + 2)] / sv[static_cast<size_t>(level)];
    CHECK(ratio > q / 2.0);
    CHECK(ratio < q * 2.0);
  }

  // closed torus: one value, reported as zero against an empty boundary space
  const auto t = smoothness_diagnostic(OpenAbelianVariety::torus(cplx(0.2, 1.1)));
  REQUIRE(t.singular_values.size() == 1);
  CHECK(t.singular_values[0] == 0.0);
}

TEST_CASE("validate flags malformed data") {
  CHECK_THROWS_AS(OpenAbelianVariety(Signature{}, 0, Ordering{}, Eigen::MatrixXd(3, 0),
                                     Eigen::MatrixXd::Zero(3, 3), Eigen::MatrixXcd::Zero(3, 1),
                                     Eigen::MatrixXd::Zero(3, 3)),
                  std::invalid_argument);
}
