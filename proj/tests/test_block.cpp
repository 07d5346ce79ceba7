#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "openjac/block.hpp"
#include "openjac/chart.hpp"

using namespace openjac;
using testing::Rng;

namespace {

BlockVector annulus_vector(const BranchedFunction& outer, const BranchedFunction& inner) {
  BlockVector x(testing::annulus_signature(), outer.truncation());
  x.at(1) = outer;
  x.at(2) = inner;
  return x;
}

Ordering random_ordering(Rng& rng, const Signature& sig) {
  std::vector<BoundaryId> ids = sig.flat_ids();
  for (size_t k = ids.size(); k > 1; --k) {
    std::swap(ids[k - 1], ids[static_cast<size_t>(rng.integer(0, static_cast<int>(k) - 1))]);
  }
  return Ordering(ids);
}

}  // namespace

TEST_CASE("annulus block pairing example") {
  const int n = 4;
  const auto x = annulus_vector(BranchedFunction::winding(1.0, n),
                                BranchedFunction::winding(1.0, n));
  auto y = annulus_vector(BranchedFunction::zero(n), BranchedFunction::constant(1.0, n));
  const Ordering order({1, 2});
  CHECK(std::abs(block_pairing(x, y, order) - cplx(1.0)) < 1e-14);
  CHECK(std::abs(block_pairing(x, x, order)) < 1e-14);
}

TEST_CASE("single outbound component reduces to the plain pairing") {
  ComponentSignature c;
  c.component_id = 0;
  c.boundaries = {{1, true}};
  const Signature sig({c});
  Rng rng(testing::env_seed());
  BlockVector x(sig, 8), y(sig, 8);
  x.at(1) = testing::random_branched(rng, 8, 0.0);
  y.at(1) = testing::random_branched(rng, 8, 0.0);
  CHECK(std::abs(block_pairing(x, y, Ordering({1})) - pairing(x.at(1), y.at(1))) < 1e-13);
}

TEST_CASE("degree-sum violation is rejected") {
  const int n = 4;
  auto x = annulus_vector(BranchedFunction::winding(1.0, n), BranchedFunction::zero(n));
  const auto y = annulus_vector(BranchedFunction::zero(n), BranchedFunction::zero(n));
  CHECK_THROWS_AS(block_pairing(x, y, Ordering({1, 2})), std::invalid_argument);
}

TEST_CASE("standard transform examples") {
  const int n = 4;
  const auto x = annulus_vector(BranchedFunction::winding(1.0, n),
                                BranchedFunction::winding(1.0, n));
  const Ordering fwd({1, 2}), rev({2, 1});

  const BlockVector same = standard_transform(x, fwd, fwd);
  CHECK(quotient_equal(same, x, 1e-14));

  // moving the outbound boundary past the inbound one shifts by its degree
  const BlockVector moved = standard_transform(x, fwd, rev);
  CHECK(std::abs(moved.at(1).degree() - 1.0) < 1e-14);
  CHECK(std::abs(moved.at(2).coeff(0) - cplx(-1.0)) < 1e-14);
  CHECK(std::abs(moved.at(1).coeff(0)) < 1e-14);

  // zero degrees move nowhere
  Rng rng(testing::env_seed());
  auto z = annulus_vector(testing::random_branched(rng, n, 0.0),
                          testing::random_branched(rng, n, 0.0));
  CHECK(quotient_equal(standard_transform(z, fwd, rev), z, 1e-14));
}

TEST_CASE("block form is invariant under the standard transform") {
  Rng rng(testing::env_seed() + 10);
  const Signature sig = testing::three_component_signature();
  for (int t = 0; t < 60; ++t) {
    const auto x = testing::random_block(rng, sig, 6);
    const auto y = testing::random_block(rng, sig, 6);
    const Ordering a = random_ordering(rng, sig);
    const Ordering b = random_ordering(rng, sig);
    const cplx sa = block_pairing(x, y, a);
    const cplx sb = block_pairing(standard_transform(x, a, b), standard_transform(y, a, b), b);
    CHECK(std::abs(sa - sb) < 1e-10);
  }
}

TEST_CASE("block form depends only on the cyclic order") {
  Rng rng(testing::env_seed() + 11);
  const Signature sig = testing::three_component_signature();
  for (int t = 0; t < 40; ++t) {
    const auto x = testing::random_block(rng, sig, 6);
    const auto y = testing::random_block(rng, sig, 6);
    const Ordering a = random_ordering(rng, sig);
    CHECK(std::abs(block_pairing(x, y, a) - block_pairing(x, y, a.rotated())) < 1e-10);
  }
}

TEST_CASE("block form descends to the constant quotient") {
  Rng rng(testing::env_seed() + 12);
  const Signature sig = testing::three_component_signature();
  const auto x = testing::random_block(rng, sig, 6);
  const auto y = testing::random_block(rng, sig, 6);
  const Ordering order = Ordering::ascending(sig);

  BlockVector shifted = x;
  for (size_t c = 0; c < sig.component_count(); ++c) {
    const cplx value = rng.sym();
    for (const BoundaryMark& b : sig.components()[c].boundaries) {
      shifted.at(b.id) = shifted.at(b.id) + BranchedFunction::constant(value, 6);
    }
  }
  CHECK(std::abs(block_pairing(x, y, order) - block_pairing(shifted, y, order)) < 1e-10);
  CHECK(quotient_equal(x, shifted, 1e-12));
}

TEST_CASE("transform round trips shift by integral multiples of the degrees") {
  // going out to another order and back is the identity only up to a constant
  // per boundary that is an integer combination of the winding numbers; on
  // zero-winding data it is the identity on the nose
  Rng rng(testing::env_seed() + 13);
  const Signature sig = testing::three_component_signature();
  const Ordering a = random_ordering(rng, sig);
  const Ordering b = random_ordering(rng, sig);

  const auto x = testing::random_block(rng, sig, 6, true);
  const auto back = standard_transform(standard_transform(x, a, b), b, a);
  for (BoundaryId id : sig.flat_ids()) {
    const BranchedFunction diff = back.at(id) - x.at(id);
    CHECK(std::abs(diff.degree()) < 1e-12);
    for (int n = 1; n <= 6; ++n) {
      CHECK(std::abs(diff.coeff(n)) < 1e-12);
      CHECK(std::abs(diff.coeff(-n)) < 1e-12);
    }
    const double c = diff.coeff(0).real();
    CHECK(std::abs(diff.coeff(0).imag()) < 1e-12);
    CHECK(std::abs(c - std::round(c)) < 1e-10);
  }

  const auto z = testing::random_block(rng, sig, 6, false) * cplx(1.0);
  BlockVector z0(sig, 6);
  for (BoundaryId id : sig.flat_ids()) {
    z0.at(id) = z.at(id) - BranchedFunction::winding(z.at(id).degree(), 6);
  }
  const auto back0 = standard_transform(standard_transform(z0, a, b), b, a);
  CHECK(quotient_equal(back0, z0, 1e-12));
}

TEST_CASE("polarization split recomposes exactly") {
  Rng rng(testing::env_seed() + 14);
  const Signature sig = testing::three_component_signature();
  const auto x = testing::random_block(rng, sig, 6);
  const auto parts = polarization_split(x);
  const auto sum = parts.plus + parts.minus + parts.constants + parts.degrees;
  for (BoundaryId id : sig.flat_ids()) {
    CHECK(std::abs(sum.at(id).degree() - x.at(id).degree()) == 0.0);
    for (int n = -6; n <= 6; ++n) CHECK(std::abs(sum.at(id).coeff(n) - x.at(id).coeff(n)) == 0.0);
  }
  CHECK(std::abs(parts.plus.at(3).coeff(-2)) == 0.0);
  CHECK(std::abs(parts.minus.at(3).coeff(2)) == 0.0);
}

TEST_CASE("split examples on a disk") {
  ComponentSignature c;
  c.component_id = 0;
  c.boundaries = {{1, true}};
  const Signature sig({c});
  BlockVector x(sig, 4);
  x.at(1) = BranchedFunction::mode(1, 1.0, 4);
  auto parts = polarization_split(x);
  CHECK(std::abs(parts.plus.at(1).coeff(1) - cplx(1.0)) == 0.0);
  CHECK(std::abs(parts.minus.at(1).coeff(-1)) == 0.0);

  BlockVector y(sig, 4);
  y.at(1) = BranchedFunction::winding(1.0, 4) + BranchedFunction::mode(-1, 1.0, 4);
  parts = polarization_split(y);
  CHECK(std::abs(parts.degrees.at(1).degree() - cplx(1.0)) == 0.0);
  CHECK(std::abs(parts.minus.at(1).coeff(-1) - cplx(1.0)) == 0.0);
}

TEST_CASE("chart encodes and decodes faithfully") {
  Rng rng(testing::env_seed() + 15);
  const Signature sig = testing::three_component_signature();
  const Chart chart(sig, 6);
  CHECK(chart.dim() == (2 * (2 * 6 + 2) - 2) + (3 * (2 * 6 + 2) - 2) + (1 * (2 * 6 + 2) - 2));
  const auto x = testing::random_block(rng, sig, 6);
  const auto coords = chart.encode(x);
  CHECK(quotient_equal(chart.decode(coords), x, 1e-12));
}

TEST_CASE("chart gram is antisymmetric and matches the block form") {
  Rng rng(testing::env_seed() + 16);
  const Signature sig = testing::annulus_signature();
  const Chart chart(sig, 4);
  const Ordering order = Ordering::ascending(sig);
  const Eigen::MatrixXd gram = chart.gram(order);
  CHECK((gram + gram.transpose()).cwiseAbs().maxCoeff() < 1e-13);
  const auto x = testing::random_block(rng, sig, 4);
  const auto y = testing::random_block(rng, sig, 4);
  const Eigen::VectorXd vx = chart.encode_real(x);
  const Eigen::VectorXd vy = chart.encode_real(y);
  CHECK(std::abs(vx.dot(gram * vy) - block_pairing(x, y, order).real()) < 1e-10);
}
