#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "helpers.hpp"
#include "openjac/branched.hpp"

using namespace openjac;
using testing::Rng;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("pairing of winding against a constant") {
  const auto f = BranchedFunction::winding(1.0, 4);
  const auto g = BranchedFunction::constant(1.0, 4);
  CHECK(std::abs(pairing(f, g) - cplx(-1.0)) < 1e-15);
}

TEST_CASE("pairing is alternating") {
  Rng rng(testing::env_seed());
  for (int t = 0; t < 20; ++t) {
    const auto f = testing::random_branched(rng, 8);
    CHECK(std::abs(pairing(f, f)) < 1e-12);
  }
}

TEST_CASE("pairing of opposite modes") {
  const auto f = BranchedFunction::mode(1, 1.0, 4);
  const auto g = BranchedFunction::mode(-1, 1.0, 4);
  CHECK(std::abs(pairing(f, g) - cplx(0.0, -kTwoPi)) < 1e-14);
}

TEST_CASE("pairing rejects truncation mismatch") {
  CHECK_THROWS_AS(pairing(BranchedFunction::zero(4), BranchedFunction::zero(5)),
                  std::invalid_argument);
}

TEST_CASE("quadrature examples") {
  const int samples = 256;
  CHECK(std::abs(quadrature_pairing(BranchedFunction::winding(1.0, 4),
                                    BranchedFunction::constant(1.0, 4), samples) -
                 cplx(-1.0)) < 1e-13);
  CHECK(std::abs(quadrature_pairing(BranchedFunction::mode(1, 1.0, 4),
                                    BranchedFunction::mode(-1, 1.0, 4), samples) -
                 cplx(0.0, -kTwoPi)) < 1e-12);
  Rng rng(testing::env_seed());
  const auto g = testing::random_branched(rng, 4);
  CHECK(std::abs(quadrature_pairing(BranchedFunction::zero(4), g, samples)) < 1e-13);
}

TEST_CASE("quadrature needs enough samples") {
  CHECK_THROWS_AS(quadrature_pairing(BranchedFunction::zero(8), BranchedFunction::zero(8), 16),
                  std::invalid_argument);
}

TEST_CASE("closed form matches quadrature on random branched input") {
  Rng rng(testing::env_seed() + 1);
  const int n = 16;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto f = testing::random_branched(rng, n);
    const auto g = testing::random_branched(rng, n);
    const cplx a = pairing(f, g);
    const cplx b = quadrature_pairing(f, g, 512);
    worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("branched evaluation winds by the degree") {
  Rng rng(testing::env_seed() + 2);
  const auto f = testing::random_branched(rng, 6);
  for (double theta : {0.3, 1.2, 4.0}) {
    CHECK(std::abs(f.eval(theta + kTwoPi) - f.eval(theta) - f.degree()) < 1e-12);
  }
}

TEST_CASE("conjugation and realness") {
  Rng rng(testing::env_seed() + 3);
  const auto f = testing::random_branched(rng, 6);
  CHECK(f.is_real());
  auto g = f;
  g.set_coeff(2, g.coeff(2) + cplx(0.0, 0.5));
  CHECK(!g.is_real());
  CHECK(g.conj().conj().coeff(2) == g.coeff(2));
}
