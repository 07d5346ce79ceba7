// Shared fixtures for the test suites: a platform-stable generator for random
// branched data and the standard corpus of domains and varieties.

#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "openjac/block.hpp"
#include "openjac/circle_domain.hpp"

namespace openjac::testing {

class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) {}

  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double sym() { return 2.0 * uniform() - 1.0; }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
  }

 private:
  uint64_t state_;
};

inline uint64_t env_seed() {
  if (const char* s = std::getenv("OPENJAC_SEED")) return std::strtoull(s, nullptr, 0);
  return 0x5eed;
}

// random real branched function, a spread of mode amplitudes plus a winding
inline BranchedFunction random_branched(Rng& rng, int truncation, double degree_scale = 1.0) {
  BranchedFunction f(degree_scale * rng.sym(), truncation);
  f.set_coeff(0, rng.sym());
  for (int n = 1; n <= truncation; ++n) {
    const cplx c(rng.sym() / n, rng.sym() / n);
    f.set_coeff(n, c);
    f.set_coeff(-n, std::conj(c));
  }
  return f;
}

// random real element of the block space: degree sums balanced per component
inline BlockVector random_block(Rng& rng, const Signature& sig, int truncation,
                                bool integral_degrees = false) {
  BlockVector x(sig, truncation);
  for (const ComponentSignature& comp : sig.components()) {
    double weighted = 0.0;
    for (size_t k = 0; k < comp.boundaries.size(); ++k) {
      const BoundaryMark& b = comp.boundaries[k];
      BranchedFunction f = random_branched(rng, truncation, 0.0);
      if (k + 1 < comp.boundaries.size()) {
        const double deg = integral_degrees ? rng.integer(-2, 2) : rng.sym();
        f.set_degree(deg);
        weighted += (b.outbound ? 1.0 : -1.0) * deg;
      } else {
        f.set_degree((b.outbound ? -1.0 : 1.0) * weighted);
      }
      x.at(b.id) = f;
    }
  }
  return x;
}

inline Signature annulus_signature() {
  ComponentSignature c;
  c.component_id = 0;
  c.boundaries = {{1, true}, {2, false}};
  return Signature({c});
}

// three components: an annulus pair, a three-boundary component, a disk
inline Signature three_component_signature() {
  ComponentSignature c1, c2, c3;
  c1.component_id = 0;
  c1.boundaries = {{1, true}, {2, false}};
  c2.component_id = 1;
  c2.boundaries = {{3, true}, {4, false}, {5, false}};
  c3.component_id = 2;
  c3.boundaries = {{6, true}};
  return Signature({c1, c2, c3});
}

inline CircleDomain disk_domain() { return make_circle_domain({}); }

inline CircleDomain annulus_domain(double q) {
  CircleDomainSpec spec;
  spec.inner.push_back({0.0, q, 1});
  return make_circle_domain(spec);
}

inline CircleDomain pants_domain(double offset = 0.5, double radius = 0.2) {
  CircleDomainSpec spec;
  spec.inner.push_back({cplx(-offset, 0.0), radius, 1});
  spec.inner.push_back({cplx(offset, 0.0), radius, 1});
  return make_circle_domain(spec);
}

// pants with the second inner circle reversed (outbound), so a pair inside
// one component can be glued
inline CircleDomain pants_mixed_domain(double offset = 0.5, double radius = 0.2) {
  CircleDomainSpec spec;
  spec.inner.push_back({cplx(-offset, 0.0), radius, 1});
  spec.inner.push_back({cplx(offset, 0.0), radius, -1});
  return make_circle_domain(spec);
}

inline CircleDomain asymmetric_domain() {
  CircleDomainSpec spec;
  spec.inner.push_back({cplx(0.4, 0.1), 0.15, 1});
  spec.inner.push_back({cplx(-0.35, 0.25), 0.12, 1});
  spec.inner.push_back({cplx(0.1, -0.45), 0.2, 1});
  return make_circle_domain(spec);
}

}  // namespace openjac::testing
