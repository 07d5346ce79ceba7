// Circle domains: the closed unit disk minus a collection of disjoint round
// open subdisks.  Every boundary circle carries an affine parametrization
// theta -> p + r e^{i d theta} with direction d = +1 (counterclockwise) or -1.
// A circle is outbound when its parametrization direction agrees with the
// induced boundary orientation: counterclockwise on the outer circle,
// clockwise on the inner ones.

#pragma once

#include <complex>
#include <vector>

#include "openjac/block.hpp"

namespace openjac {

struct DiskSpec {
  cplx center;
  double radius = 0.0;
  int direction = 1;  // parametrization direction
};

struct CircleDomainSpec {
  int outer_direction = 1;
  std::vector<DiskSpec> inner;
};

class CircleDomain {
 public:
  struct Circle {
    BoundaryId id = 0;
    cplx center;
    double radius = 1.0;
    int direction = 1;
    bool outer = false;
    bool outbound = true;
  };

  // boundary ids: 1 for the outer circle, 2.. for inner disks in listing order
  const std::vector<Circle>& circles() const { return circles_; }
  const Circle& outer() const { return circles_.front(); }
  size_t inner_count() const { return circles_.size() - 1; }

  Signature signature() const;

  // worst-case per-mode decay factor of the truncated boundary expansions:
  // inner-to-inner transfer ratios and the squared outer-circle tail
  double geometry_ratio() const;

  friend CircleDomain make_circle_domain(const CircleDomainSpec& spec);

 private:
  std::vector<Circle> circles_;
};

// Validates disjointness and containment; throws std::invalid_argument naming
// the offending pair of circles.
CircleDomain make_circle_domain(const CircleDomainSpec& spec);

}  // namespace openjac
