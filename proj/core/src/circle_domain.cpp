#include "openjac/circle_domain.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace openjac {

Signature CircleDomain::signature() const {
  ComponentSignature comp;
  comp.component_id = 0;
  for (const Circle& c : circles_) comp.boundaries.push_back({c.id, c.outbound});
  return Signature({comp});
}

double CircleDomain::geometry_ratio() const {
  double rho = 0.0;
  for (size_t k = 1; k < circles_.size(); ++k) {
    const Circle& ck = circles_[k];
    for (size_t l = 1; l < circles_.size(); ++l) {
      if (l == k) continue;
      const Circle& cl = circles_[l];
      rho = std::max(rho, ck.radius / (std::abs(ck.center - cl.center) - cl.radius));
    }
    const double outer_tail = std::abs(ck.center) + ck.radius;
    rho = std::max(rho, outer_tail * outer_tail);
  }
  return rho;
}

CircleDomain make_circle_domain(const CircleDomainSpec& spec) {
  if (std::abs(spec.outer_direction) != 1)
    throw std::invalid_argument("outer direction must be +1 or -1");
  CircleDomain d;
  CircleDomain::Circle outer;
  outer.id = 1;
  outer.center = 0.0;
  outer.radius = 1.0;
  outer.direction = spec.outer_direction;
  outer.outer = true;
  outer.outbound = spec.outer_direction == 1;
  d.circles_.push_back(outer);

  int id = 2;
  for (const DiskSpec& disk : spec.inner) {
    if (disk.radius <= 0.0)
      throw std::invalid_argument("inner disk " + std::to_string(id) + " has nonpositive radius");
    if (std::abs(disk.direction) != 1)
      throw std::invalid_argument("inner disk " + std::to_string(id) + " direction must be +1 or -1");
    CircleDomain::Circle c;
    c.id = id++;
    c.center = disk.center;
    c.radius = disk.radius;
    c.direction = disk.direction;
    c.outer = false;
    c.outbound = disk.direction == -1;
    d.circles_.push_back(c);
  }

  for (size_t k = 1; k < d.circles_.size(); ++k) {
    const auto& ck = d.circles_[k];
    if (std::abs(ck.center) + ck.radius >= 1.0)
      throw std::invalid_argument("inner disk " + std::to_string(ck.id) +
                                  " not strictly inside the unit disk");
    for (size_t l = k + 1; l < d.circles_.size(); ++l) {
      const auto& cl = d.circles_[l];
      if (std::abs(ck.center - cl.center) <= ck.radius + cl.radius)
        throw std::invalid_argument("inner disks " + std::to_string(ck.id) + " and " +
                                    std::to_string(cl.id) + " overlap or touch");
    }
  }
  return d;
}

}  // namespace openjac
