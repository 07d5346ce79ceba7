// Boundary data of the holomorphic function basis on a circle domain, and the
// assignment of an open abelian variety to the domain.
//
// The basis consists of the powers z^n (n = 1..N), poles (z - p_k)^{-n} per
// inner disk, and one logarithmic branch log(z - p_k) / (2 pi i) per inner
// disk.  Restrictions to the boundary circles are computed by exact binomial,
// Laurent and logarithm expansions truncated at mode N; for concentric
// circles they are exact, otherwise the dropped tails decay geometrically
// with the domain's geometry ratio.

#pragma once

#include <Eigen/Dense>

#include "openjac/circle_domain.hpp"
#include "openjac/oav.hpp"

namespace openjac {

struct HolomorphicBasisElement {
  enum class Kind { power, pole, log_branch };
  Kind kind = Kind::power;
  int disk_id = 0;  // boundary id of the inner disk for pole/log kinds
  int order = 0;    // exponent n for power/pole
  BlockVector restriction;
};

std::vector<HolomorphicBasisElement> holomorphic_basis(const CircleDomain& domain, int truncation);

struct TorelliResult {
  OpenAbelianVariety oav;
  ValidationReport report;
  double rho = 0.0;             // geometry ratio
  double isotropy_budget = 0.0; // threshold the residual was held to
};

// Genus-zero variety of the domain: U is the boundary block space, W the span
// of the holomorphic basis restrictions.  Throws when validation fails beyond
// the geometric truncation budget (truncation too small for the geometry).
TorelliResult torelli_with_report(const CircleDomain& domain, int truncation);
OpenAbelianVariety torelli(const CircleDomain& domain, int truncation);

struct HarmonicSplitResult {
  Eigen::VectorXcd holomorphic_coeffs;
  Eigen::VectorXcd antiholomorphic_coeffs;
  BlockVector holomorphic_part;
  BlockVector antiholomorphic_part;
  double residual = 0.0;
};

// Least-squares splitting of boundary data into restrictions of holomorphic
// and antiholomorphic basis functions, modulo one constant per domain.
// Requires degree-sum-zero data.
HarmonicSplitResult harmonic_split(const CircleDomain& domain, const BlockVector& data,
                                   int truncation);

struct PerpLatticeDescription {
  int genus = 0;
  Eigen::MatrixXd generators;  // dim U x 2 genus (empty at genus zero)
};

// Integral structure of the domain's variety; genus zero, so always empty.
PerpLatticeDescription integral_perp_lattice(const CircleDomain& domain);

}  // namespace openjac
