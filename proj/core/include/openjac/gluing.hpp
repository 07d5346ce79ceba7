// Disjoint union and gluing of open abelian varieties.
//
// Gluing an inbound boundary i to an outbound boundary j constrains U to the
// subspace K where the boundary readings at i and j agree modulo constants,
// and quotients by the radical of the restricted form.  The radical is the
// degree-zero diagonal copy of the circle function space on the glued pair;
// this identification is asserted numerically on every call.  W is glued by
// the same matching constraint inside W.  When a pair closes a cycle among
// the open components the genus grows by one and the integral structure gains
// a hyperbolic pair of generators: the winding flow around the cycle and the
// unit constant offset across the glued seam.  Tree pairs (merging two
// components) add no generators.  Several pairs are glued simultaneously;
// a successive gluing yields an equivalent variety.

#pragma once

#include <vector>

#include "openjac/oav.hpp"

namespace openjac {

struct GluePair {
  BoundaryId inbound = 0;
  BoundaryId outbound = 0;
};

struct GlueOptions {
  double radical_tol = 1e-8;     // subspace distance for the radical identification
  double kernel_rel_tol = 1e-7;  // rank threshold for the W matching kernel
  double snap_tol = 1e-6;        // residual allowed when snapping to normal form
  bool validate_output = true;
};

struct GlueDiagnostics {
  double radical_distance = 0.0;
  int cycle_pairs = 0;  // pairs that raised the genus
  int tree_pairs = 0;
  ValidationReport report;
};

OpenAbelianVariety disjoint_union(const OpenAbelianVariety& x1, const OpenAbelianVariety& x2);

OpenAbelianVariety glue_pair(const OpenAbelianVariety& x, const GluePair& pair,
                             const GlueOptions& opt = {});
OpenAbelianVariety glue_many(const OpenAbelianVariety& x, const std::vector<GluePair>& pairs,
                             const GlueOptions& opt = {});
OpenAbelianVariety glue_many(const OpenAbelianVariety& x, const std::vector<GluePair>& pairs,
                             const GlueOptions& opt, GlueDiagnostics* diag);

// Index of the projection of a subspace of the complexified chart onto the
// plus polarization (twisted modes plus winding directions): dim ker minus
// dim coker at the numerical rank threshold.
int relative_dimension(const Chart& chart, const Eigen::MatrixXcd& q_basis,
                       double rank_tol = 1e-9);
// Same with respect to the minus polarization (twisted conjugate modes plus
// constant offsets).
int relative_dimension_minus(const Chart& chart, const Eigen::MatrixXcd& q_basis,
                             double rank_tol = 1e-9);

struct RelDimReport {
  int ker_p_w = 0;
  int reldim_w0 = 0;
  int ker_p_wbar = 0;
  int reldim_wbar0 = 0;
  int sum = 0;
  int two_genus = 0;
  bool verdict = false;
};

// The four relative-dimension terms of the boundary projection of W and its
// conjugate; their sum equals twice the genus.
RelDimReport check_dimension_identity(const OpenAbelianVariety& x, double rank_tol = 1e-9);

}  // namespace openjac
