// Open abelian varieties at finite Fourier truncation.
//
// The stored presentation is a real symplectic space U of dimension
// dim V_chart + 2g together with
//   * iota   : embedding of the boundary block space for the stored reference
//              ordering (the inclusion [I; 0] in normal form),
//   * s      : the symplectic form as an antisymmetric matrix on U,
//   * w      : a complex basis of the positive isotropic half of U_C,
//   * lattice: 2g generator columns (U vectors) of the integral structure on
//              the annihilator of iota(V), hyperbolic over Z.
// Constructions in this library always return the normal form: coordinates
// [chart | perp] with s = blockdiag(chart gram, [[0, I], [-I, 0]]), iota the
// inclusion, lattice the standard perp basis, reference ordering ascending.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "openjac/chart.hpp"

namespace openjac {

struct CheckItem {
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct ValidationReport {
  double iota_pullback_residual = 0.0;
  double isotropy_residual = 0.0;
  double span_sigma_min = 0.0;
  double positivity_min_eig = 0.0;
  double lattice_integrality_residual = 0.0;
  std::vector<int64_t> lattice_divisors;
  double degree_residual = 0.0;
  int annihilator_dim = 0;
  std::vector<CheckItem> checks;
  bool pass = false;
};

struct ValidationOptions {
  double tol = 1e-8;              // scaled by input magnitudes
  double isotropy_tol = -1.0;     // override for the isotropy check (< 0: use tol)
  double span_floor = 1e-6;       // relative floor for the span singular value
};

class OpenAbelianVariety {
 public:
  OpenAbelianVariety(Signature sig, int truncation, Ordering reference,
                     Eigen::MatrixXd iota, Eigen::MatrixXd s,
                     Eigen::MatrixXcd w, Eigen::MatrixXd lattice);

  // closed genus-1 datum: U = R^2, S(e1, e2) = 1, W spanned by e1 + tau e2
  static OpenAbelianVariety torus(cplx tau, int truncation = 0);

  const Signature& signature() const { return sig_; }
  int truncation() const { return truncation_; }
  const Ordering& reference() const { return reference_; }
  const Chart& chart() const { return *chart_; }
  const Eigen::MatrixXd& iota() const { return iota_; }
  const Eigen::MatrixXd& s() const { return s_; }
  const Eigen::MatrixXcd& w() const { return w_; }
  const Eigen::MatrixXd& lattice() const { return lattice_; }

  int dim() const { return static_cast<int>(s_.rows()); }
  int dim_v() const { return chart_->dim(); }
  int genus() const { return (dim() - dim_v()) / 2; }
  bool closed() const { return sig_.empty(); }
  bool normal_form(double tol = 1e-12) const;

 private:
  Signature sig_;
  int truncation_;
  Ordering reference_;
  std::shared_ptr<const Chart> chart_;
  Eigen::MatrixXd iota_;
  Eigen::MatrixXd s_;
  Eigen::MatrixXcd w_;
  Eigen::MatrixXd lattice_;
};

ValidationReport validate(const OpenAbelianVariety& x, const ValidationOptions& opt = {});

// Same abstract data presented for a different boundary ordering: iota is
// composed with the order-change shift, everything else is untouched.
OpenAbelianVariety reorder(const OpenAbelianVariety& x, const Ordering& order);

// Rebuilds the normal form presentation (inclusion iota, block-diagonal s,
// standard perp lattice).  No-op on normal-form inputs.
OpenAbelianVariety normalized(const OpenAbelianVariety& x);

// Order-preserving boundary relabeling (monotone id map given as pairs).
OpenAbelianVariety relabel(const OpenAbelianVariety& x,
                           const std::map<BoundaryId, BoundaryId>& id_map);

// Integer sublattices of the chart used by the identification rules: constants
// with integral value per boundary, and integral winding degrees (balanced).
Eigen::MatrixXd integer_constant_basis(const Chart& chart);
Eigen::MatrixXd integer_degree_basis(const Chart& chart);

struct EquivalenceReport {
  bool comparable = false;
  std::string reason;       // set when not comparable
  bool equivalent = false;
  double w_distance = 0.0;
  std::vector<CheckItem> checks;
};

// Identification test for two presentations sharing the ambient normal form:
// the lattices must agree up to integral constants, and the embeddings must
// differ on integral-degree vectors only by lattice translations and integral
// constants.  Integer memberships are decided by rounded least squares.
EquivalenceReport equivalent(const OpenAbelianVariety& x1, const OpenAbelianVariety& x2,
                             double tol = 1e-6);

// Period matrix of a closed variety for an integer symplectic basis (a | b)
// with S(a_i, b_j) = delta_ij: the W basis is normalized by S(omega_i, b_j) =
// delta_ij and tau_ij = S(a_i, omega_j).  The default basis comes from the
// integer normal form of the stored lattice.
Eigen::MatrixXcd period_matrix(const OpenAbelianVariety& x);
Eigen::MatrixXcd period_matrix(const OpenAbelianVariety& x, const Eigen::MatrixXd& a_cycles,
                               const Eigen::MatrixXd& b_cycles);

struct BlockMatrix2x2 {
  Eigen::MatrixXd vv;          // dimV x dimV
  Eigen::MatrixXd v_perp;      // dimV x 2g
  Eigen::MatrixXd perp_v;      // 2g x dimV
  Eigen::MatrixXd perp_perp;   // 2g x 2g
};

// Membership in the discrete group of identifications: the perp block must be
// integral symplectic for the lattice, v_perp must carry lattice generators to
// integral constants, perp_v must carry integral degrees into the lattice, and
// vv must fix integral degrees up to integral constants.
bool sp_open_member(const BlockMatrix2x2& phi, const OpenAbelianVariety& x, double tol = 1e-6);

struct SmoothnessReport {
  // singular values of the minus-polarization part of the orthonormalized W
  // basis, padded with zeros to dim W and sorted descending
  std::vector<double> singular_values;
  int fredholm_index = 0;  // of the plus-polarization projection of W
};

SmoothnessReport smoothness_diagnostic(const OpenAbelianVariety& x, double rank_tol = 1e-9);

}  // namespace openjac
