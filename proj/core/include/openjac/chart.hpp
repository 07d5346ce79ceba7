// Real coordinates for the truncated block space of a signature.
//
// Per open connected component with boundaries b_0 < b_1 < ... < b_{m-1}
// (ascending ids) the chart stores
//
//   [ degree(b_1..b_{m-1}) | c_0(b_1..b_{m-1}) | per boundary: (x_n, y_n), n = 1..N ]
//
// with c_{+n} = x_n + i y_n and c_{-n} = x_n - i y_n.  The degree of b_0 is
// recovered from the degree-sum-zero constraint and c_0(b_0) is the gauge
// anchor (always zero), so the chart parametrizes the quotient space
// faithfully: real dimension m(2N+2) - 2 per component.  Complexifying the
// coordinates complexifies the space; x_n, y_n then vary independently.

#pragma once

#include <Eigen/Dense>

#include "openjac/block.hpp"

namespace openjac {

class Chart {
 public:
  Chart(Signature sig, int truncation);

  const Signature& signature() const { return sig_; }
  int truncation() const { return truncation_; }
  int dim() const { return dim_; }

  Eigen::VectorXcd encode(const BlockVector& x, double tol = 1e-9) const;
  Eigen::VectorXd encode_real(const BlockVector& x, double tol = 1e-9) const;
  BlockVector decode(const Eigen::VectorXcd& coords) const;
  BlockVector decode_real(const Eigen::VectorXd& coords) const;

  // Gram matrix of the ordered block form on the chart basis
  Eigen::MatrixXd gram(const Ordering& order) const;

  // chart matrix of the order-change shift from `from` to `to`
  Eigen::MatrixXd transform_matrix(const Ordering& from, const Ordering& to) const;

  // coordinate positions
  int degree_coord(BoundaryId id) const;    // -1 for the balance anchor b_0
  int constant_coord(BoundaryId id) const;  // -1 for the gauge anchor b_0
  int mode_coord_x(BoundaryId id, int n) const;
  int mode_coord_y(BoundaryId id, int n) const;

  // extraction row for the mode coefficient c_m of one boundary
  Eigen::RowVectorXcd mode_reader(BoundaryId id, int m) const;
  // extraction row for the winding degree of one boundary
  Eigen::RowVectorXd degree_reader(BoundaryId id) const;

  // Orientation-twisted polarization: on an outbound boundary the plus space
  // holds modes e^{+i n theta}, on an inbound one e^{-i n theta} (the side a
  // disk glued along that boundary would fill holomorphically).  The winding
  // coordinates are assigned to the plus space and the constant offsets to the
  // minus space so the two halves split the chart exactly.
  Eigen::MatrixXcd vplus_basis() const;
  Eigen::MatrixXcd vminus_basis() const;
  // rows mapping chart vectors to minus-mode coefficients, scaled to the
  // Hilbert norm sqrt(4 pi n) of each mode
  Eigen::MatrixXcd vminus_reader() const;
  Eigen::MatrixXcd vplus_reader() const;

 private:
  struct ComponentOffsets {
    int deg = 0;    // first degree coordinate
    int cst = 0;    // first constant coordinate
  };

  Signature sig_;
  int truncation_;
  int dim_;
  std::vector<ComponentOffsets> comp_offsets_;
  std::map<BoundaryId, int> mode_offsets_;  // first (x_1) coordinate per boundary
};

}  // namespace openjac
