// Dense helpers shared across the library: tolerance-thresholded kernels and
// ranks, orthonormal bases, subspace comparisons, rounded integer membership
// in a lattice spanned by given generators, and two classical integer normal
// forms (Smith, and the symplectic normal form of an alternating form).

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace openjac::linalg {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// columns spanning ker(A), singular values below tol * sigma_max
MatrixXd nullspace(const MatrixXd& a, double rel_tol = 1e-10);
MatrixXcd nullspace(const MatrixXcd& a, double rel_tol = 1e-10);

int rank(const MatrixXcd& a, double rel_tol = 1e-9);

// orthonormal basis of the column span
MatrixXd orthonormalize(const MatrixXd& a, double rel_tol = 1e-12);
MatrixXcd orthonormalize(const MatrixXcd& a, double rel_tol = 1e-12);

// columns of `ambient` orthogonal (Euclidean) to span(sub); both orthonormal in
MatrixXd complement_within(const MatrixXd& ambient, const MatrixXd& sub);

// spectral distance of orthogonal projectors; 1.0 when dimensions differ
double subspace_distance(const MatrixXcd& a, const MatrixXcd& b);
double subspace_distance(const MatrixXd& a, const MatrixXd& b);

// principal angles (radians, ascending) between equal-dimensional spans
std::vector<double> principal_angles(const MatrixXcd& a, const MatrixXcd& b);

// Least-squares coordinates of v in the columns of gens, rounded to integers;
// true when the rounded residual stays below tol (scaled by the input size).
bool integer_member(const MatrixXd& gens, const VectorXd& v, double tol);

struct SmithResult {
  Eigen::MatrixXi u, v;          // unimodular, u * a * v = diag
  std::vector<int64_t> divisors; // elementary divisors, divisibility chain
};
SmithResult smith_normal_form(const Eigen::MatrixXi& a);

struct SymplecticBasisResult {
  // unimodular transform: transform^T * gram * transform = [[0, I], [-I, 0]]
  Eigen::MatrixXi transform;
  std::vector<int64_t> divisors;  // one per hyperbolic pair
  bool unimodular = false;        // all divisors equal 1
};
// Normal form of an integer alternating form of full rank 2g.  Throws if the
// form is odd-dimensional after radical removal (i.e. singular input).
SymplecticBasisResult symplectic_normal_form(const Eigen::MatrixXi& gram);

}  // namespace openjac::linalg
