#include "openjac/linalg.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace openjac::linalg {

namespace {

template <typename Mat>
Mat nullspace_impl(const Mat& a, double rel_tol) {
  if (a.rows() == 0) {
    Mat id = Mat::Identity(a.cols(), a.cols());
    return id;
  }
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = (sv.size() ? sv(0) : 0.0) * rel_tol;
  int r = 0;
  for (int k = 0; k < sv.size(); ++k)
    if (sv(k) > cut) ++r;
  return svd.matrixV().rightCols(a.cols() - r);
}

template <typename Mat>
Mat orthonormalize_impl(const Mat& a, double rel_tol) {
  if (a.cols() == 0) return a;
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cut = (sv.size() ? sv(0) : 0.0) * rel_tol;
  int r = 0;
  for (int k = 0; k < sv.size(); ++k)
    if (sv(k) > cut) ++r;
  return svd.matrixU().leftCols(r);
}

}  // namespace

MatrixXd nullspace(const MatrixXd& a, double rel_tol) { return nullspace_impl(a, rel_tol); }
MatrixXcd nullspace(const MatrixXcd& a, double rel_tol) { return nullspace_impl(a, rel_tol); }

int rank(const MatrixXcd& a, double rel_tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<MatrixXcd> svd(a);
  const auto& sv = svd.singularValues();
  const double cut = sv(0) * rel_tol;
  int r = 0;
  for (int k = 0; k < sv.size(); ++k)
    if (sv(k) > cut) ++r;
  return r;
}

MatrixXd orthonormalize(const MatrixXd& a, double rel_tol) {
  return orthonormalize_impl(a, rel_tol);
}
MatrixXcd orthonormalize(const MatrixXcd& a, double rel_tol) {
  return orthonormalize_impl(a, rel_tol);
}

MatrixXd complement_within(const MatrixXd& ambient, const MatrixXd& sub) {
  const MatrixXd qa = orthonormalize(ambient);
  if (sub.cols() == 0) return qa;
  const MatrixXd qs = orthonormalize(sub);
  // remove the sub-components, then re-orthonormalize
  MatrixXd residual = qa - qs * (qs.transpose() * qa);
  return orthonormalize(residual, 1e-9);
}

double subspace_distance(const MatrixXcd& a, const MatrixXcd& b) {
  const MatrixXcd qa = orthonormalize(a);
  const MatrixXcd qb = orthonormalize(b);
  if (qa.cols() != qb.cols()) return 1.0;
  if (qa.cols() == 0) return 0.0;
  // sin of the largest principal angle, computed from the projection residual
  // (stable for nearly equal spans, unlike sqrt(1 - cos^2))
  const MatrixXcd res = qa - qb * (qb.adjoint() * qa);
  Eigen::JacobiSVD<MatrixXcd> svd(res);
  return std::min(1.0, svd.singularValues().maxCoeff());
}

double subspace_distance(const MatrixXd& a, const MatrixXd& b) {
  return subspace_distance(MatrixXcd(a.cast<std::complex<double>>()),
                           MatrixXcd(b.cast<std::complex<double>>()));
}

std::vector<double> principal_angles(const MatrixXcd& a, const MatrixXcd& b) {
  const MatrixXcd qa = orthonormalize(a);
  const MatrixXcd qb = orthonormalize(b);
  // sine-based: accurate for the small angles we assert on
  const MatrixXcd res = qa - qb * (qb.adjoint() * qa);
  Eigen::JacobiSVD<MatrixXcd> svd(res);
  std::vector<double> angles;
  for (int k = 0; k < svd.singularValues().size(); ++k) {
    angles.push_back(std::asin(std::min(1.0, svd.singularValues()(k))));
  }
  return angles;
}

bool integer_member(const MatrixXd& gens, const VectorXd& v, double tol) {
  const double scale = std::max(1.0, v.lpNorm<Eigen::Infinity>());
  if (gens.cols() == 0) return v.lpNorm<Eigen::Infinity>() <= tol * scale;
  VectorXd c = gens.colPivHouseholderQr().solve(v);
  for (int k = 0; k < c.size(); ++k) c(k) = std::round(c(k));
  return (gens * c - v).lpNorm<Eigen::Infinity>() <= tol * scale;
}

namespace {

using IMat = Eigen::MatrixXi;

void check_overflow(const IMat& m) {
  if (m.cwiseAbs().maxCoeff() > (1 << 28))
    throw std::runtime_error("integer normal form: entries too large");
}

}  // namespace

SmithResult smith_normal_form(const Eigen::MatrixXi& a_in) {
  IMat a = a_in;
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  SmithResult res;
  res.u = IMat::Identity(rows, rows);
  res.v = IMat::Identity(cols, cols);

  int t = 0;
  while (t < std::min(rows, cols)) {
    // pivot: smallest nonzero magnitude in the remaining block
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (a(i, j) != 0 && (pi < 0 || std::abs(a(i, j)) < std::abs(a(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    a.row(t).swap(a.row(pi));
    res.u.row(t).swap(res.u.row(pi));
    a.col(t).swap(a.col(pj));
    res.v.col(t).swap(res.v.col(pj));

    bool clean = true;
    for (int i = t + 1; i < rows; ++i) {
      const int q = a(i, t) / a(t, t);
      if (q != 0) {
        a.row(i) -= q * a.row(t);
        res.u.row(i) -= q * res.u.row(t);
      }
      if (a(i, t) != 0) clean = false;
    }
    for (int j = t + 1; j < cols; ++j) {
      const int q = a(t, j) / a(t, t);
      if (q != 0) {
        a.col(j) -= q * a.col(t);
        res.v.col(j) -= q * res.v.col(t);
      }
      if (a(t, j) != 0) clean = false;
    }
    check_overflow(a);
    if (!clean) continue;  // euclid again on the smaller remainders

    // divisibility: fold in any entry the pivot does not divide
    bool divides_all = true;
    for (int i = t + 1; i < rows && divides_all; ++i)
      for (int j = t + 1; j < cols && divides_all; ++j)
        if (a(i, j) % a(t, t) != 0) {
          a.row(t) += a.row(i);
          res.u.row(t) += res.u.row(i);
          divides_all = false;
        }
    if (!divides_all) continue;
    if (a(t, t) < 0) {
      a.row(t) = -a.row(t);
      res.u.row(t) = -res.u.row(t);
    }
    ++t;
  }
  for (int k = 0; k < std::min(rows, cols); ++k)
    if (a(k, k) != 0) res.divisors.push_back(a(k, k));
  return res;
}

SymplecticBasisResult symplectic_normal_form(const Eigen::MatrixXi& gram_in) {
  const int n = static_cast<int>(gram_in.rows());
  if (gram_in.cols() != n || (gram_in + gram_in.transpose()).cwiseAbs().maxCoeff() > 0)
    throw std::invalid_argument("alternating integer matrix required");
  IMat a = gram_in;
  IMat t = IMat::Identity(n, n);
  std::vector<int> apos, bpos;
  std::vector<bool> used(n, false);
  SymplecticBasisResult res;

  // congruence column operations, mirrored on rows
  auto col_op = [&](int dst, int src, int q) {
    if (q == 0) return;
    a.col(dst) -= q * a.col(src);
    a.row(dst) -= q * a.row(src);
    t.col(dst) -= q * t.col(src);
  };
  auto col_swap = [&](int x, int y) {
    a.col(x).swap(a.col(y));
    a.row(x).swap(a.row(y));
    t.col(x).swap(t.col(y));
  };
  auto col_neg = [&](int x) {
    a.col(x) = -a.col(x);
    a.row(x) = -a.row(x);
    t.col(x) = -t.col(x);
  };

  while (true) {
    // pivot pair: minimal |a(c, d)| over unused c < d, first hit on ties
    int i = -1, j = -1;
    for (int c = 0; c < n; ++c) {
      if (used[c]) continue;
      for (int d = c + 1; d < n; ++d) {
        if (used[d] || a(c, d) == 0) continue;
        if (i < 0 || std::abs(a(c, d)) < std::abs(a(i, j))) {
          i = c;
          j = d;
        }
      }
    }
    if (i < 0) break;
    if (a(i, j) < 0) col_neg(j);

    // clear every other pairing against rows i and j; each nonzero remainder
    // strictly shrinks the pivot, so this terminates
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (int d = 0; d < n; ++d) {
        if (used[d] || d == i || d == j) continue;
        if (a(i, d) != 0) {
          col_op(d, j, a(i, d) / a(i, j));
          if (a(i, d) != 0) {
            col_swap(d, j);
            if (a(i, j) < 0) col_neg(j);
            dirty = true;
            continue;
          }
        }
        if (a(j, d) != 0) {
          col_op(d, i, a(j, d) / a(j, i));
          if (a(j, d) != 0) {
            col_swap(d, i);
            if (a(i, j) < 0) col_neg(j);
            dirty = true;
          }
        }
      }
      check_overflow(a);
    }
    res.divisors.push_back(a(i, j));
    used[i] = used[j] = true;
    apos.push_back(i);
    bpos.push_back(j);
  }
  for (int c = 0; c < n; ++c)
    if (!used[c]) throw std::invalid_argument("alternating form is singular");

  // assemble [a_1..a_g | b_1..b_g]
  const int g = static_cast<int>(apos.size());
  IMat perm = IMat::Zero(n, n);
  for (int k = 0; k < g; ++k) {
    perm(apos[k], k) = 1;
    perm(bpos[k], g + k) = 1;
  }
  res.transform = t * perm;
  res.unimodular = true;
  for (int64_t d : res.divisors)
    if (d != 1) res.unimodular = false;
  return res;
}

}  // namespace openjac::linalg
