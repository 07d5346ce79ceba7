#include "openjac/chart.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace openjac {

namespace {
constexpr cplx kI(0.0, 1.0);
}

Chart::Chart(Signature sig, int truncation) : sig_(std::move(sig)), truncation_(truncation) {
  int off = 0;
  for (const ComponentSignature& comp : sig_.components()) {
    const int m = static_cast<int>(comp.boundaries.size());
    ComponentOffsets co;
    co.deg = off;
    off += m - 1;
    co.cst = off;
    off += m - 1;
    comp_offsets_.push_back(co);
    for (const BoundaryMark& b : comp.boundaries) {
      mode_offsets_[b.id] = off;
      off += 2 * truncation_;
    }
  }
  dim_ = off;
}

int Chart::degree_coord(BoundaryId id) const {
  const size_t c = sig_.component_index_of(id);
  const auto& bs = sig_.components()[c].boundaries;
  for (size_t k = 0; k < bs.size(); ++k) {
    if (bs[k].id == id) return k == 0 ? -1 : comp_offsets_[c].deg + static_cast<int>(k) - 1;
  }
  throw std::logic_error("chart out of sync");
}

int Chart::constant_coord(BoundaryId id) const {
  const size_t c = sig_.component_index_of(id);
  const auto& bs = sig_.components()[c].boundaries;
  for (size_t k = 0; k < bs.size(); ++k) {
    if (bs[k].id == id) return k == 0 ? -1 : comp_offsets_[c].cst + static_cast<int>(k) - 1;
  }
  throw std::logic_error("chart out of sync");
}

int Chart::mode_coord_x(BoundaryId id, int n) const {
  return mode_offsets_.at(id) + 2 * (n - 1);
}

int Chart::mode_coord_y(BoundaryId id, int n) const {
  return mode_offsets_.at(id) + 2 * (n - 1) + 1;
}

Eigen::VectorXcd Chart::encode(const BlockVector& x, double tol) const {
  if (!(x.signature() == sig_) || x.truncation() != truncation_)
    throw std::invalid_argument("chart signature mismatch");
  const double scale = std::max(1.0, x.scale());
  if (x.max_degree_residual() > tol * scale)
    throw std::invalid_argument("degree-sum-zero violated");
  const BlockVector g = x.gauge_fix();

  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim_);
  for (const ComponentSignature& comp : sig_.components()) {
    for (size_t k = 1; k < comp.boundaries.size(); ++k) {
      const BoundaryId id = comp.boundaries[k].id;
      v(degree_coord(id)) = g.at(id).degree();
      v(constant_coord(id)) = g.at(id).coeff(0);
    }
    for (const BoundaryMark& b : comp.boundaries) {
      for (int n = 1; n <= truncation_; ++n) {
        const cplx cp = g.at(b.id).coeff(n);
        const cplx cm = g.at(b.id).coeff(-n);
        v(mode_coord_x(b.id, n)) = 0.5 * (cp + cm);
        v(mode_coord_y(b.id, n)) = (cp - cm) / (2.0 * kI);
      }
    }
  }
  return v;
}

Eigen::VectorXd Chart::encode_real(const BlockVector& x, double tol) const {
  const Eigen::VectorXcd v = encode(x, tol);
  if (v.imag().lpNorm<Eigen::Infinity>() > tol * std::max(1.0, x.scale()))
    throw std::invalid_argument("block vector is not real");
  return v.real();
}

BlockVector Chart::decode(const Eigen::VectorXcd& coords) const {
  if (coords.size() != dim_) throw std::invalid_argument("coordinate dimension mismatch");
  BlockVector x(sig_, truncation_);
  for (size_t c = 0; c < sig_.component_count(); ++c) {
    const auto& bs = sig_.components()[c].boundaries;
    cplx weighted = 0.0;
    for (size_t k = 1; k < bs.size(); ++k) {
      const cplx d = coords(degree_coord(bs[k].id));
      x.at(bs[k].id).set_degree(d);
      x.at(bs[k].id).set_coeff(0, coords(constant_coord(bs[k].id)));
      weighted += static_cast<double>(bs[k].outbound ? 1 : -1) * d;
    }
    const double e0 = bs[0].outbound ? 1.0 : -1.0;
    x.at(bs[0].id).set_degree(-e0 * weighted);
    for (const BoundaryMark& b : bs) {
      for (int n = 1; n <= truncation_; ++n) {
        const cplx xn = coords(mode_coord_x(b.id, n));
        const cplx yn = coords(mode_coord_y(b.id, n));
        x.at(b.id).set_coeff(n, xn + kI * yn);
        x.at(b.id).set_coeff(-n, xn - kI * yn);
      }
    }
  }
  return x;
}

BlockVector Chart::decode_real(const Eigen::VectorXd& coords) const {
  return decode(coords.cast<cplx>());
}

Eigen::MatrixXd Chart::gram(const Ordering& order) const {
  std::vector<BlockVector> basis;
  basis.reserve(dim_);
  for (int k = 0; k < dim_; ++k) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim_);
    e(k) = 1.0;
    basis.push_back(decode(e));
  }
  Eigen::MatrixXd g(dim_, dim_);
  g.setZero();
  for (int a = 0; a < dim_; ++a) {
    for (int b = a + 1; b < dim_; ++b) {
      const cplx s = block_pairing(basis[a], basis[b], order);
      if (std::abs(s.imag()) > 1e-12 * std::max(1.0, std::abs(s)))
        throw std::logic_error("block form not real on real basis");
      g(a, b) = s.real();
      g(b, a) = -s.real();
    }
  }
  return g;
}

Eigen::MatrixXd Chart::transform_matrix(const Ordering& from, const Ordering& to) const {
  Eigen::MatrixXd t(dim_, dim_);
  for (int k = 0; k < dim_; ++k) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim_);
    e(k) = 1.0;
    const BlockVector moved = standard_transform(decode(e), from, to);
    const Eigen::VectorXcd col = encode(moved);
    t.col(k) = col.real();
  }
  return t;
}

Eigen::RowVectorXcd Chart::mode_reader(BoundaryId id, int m) const {
  if (m == 0 || std::abs(m) > truncation_) throw std::invalid_argument("bad mode index");
  Eigen::RowVectorXcd r = Eigen::RowVectorXcd::Zero(dim_);
  r(mode_coord_x(id, std::abs(m))) = 1.0;
  r(mode_coord_y(id, std::abs(m))) = (m > 0) ? kI : -kI;
  return r;
}

Eigen::RowVectorXd Chart::degree_reader(BoundaryId id) const {
  Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(dim_);
  const int dc = degree_coord(id);
  if (dc >= 0) {
    r(dc) = 1.0;
    return r;
  }
  // balance anchor: degree is minus the eps-weighted sum of the others
  const size_t c = sig_.component_index_of(id);
  const auto& bs = sig_.components()[c].boundaries;
  const double e0 = bs[0].outbound ? 1.0 : -1.0;
  for (size_t k = 1; k < bs.size(); ++k) {
    r(degree_coord(bs[k].id)) = -e0 * (bs[k].outbound ? 1.0 : -1.0);
  }
  return r;
}

Eigen::MatrixXcd Chart::vplus_basis() const {
  std::vector<Eigen::VectorXcd> cols;
  for (BoundaryId id : sig_.flat_ids()) {
    const int eps = sig_.epsilon(id);
    for (int n = 1; n <= truncation_; ++n) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim_);
      const int m = eps * n;
      v(mode_coord_x(id, n)) = 0.5;
      v(mode_coord_y(id, n)) = (m > 0) ? -0.5 * kI : 0.5 * kI;
      cols.push_back(v);
    }
  }
  for (size_t c = 0; c < sig_.component_count(); ++c) {
    const auto& bs = sig_.components()[c].boundaries;
    for (size_t k = 1; k < bs.size(); ++k) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim_);
      v(degree_coord(bs[k].id)) = 1.0;
      cols.push_back(v);
    }
  }
  Eigen::MatrixXcd out(dim_, static_cast<int>(cols.size()));
  for (size_t k = 0; k < cols.size(); ++k) out.col(k) = cols[k];
  return out;
}

Eigen::MatrixXcd Chart::vminus_basis() const {
  std::vector<Eigen::VectorXcd> cols;
  for (BoundaryId id : sig_.flat_ids()) {
    const int eps = sig_.epsilon(id);
    for (int n = 1; n <= truncation_; ++n) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim_);
      const int m = -eps * n;
      v(mode_coord_x(id, n)) = 0.5;
      v(mode_coord_y(id, n)) = (m > 0) ? -0.5 * kI : 0.5 * kI;
      cols.push_back(v);
    }
  }
  for (size_t c = 0; c < sig_.component_count(); ++c) {
    const auto& bs = sig_.components()[c].boundaries;
    for (size_t k = 1; k < bs.size(); ++k) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim_);
      v(constant_coord(bs[k].id)) = 1.0;
      cols.push_back(v);
    }
  }
  Eigen::MatrixXcd out(dim_, static_cast<int>(cols.size()));
  for (size_t k = 0; k < cols.size(); ++k) out.col(k) = cols[k];
  return out;
}

Eigen::MatrixXcd Chart::vminus_reader() const {
  const int rows = static_cast<int>(sig_.flat_ids().size()) * truncation_;
  Eigen::MatrixXcd r(rows, dim_);
  int row = 0;
  for (BoundaryId id : sig_.flat_ids()) {
    const int eps = sig_.epsilon(id);
    for (int n = 1; n <= truncation_; ++n) {
      r.row(row++) = std::sqrt(4.0 * std::numbers::pi * n) * mode_reader(id, -eps * n);
    }
  }
  return r;
}

Eigen::MatrixXcd Chart::vplus_reader() const {
  const int rows = static_cast<int>(sig_.flat_ids().size()) * truncation_;
  Eigen::MatrixXcd r(rows, dim_);
  int row = 0;
  for (BoundaryId id : sig_.flat_ids()) {
    const int eps = sig_.epsilon(id);
    for (int n = 1; n <= truncation_; ++n) {
      r.row(row++) = std::sqrt(4.0 * std::numbers::pi * n) * mode_reader(id, eps * n);
    }
  }
  return r;
}

}  // namespace openjac
