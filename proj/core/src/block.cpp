#include "openjac/block.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace openjac {

Signature::Signature(std::vector<ComponentSignature> components)
    : components_(std::move(components)) {
  std::sort(components_.begin(), components_.end(),
            [](const ComponentSignature& a, const ComponentSignature& b) {
              if (a.boundaries.empty() || b.boundaries.empty())
                return a.component_id < b.component_id;
              return a.boundaries.front().id < b.boundaries.front().id;
            });
  for (auto& comp : components_) {
    if (comp.boundaries.empty())
      throw std::invalid_argument("open component with no boundary");
    std::sort(comp.boundaries.begin(), comp.boundaries.end(),
              [](const BoundaryMark& a, const BoundaryMark& b) { return a.id < b.id; });
  }
  for (size_t c = 0; c < components_.size(); ++c) {
    for (const BoundaryMark& b : components_[c].boundaries) {
      if (by_id_.count(b.id)) throw std::invalid_argument("duplicate boundary id");
      by_id_[b.id] = {c, flat_ids_.size()};
      flat_ids_.push_back(b.id);
    }
  }
}

int Signature::epsilon(BoundaryId id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw std::invalid_argument("unknown boundary id");
  const auto& comp = components_[it->second.first];
  for (const BoundaryMark& b : comp.boundaries) {
    if (b.id == id) return b.outbound ? 1 : -1;
  }
  throw std::logic_error("signature index out of sync");
}

size_t Signature::component_index_of(BoundaryId id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw std::invalid_argument("unknown boundary id");
  return it->second.first;
}

size_t Signature::flat_index_of(BoundaryId id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw std::invalid_argument("unknown boundary id");
  return it->second.second;
}

bool Signature::operator==(const Signature& o) const {
  if (components_.size() != o.components_.size()) return false;
  for (size_t c = 0; c < components_.size(); ++c) {
    const auto& a = components_[c].boundaries;
    const auto& b = o.components_[c].boundaries;
    if (a.size() != b.size()) return false;
    for (size_t k = 0; k < a.size(); ++k) {
      if (a[k].id != b[k].id || a[k].outbound != b[k].outbound) return false;
    }
  }
  return true;
}

Ordering::Ordering(std::vector<BoundaryId> ids) : ids_(std::move(ids)) {
  for (size_t k = 0; k < ids_.size(); ++k) {
    if (pos_.count(ids_[k])) throw std::invalid_argument("ordering repeats an id");
    pos_[ids_[k]] = static_cast<int>(k);
  }
}

Ordering Ordering::ascending(const Signature& sig) {
  std::vector<BoundaryId> ids = sig.flat_ids();
  std::sort(ids.begin(), ids.end());
  return Ordering(ids);
}

int Ordering::position(BoundaryId id) const {
  auto it = pos_.find(id);
  if (it == pos_.end()) throw std::invalid_argument("id not in ordering");
  return it->second;
}

bool Ordering::same_id_set(const Ordering& o) const {
  if (ids_.size() != o.ids_.size()) return false;
  for (BoundaryId id : ids_)
    if (!o.pos_.count(id)) return false;
  return true;
}

Ordering Ordering::rotated() const {
  if (ids_.empty()) return *this;
  std::vector<BoundaryId> r(ids_.begin() + 1, ids_.end());
  r.push_back(ids_.front());
  return Ordering(r);
}

BlockVector::BlockVector(Signature sig, int truncation)
    : sig_(std::move(sig)), truncation_(truncation) {
  funcs_.assign(sig_.flat_ids().size(), BranchedFunction(0.0, truncation));
}

const BranchedFunction& BlockVector::at(BoundaryId id) const {
  return funcs_[sig_.flat_index_of(id)];
}

BranchedFunction& BlockVector::at(BoundaryId id) {
  gauge_fixed_ = false;
  return funcs_[sig_.flat_index_of(id)];
}

cplx BlockVector::degree_sum(size_t component_index) const {
  cplx s = 0.0;
  for (const BoundaryMark& b : sig_.components()[component_index].boundaries) {
    s += static_cast<double>(b.outbound ? 1 : -1) * at(b.id).degree();
  }
  return s;
}

double BlockVector::max_degree_residual() const {
  double r = 0.0;
  for (size_t c = 0; c < sig_.component_count(); ++c)
    r = std::max(r, std::abs(degree_sum(c)));
  return r;
}

double BlockVector::scale() const {
  double m = 0.0;
  for (const BranchedFunction& f : funcs_) m = std::max(m, f.max_abs_coeff());
  return m;
}

BlockVector BlockVector::gauge_fix() const {
  BlockVector r = *this;
  for (const ComponentSignature& comp : sig_.components()) {
    const BoundaryId anchor = comp.boundaries.front().id;
    const cplx c = r.at(anchor).coeff(0);
    if (c == cplx(0.0)) continue;
    const BranchedFunction shift = BranchedFunction::constant(c, truncation_);
    for (const BoundaryMark& b : comp.boundaries) {
      r.at(b.id) = r.at(b.id) - shift;
    }
  }
  r.gauge_fixed_ = true;
  return r;
}

BlockVector BlockVector::operator+(const BlockVector& o) const {
  if (!(sig_ == o.sig_) || truncation_ != o.truncation_)
    throw std::invalid_argument("signature mismatch");
  BlockVector r = *this;
  for (size_t k = 0; k < funcs_.size(); ++k) r.funcs_[k] += o.funcs_[k];
  r.gauge_fixed_ = false;
  return r;
}

BlockVector BlockVector::operator-(const BlockVector& o) const {
  return *this + o * cplx(-1.0);
}

BlockVector BlockVector::operator*(cplx s) const {
  BlockVector r = *this;
  for (auto& f : r.funcs_) f = f * s;
  return r;
}

cplx block_pairing(const BlockVector& x, const BlockVector& y, const Ordering& order) {
  if (!(x.signature() == y.signature()) || x.truncation() != y.truncation())
    throw std::invalid_argument("signature mismatch");
  const Signature& sig = x.signature();
  if (!Ordering::ascending(sig).same_id_set(order))
    throw std::invalid_argument("ordering does not cover the signature");

  const double tol = 1e-9 * std::max(1.0, std::max(x.scale(), y.scale()));
  if (x.max_degree_residual() > tol || y.max_degree_residual() > tol)
    throw std::invalid_argument("degree-sum-zero violated");

  cplx s = 0.0;
  for (BoundaryId id : sig.flat_ids()) {
    s += static_cast<double>(sig.epsilon(id)) * pairing(x.at(id), y.at(id));
  }
  const auto& ids = order.ids();
  for (size_t a = 0; a < ids.size(); ++a) {
    const double ei = sig.epsilon(ids[a]);
    const cplx dxi = x.at(ids[a]).degree();
    const cplx dyi = y.at(ids[a]).degree();
    for (size_t b = a + 1; b < ids.size(); ++b) {
      const double ej = sig.epsilon(ids[b]);
      s -= 0.5 * ei * ej * (dxi * y.at(ids[b]).degree() - dyi * x.at(ids[b]).degree());
    }
  }
  return s;
}

BlockVector standard_transform(const BlockVector& x, const Ordering& from, const Ordering& to) {
  if (!from.same_id_set(to)) throw std::invalid_argument("ordering id sets differ");
  const Signature& sig = x.signature();
  BlockVector r = x;
  for (BoundaryId i : sig.flat_ids()) {
    cplx shift = 0.0;
    for (BoundaryId j : sig.flat_ids()) {
      if (j == i) continue;
      if (from.before(j, i) && to.before(i, j)) {
        shift += static_cast<double>(sig.epsilon(j)) * x.at(j).degree();
      }
    }
    if (shift != cplx(0.0)) {
      r.at(i) = r.at(i) - BranchedFunction::constant(shift, x.truncation());
    }
  }
  return r;
}

bool quotient_equal(const BlockVector& x, const BlockVector& y, double tol) {
  if (!(x.signature() == y.signature()) || x.truncation() != y.truncation()) return false;
  const BlockVector a = x.gauge_fix();
  const BlockVector b = y.gauge_fix();
  const int N = x.truncation();
  for (BoundaryId id : x.signature().flat_ids()) {
    if (std::abs(a.at(id).degree() - b.at(id).degree()) > tol) return false;
    for (int n = -N; n <= N; ++n) {
      if (std::abs(a.at(id).coeff(n) - b.at(id).coeff(n)) > tol) return false;
    }
  }
  return true;
}

PolarizationSplit polarization_split(const BlockVector& x) {
  const Signature& sig = x.signature();
  const int N = x.truncation();
  PolarizationSplit out{BlockVector(sig, N), BlockVector(sig, N), BlockVector(sig, N),
                        BlockVector(sig, N)};
  for (BoundaryId id : sig.flat_ids()) {
    const BranchedFunction& f = x.at(id);
    out.degrees.at(id).set_degree(f.degree());
    out.constants.at(id).set_coeff(0, f.coeff(0));
    for (int n = 1; n <= N; ++n) {
      out.plus.at(id).set_coeff(n, f.coeff(n));
      out.minus.at(id).set_coeff(-n, f.coeff(-n));
    }
  }
  return out;
}

}  // namespace openjac
