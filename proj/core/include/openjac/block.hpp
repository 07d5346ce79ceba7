// Block vectors: one branched function per boundary circle of a collection of
// open connected components, with the degree-sum-zero constraint per component
// and one additive constant per component quotiented away.
//
// For a linear order < of all boundary ids, the block form is
//
//   S_<(x, y) = sum_i eps_i S(x_i, y_i)
//             - 1/2 sum_{i < j} eps_i eps_j (D_{x_i} D_{y_j} - D_{y_i} D_{x_j}),
//
// eps = +1 outbound, -1 inbound, D = winding degree.  Changing the order from
// `from` to `to` composes with the order-change shift
//
//   x'_i = x_i - sum { eps_j D_{x_j} : j <_from i and i <_to j },
//
// which leaves the form invariant: S_from(x, y) = S_to(x', y').

#pragma once

#include <map>
#include <string>
#include <vector>

#include "openjac/branched.hpp"

namespace openjac {

using BoundaryId = int;

struct BoundaryMark {
  BoundaryId id = 0;
  bool outbound = true;
};

struct ComponentSignature {
  int component_id = 0;
  std::vector<BoundaryMark> boundaries;  // kept sorted by id
};

// Roster of open connected components.  Possibly empty (closed case).
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<ComponentSignature> components);

  const std::vector<ComponentSignature>& components() const { return components_; }
  size_t component_count() const { return components_.size(); }
  bool empty() const { return components_.empty(); }

  // all boundary ids, component-major, ascending within each component
  const std::vector<BoundaryId>& flat_ids() const { return flat_ids_; }
  int epsilon(BoundaryId id) const;  // +1 outbound, -1 inbound
  size_t component_index_of(BoundaryId id) const;
  size_t flat_index_of(BoundaryId id) const;
  bool has_id(BoundaryId id) const { return by_id_.count(id) > 0; }

  bool operator==(const Signature& o) const;

 private:
  std::vector<ComponentSignature> components_;
  std::vector<BoundaryId> flat_ids_;
  std::map<BoundaryId, std::pair<size_t, size_t>> by_id_;  // id -> (component, flat)
};

// Linear order of all boundary ids, given as the id list from least to greatest.
class Ordering {
 public:
  Ordering() = default;
  explicit Ordering(std::vector<BoundaryId> ids);

  static Ordering ascending(const Signature& sig);

  const std::vector<BoundaryId>& ids() const { return ids_; }
  int position(BoundaryId id) const;
  bool before(BoundaryId a, BoundaryId b) const { return position(a) < position(b); }
  bool same_id_set(const Ordering& o) const;
  // least element moved past the greatest, rest unchanged
  Ordering rotated() const;

 private:
  std::vector<BoundaryId> ids_;
  std::map<BoundaryId, int> pos_;
};

class BlockVector {
 public:
  BlockVector() = default;
  BlockVector(Signature sig, int truncation);

  const Signature& signature() const { return sig_; }
  int truncation() const { return truncation_; }

  const BranchedFunction& at(BoundaryId id) const;
  BranchedFunction& at(BoundaryId id);

  // eps-weighted degree sum of one component; zero for members of the space
  cplx degree_sum(size_t component_index) const;
  double max_degree_residual() const;
  double scale() const;  // max coefficient magnitude over all boundaries

  bool gauge_fixed() const { return gauge_fixed_; }
  // canonical representative: the constant is removed so that c_0 vanishes on
  // the least boundary id of every component
  BlockVector gauge_fix() const;

  BlockVector operator+(const BlockVector& o) const;
  BlockVector operator-(const BlockVector& o) const;
  BlockVector operator*(cplx s) const;

 private:
  Signature sig_;
  int truncation_ = 0;
  std::vector<BranchedFunction> funcs_;  // aligned with sig_.flat_ids()
  bool gauge_fixed_ = false;
};

// The ordered block form S_<.  Requires matching signatures and truncation and
// degree-sum-zero on both arguments (tolerance scales with input size).
cplx block_pairing(const BlockVector& x, const BlockVector& y, const Ordering& order);

// Order-change shift from `from` to `to`; subtracts one constant per boundary.
BlockVector standard_transform(const BlockVector& x, const Ordering& from, const Ordering& to);

// Equality in the constant quotient (gauge-fixed coefficientwise comparison).
bool quotient_equal(const BlockVector& x, const BlockVector& y, double tol);

struct PolarizationSplit {
  BlockVector plus;      // modes n >= 1
  BlockVector minus;     // modes n <= -1
  BlockVector constants; // c_0 per boundary
  BlockVector degrees;   // winding parts
};

// Plain mode split per boundary circle; parts sum back to the input exactly.
PolarizationSplit polarization_split(const BlockVector& x);

}  // namespace openjac
