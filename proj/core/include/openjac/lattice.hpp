// Even integral lattices with a Z/2 bilinear refinement, the central-extension
// cocycle on lattice-valued branched maps, discriminant-group bookkeeping,
// theta function ranks at genus one, and the period lattice of a closed
// genus-one variety tensored with the lattice.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "openjac/branched.hpp"
#include "openjac/oav.hpp"

namespace openjac {

class EvenLattice {
 public:
  explicit EvenLattice(Eigen::MatrixXi gram);

  static EvenLattice a1();
  static EvenLattice a2();
  static EvenLattice e8();

  int rank() const { return static_cast<int>(gram_.rows()); }
  const Eigen::MatrixXi& gram() const { return gram_; }
  int64_t inner(const Eigen::VectorXi& x, const Eigen::VectorXi& y) const;

 private:
  Eigen::MatrixXi gram_;
};

// Z/2 bilinear form with b(x, x) = <x, x> / 2 mod 2: the upper-triangular
// reduction of the gram matrix.
class BForm {
 public:
  explicit BForm(const EvenLattice& lattice);
  const Eigen::MatrixXi& matrix() const { return b_; }
  int value(const Eigen::VectorXi& x, const Eigen::VectorXi& y) const;  // in {0, 1}

 private:
  Eigen::MatrixXi b_;
};

// A map of the circle into the complexified lattice with lattice-valued
// winding: one branched function per lattice coordinate.
struct LatticeBranchedMap {
  std::vector<BranchedFunction> components;

  int rank() const { return static_cast<int>(components.size()); }
  int truncation() const { return components.empty() ? 0 : components.front().truncation(); }
  Eigen::VectorXi integral_degrees(double tol = 1e-9) const;  // throws when not integral
  LatticeBranchedMap operator+(const LatticeBranchedMap& o) const;
};

// Central-extension cocycle
//   c(f, g) = exp(pi i [ oint <f, dg> - <D_f, g(0)> + b(D_f, D_g) ]),
// with the circle integral contracted through the gram matrix and evaluated
// per component from the closed pairing form.  Unit modulus on real input.
cplx cocycle(const EvenLattice& lattice, const BForm& b, const LatticeBranchedMap& f,
             const LatticeBranchedMap& g);
// Same quantity with the component integrals evaluated by quadrature; the
// independent cross-check route.
cplx cocycle_quadrature(const EvenLattice& lattice, const BForm& b, const LatticeBranchedMap& f,
                        const LatticeBranchedMap& g, int samples);

// |L' / L| = det gram
int64_t discriminant(const EvenLattice& lattice);

// Coset representatives of L' / L in lattice-basis coordinates.
std::vector<Eigen::VectorXd> discriminant_cosets(const EvenLattice& lattice);

struct CftLabel {
  Eigen::VectorXd coset;  // representative of an element of L' / L
  int epsilon = 1;        // +1 outbound, -1 inbound
};

// |L'/L|^genus when the epsilon-weighted label sum vanishes in L'/L, else 0.
int64_t cft_dimension(const EvenLattice& lattice, int genus, const std::vector<CftLabel>& labels);

struct ThetaRankOptions {
  double cutoff = -1.0;  // gram-norm radius; < 0 chooses it from the tail bound
  int samples = 8;
  uint64_t seed = 0x5eed;
  double rank_rel_tol = 1e-8;
};

// Rank of the evaluation matrix of the theta functions theta_mu(z, tau) over
// the discriminant cosets mu at random sample points.
int theta_rank(const EvenLattice& lattice, cplx tau, const ThetaRankOptions& opt = {});

struct WlLatticeResult {
  int rank = 0;
  Eigen::MatrixXd generators;        // (2 genus * rank) columns over the real model
  Eigen::MatrixXcd w_projection;     // holomorphic coefficients of each generator
};

// Period lattice of a closed genus-one variety tensored with the lattice: the
// integral dual of the variety's cycle lattice inside U tensor L.  Rank is
// 2 * rank(L) * genus.
WlLatticeResult wl_lattice(const OpenAbelianVariety& x, const EvenLattice& lattice);

}  // namespace openjac
