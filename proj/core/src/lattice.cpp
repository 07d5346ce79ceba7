#include "openjac/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "openjac/linalg.hpp"

namespace openjac {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::MatrixXi;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using Eigen::VectorXi;

namespace {
constexpr cplx kI(0.0, 1.0);
constexpr double kPi = std::numbers::pi;

int mod2(int64_t v) { return static_cast<int>(((v % 2) + 2) % 2); }
}  // namespace

EvenLattice::EvenLattice(MatrixXi gram) : gram_(std::move(gram)) {
  const int r = static_cast<int>(gram_.rows());
  if (gram_.cols() != r || r == 0) throw std::invalid_argument("gram matrix must be square");
  if ((gram_ - gram_.transpose()).cwiseAbs().maxCoeff() != 0)
    throw std::invalid_argument("gram matrix must be symmetric");
  for (int i = 0; i < r; ++i)
    if (mod2(gram_(i, i)) != 0)
      throw std::invalid_argument("lattice is odd: diagonal entry " + std::to_string(i));
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(gram_.cast<double>());
  if (eig.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("gram matrix must be positive definite");
}

EvenLattice EvenLattice::a1() {
  MatrixXi g(1, 1);
  g << 2;
  return EvenLattice(g);
}

EvenLattice EvenLattice::a2() {
  MatrixXi g(2, 2);
  g << 2, -1, -1, 2;
  return EvenLattice(g);
}

EvenLattice EvenLattice::e8() {
  // Cartan matrix, Bourbaki numbering: chain 1-3-4-5-6-7-8 with 2 attached to 4
  MatrixXi g = MatrixXi::Zero(8, 8);
  for (int i = 0; i < 8; ++i) g(i, i) = 2;
  auto edge = [&](int a, int b) {
    g(a - 1, b - 1) = -1;
    g(b - 1, a - 1) = -1;
  };
  edge(1, 3);
  edge(3, 4);
  edge(4, 5);
  edge(5, 6);
  edge(6, 7);
  edge(7, 8);
  edge(2, 4);
  return EvenLattice(g);
}

int64_t EvenLattice::inner(const VectorXi& x, const VectorXi& y) const {
  return x.cast<int64_t>().dot((gram_ * y).cast<int64_t>());
}

BForm::BForm(const EvenLattice& lattice) {
  const MatrixXi& g = lattice.gram();
  const int r = lattice.rank();
  b_ = MatrixXi::Zero(r, r);
  for (int i = 0; i < r; ++i) {
    b_(i, i) = mod2(g(i, i) / 2);
    for (int j = i + 1; j < r; ++j) b_(i, j) = mod2(g(i, j));
  }
  // b(x, x) = <x, x>/2 mod 2 on basis vectors and their pairwise sums
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      VectorXi x = VectorXi::Zero(r);
      x(i) += 1;
      x(j) += 1;
      const int64_t q = lattice.inner(x, x) / 2;
      const int64_t bxx = x.cast<int64_t>().dot((b_ * x).cast<int64_t>());
      if (mod2(q) != mod2(bxx)) throw std::logic_error("b-form congruence failed");
    }
  }
}

int BForm::value(const VectorXi& x, const VectorXi& y) const {
  return mod2(x.cast<int64_t>().dot((b_ * y).cast<int64_t>()));
}

VectorXi LatticeBranchedMap::integral_degrees(double tol) const {
  VectorXi d(rank());
  for (int k = 0; k < rank(); ++k) {
    const cplx deg = components[static_cast<size_t>(k)].degree();
    const double rounded = std::round(deg.real());
    if (std::abs(deg.real() - rounded) > tol || std::abs(deg.imag()) > tol)
      throw std::invalid_argument("winding vector is not integral");
    d(k) = static_cast<int>(rounded);
  }
  return d;
}

LatticeBranchedMap LatticeBranchedMap::operator+(const LatticeBranchedMap& o) const {
  if (rank() != o.rank()) throw std::invalid_argument("rank mismatch");
  LatticeBranchedMap r = *this;
  for (int k = 0; k < rank(); ++k)
    r.components[static_cast<size_t>(k)] += o.components[static_cast<size_t>(k)];
  return r;
}

namespace {

// oint f dg reassembled from the antisymmetrized pairing
cplx circle_integral(const BranchedFunction& f, const BranchedFunction& g) {
  return pairing(f, g) + f.degree() * g.value_at_zero() + 0.5 * f.degree() * g.degree();
}

cplx circle_integral_quadrature(const BranchedFunction& f, const BranchedFunction& g,
                                int samples) {
  return quadrature_pairing(f, g, samples) + f.degree() * g.value_at_zero() +
         0.5 * f.degree() * g.degree();
}

template <typename Integral>
cplx cocycle_impl(const EvenLattice& lattice, const BForm& b, const LatticeBranchedMap& f,
                  const LatticeBranchedMap& g, Integral integral) {
  if (f.rank() != lattice.rank() || g.rank() != lattice.rank())
    throw std::invalid_argument("map rank does not match the lattice");
  const VectorXi df = f.integral_degrees();
  const VectorXi dg = g.integral_degrees();

  cplx exponent = 0.0;
  for (int a = 0; a < lattice.rank(); ++a) {
    for (int c = 0; c < lattice.rank(); ++c) {
      if (lattice.gram()(a, c) == 0) continue;
      const double gac = lattice.gram()(a, c);
      exponent += gac * integral(f.components[a], g.components[c]);
      exponent -= gac * static_cast<double>(df(a)) * g.components[c].value_at_zero();
    }
  }
  exponent += static_cast<double>(b.value(df, dg));
  return std::exp(kPi * kI * exponent);
}

}  // namespace

cplx cocycle(const EvenLattice& lattice, const BForm& b, const LatticeBranchedMap& f,
             const LatticeBranchedMap& g) {
  return cocycle_impl(lattice, b, f, g,
                      [](const BranchedFunction& x, const BranchedFunction& y) {
                        return circle_integral(x, y);
                      });
}

cplx cocycle_quadrature(const EvenLattice& lattice, const BForm& b, const LatticeBranchedMap& f,
                        const LatticeBranchedMap& g, int samples) {
  return cocycle_impl(lattice, b, f, g,
                      [samples](const BranchedFunction& x, const BranchedFunction& y) {
                        return circle_integral_quadrature(x, y, samples);
                      });
}

int64_t discriminant(const EvenLattice& lattice) {
  const auto snf = linalg::smith_normal_form(lattice.gram());
  int64_t det = 1;
  for (int64_t d : snf.divisors) det *= d;
  return det;
}

std::vector<VectorXd> discriminant_cosets(const EvenLattice& lattice) {
  const int r = lattice.rank();
  const auto snf = linalg::smith_normal_form(lattice.gram());
  if (static_cast<int>(snf.divisors.size()) != r)
    throw std::logic_error("gram matrix singular");
  // integer inverse of the unimodular row transform
  const MatrixXd u_inv_d = snf.u.cast<double>().inverse();
  MatrixXi u_inv(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) u_inv(i, j) = static_cast<int>(std::llround(u_inv_d(i, j)));

  const MatrixXd g = lattice.gram().cast<double>();
  const Eigen::FullPivLU<MatrixXd> lu(g);
  std::vector<VectorXd> cosets;
  std::vector<int64_t> idx(r, 0);
  while (true) {
    VectorXi m(r);
    for (int k = 0; k < r; ++k) m(k) = static_cast<int>(idx[k]);
    const VectorXi kvec = u_inv * m;
    cosets.push_back(lu.solve(kvec.cast<double>()));
    int pos = 0;
    while (pos < r) {
      if (++idx[pos] < snf.divisors[pos]) break;
      idx[pos] = 0;
      ++pos;
    }
    if (pos == r) break;
  }
  return cosets;
}

int64_t cft_dimension(const EvenLattice& lattice, int genus, const std::vector<CftLabel>& labels) {
  if (genus < 0) throw std::invalid_argument("genus must be nonnegative");
  const MatrixXd g = lattice.gram().cast<double>();
  VectorXd sum = VectorXd::Zero(lattice.rank());
  for (const CftLabel& l : labels) {
    if (l.coset.size() != lattice.rank()) throw std::invalid_argument("label has wrong rank");
    const VectorXd gl = g * l.coset;
    for (int k = 0; k < gl.size(); ++k)
      if (std::abs(gl(k) - std::round(gl(k))) > 1e-6)
        throw std::invalid_argument("label is not in the dual lattice");
    sum += static_cast<double>(l.epsilon) * l.coset;
  }
  for (int k = 0; k < sum.size(); ++k)
    if (std::abs(sum(k) - std::round(sum(k))) > 1e-6) return 0;
  int64_t out = 1;
  const int64_t det = discriminant(lattice);
  for (int k = 0; k < genus; ++k) out *= det;
  return out;
}

namespace {

// lattice points of (mu + Z^r) with gram norm <= r2, sorted by (norm, lex)
std::vector<VectorXd> enumerate_shell(const MatrixXd& gram, const VectorXd& mu, double r2) {
  const int r = static_cast<int>(gram.rows());
  const Eigen::LLT<MatrixXd> llt(gram);
  const MatrixXd rm = llt.matrixU();
  std::vector<VectorXd> points;
  VectorXd x = VectorXd::Zero(r);

  std::function<void(int, double)> recurse = [&](int level, double budget) {
    if (level < 0) {
      points.push_back(x + mu);
      return;
    }
    // quadratic coefficient of x_level once deeper coordinates are fixed
    double shift = mu(level);
    for (int j = level + 1; j < r; ++j) shift += rm(level, j) / rm(level, level) * (x(j) + mu(j));
    const double half_width = std::sqrt(std::max(0.0, budget)) / rm(level, level);
    const int lo = static_cast<int>(std::ceil(-shift - half_width - 1e-12));
    const int hi = static_cast<int>(std::floor(-shift + half_width + 1e-12));
    for (int v = lo; v <= hi; ++v) {
      x(level) = v;
      const double term = rm(level, level) * (v + shift);
      recurse(level - 1, budget - term * term);
    }
    x(level) = 0;
  };
  recurse(r - 1, r2);

  std::sort(points.begin(), points.end(), [&](const VectorXd& a, const VectorXd& b) {
    const double na = a.dot(gram * a), nb = b.dot(gram * b);
    if (std::abs(na - nb) > 1e-9) return na < nb;
    for (int k = 0; k < r; ++k)
      if (std::abs(a(k) - b(k)) > 1e-9) return a(k) < b(k);
    return false;
  });
  return points;
}

uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double uniform01(uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace

int theta_rank(const EvenLattice& lattice, cplx tau, const ThetaRankOptions& opt) {
  if (tau.imag() <= 0.0) throw std::invalid_argument("tau must lie in the upper half plane");
  const int r = lattice.rank();
  const MatrixXd g = lattice.gram().cast<double>();
  double r2 = opt.cutoff > 0.0 ? opt.cutoff * opt.cutoff
                               : (12.0 * std::log(10.0) + 35.0) / (kPi * tau.imag());

  const auto cosets = discriminant_cosets(lattice);
  const int n_cosets = static_cast<int>(cosets.size());
  const int samples = std::max(opt.samples, n_cosets + 2);

  uint64_t state = opt.seed;
  std::vector<VectorXcd> zs;
  for (int s = 0; s < samples; ++s) {
    VectorXcd z(r);
    for (int k = 0; k < r; ++k)
      z(k) = 0.02 * cplx(2.0 * uniform01(state) - 1.0, 2.0 * uniform01(state) - 1.0);
    zs.push_back(z);
  }

  MatrixXcd eval(n_cosets, samples);
  for (int m = 0; m < n_cosets; ++m) {
    const auto points = enumerate_shell(g, cosets[static_cast<size_t>(m)], r2);
    for (int s = 0; s < samples; ++s) {
      cplx acc = 0.0;
      for (const VectorXd& p : points) {
        const double norm = p.dot(g * p);
        const cplx phase = ((g * p).cast<cplx>().cwiseProduct(zs[static_cast<size_t>(s)])).sum();
        acc += std::exp(kPi * kI * tau * norm + 2.0 * kPi * kI * phase);
      }
      eval(m, s) = acc;
    }
  }
  return linalg::rank(eval, opt.rank_rel_tol);
}

WlLatticeResult wl_lattice(const OpenAbelianVariety& x, const EvenLattice& lattice) {
  if (!x.closed() || x.genus() != 1)
    throw std::invalid_argument("requires a closed genus-one variety");
  const int r = lattice.rank();
  const int d = x.dim();  // = 2

  WlLatticeResult res;
  res.generators = MatrixXd::Zero(d * r, 2 * r);
  res.w_projection = MatrixXcd::Zero(1, 2 * r);

  // U_C = W + conj W: coefficients of the cycle generators on the W side
  MatrixXcd frame(d, 2);
  frame.col(0) = x.w().col(0);
  frame.col(1) = x.w().col(0).conjugate();
  const Eigen::FullPivLU<MatrixXcd> lu(frame);

  int col = 0;
  for (int i = 0; i < 2; ++i) {
    const VectorXd cycle = x.lattice().col(i);
    const VectorXcd coeff = lu.solve(cycle.cast<cplx>());
    for (int a = 0; a < r; ++a) {
      res.generators.block(a * d, col, d, 1) = cycle;
      res.w_projection(0, col) = coeff(0);
      ++col;
    }
  }
  res.rank = static_cast<int>(
      Eigen::FullPivLU<MatrixXd>(res.generators).rank());
  return res;
}

}  // namespace openjac
