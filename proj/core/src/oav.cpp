#include "openjac/oav.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "openjac/linalg.hpp"

namespace openjac {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace {

constexpr cplx kI(0.0, 1.0);

MatrixXd inclusion(int d, int dv) {
  MatrixXd m = MatrixXd::Zero(d, dv);
  m.topLeftCorner(dv, dv).setIdentity();
  return m;
}

MatrixXd standard_j(int g) {
  MatrixXd j = MatrixXd::Zero(2 * g, 2 * g);
  j.topRightCorner(g, g).setIdentity();
  j.bottomLeftCorner(g, g) = -MatrixXd::Identity(g, g);
  return j;
}

MatrixXd perp_embedding(int d, int g2) {
  MatrixXd m = MatrixXd::Zero(d, g2);
  m.bottomRightCorner(g2, g2).setIdentity();
  return m;
}

double max_abs(const MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Hermitian positivity form 2 i S(w_a, conj(w_b)); S is bilinear, so this is
// w^T S conj(w) and not an adjoint product.
MatrixXcd positivity_gram(const MatrixXd& s, const MatrixXcd& w) {
  MatrixXcd h = 2.0 * kI * (w.transpose() * s.cast<cplx>() * w.conjugate());
  return 0.5 * (h + h.adjoint());
}

}  // namespace

OpenAbelianVariety::OpenAbelianVariety(Signature sig, int truncation, Ordering reference,
                                       MatrixXd iota, MatrixXd s, MatrixXcd w, MatrixXd lattice)
    : sig_(std::move(sig)),
      truncation_(truncation),
      reference_(std::move(reference)),
      chart_(std::make_shared<Chart>(sig_, truncation)),
      iota_(std::move(iota)),
      s_(std::move(s)),
      w_(std::move(w)),
      lattice_(std::move(lattice)) {
  const int d = static_cast<int>(s_.rows());
  if (s_.cols() != d) throw std::invalid_argument("form matrix not square");
  if (iota_.rows() != d || iota_.cols() != chart_->dim())
    throw std::invalid_argument("iota dimensions inconsistent");
  if ((d - chart_->dim()) % 2 != 0 || d < chart_->dim())
    throw std::invalid_argument("perp dimension not even");
  if (w_.rows() != d || 2 * w_.cols() != d)
    throw std::invalid_argument("W basis must have dim U / 2 columns");
  if (lattice_.rows() != d || lattice_.cols() != d - chart_->dim())
    throw std::invalid_argument("lattice must have 2 genus generators");
  if (!reference_.same_id_set(Ordering::ascending(sig_)))
    throw std::invalid_argument("reference ordering does not match signature");
}

OpenAbelianVariety OpenAbelianVariety::torus(cplx tau, int truncation) {
  MatrixXd s(2, 2);
  s << 0, 1, -1, 0;
  MatrixXcd w(2, 1);
  w << 1.0, tau;
  return OpenAbelianVariety(Signature{}, truncation, Ordering{}, MatrixXd(2, 0), s, w,
                            MatrixXd::Identity(2, 2));
}

bool OpenAbelianVariety::normal_form(double tol) const {
  const int d = dim();
  const int dv = dim_v();
  if (max_abs(iota_ - inclusion(d, dv)) > tol) return false;
  if (max_abs(lattice_ - perp_embedding(d, d - dv)) > tol) return false;
  return true;
}

ValidationReport validate(const OpenAbelianVariety& x, const ValidationOptions& opt) {
  ValidationReport r;
  const int d = x.dim();
  const int dv = x.dim_v();
  const int g = x.genus();
  const double scale =
      std::max({1.0, x.s().cwiseAbs().maxCoeff(), x.w().cwiseAbs().maxCoeff()});
  const double tol = opt.tol * scale;
  auto push = [&r](const std::string& name, double value, double t, bool pass) {
    r.checks.push_back({name, value, t, pass});
  };

  // embedding pulls the form back to the ordered block gram
  if (dv > 0) {
    const MatrixXd gram = x.chart().gram(x.reference());
    r.iota_pullback_residual =
        (x.iota().transpose() * x.s() * x.iota() - gram).cwiseAbs().maxCoeff();
  }
  push("iota_pullback", r.iota_pullback_residual, tol, r.iota_pullback_residual <= tol);

  // annihilator of iota(V) has dimension 2g and contains the lattice
  if (dv > 0) {
    Eigen::JacobiSVD<MatrixXd> svd(x.iota().transpose() * x.s());
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k)
      if (sv(k) > 1e-9 * sv(0)) ++rank;
    r.annihilator_dim = d - rank;
  } else {
    r.annihilator_dim = d;
  }
  push("annihilator_dim", r.annihilator_dim, 2 * g, r.annihilator_dim == 2 * g);

  double lattice_ann = 0.0;
  if (dv > 0 && g > 0)
    lattice_ann = (x.iota().transpose() * x.s() * x.lattice()).cwiseAbs().maxCoeff();
  push("lattice_in_annihilator", lattice_ann, tol, lattice_ann <= tol);

  // W isotropic
  r.isotropy_residual =
      (x.w().transpose() * x.s().cast<cplx>() * x.w()).cwiseAbs().maxCoeff();
  const double iso_tol = opt.isotropy_tol >= 0.0 ? opt.isotropy_tol : tol;
  push("isotropy", r.isotropy_residual, iso_tol, r.isotropy_residual <= iso_tol);

  // W + conj(W) spans U_C (columns normalized; the span is scale-free)
  MatrixXcd stacked(d, d);
  stacked.leftCols(d / 2) = x.w();
  stacked.rightCols(d / 2) = x.w().conjugate();
  for (int k = 0; k < d; ++k) {
    const double nrm = stacked.col(k).norm();
    if (nrm > 0.0) stacked.col(k) /= nrm;
  }
  Eigen::JacobiSVD<MatrixXcd> span_svd(stacked);
  const auto& ssv = span_svd.singularValues();
  r.span_sigma_min = ssv(ssv.size() - 1) / std::max(ssv(0), 1e-300);
  push("span", r.span_sigma_min, opt.span_floor, r.span_sigma_min > opt.span_floor);

  // positivity of 2i S(w, conj w)
  const MatrixXcd h = positivity_gram(x.s(), x.w());
  Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(h);
  r.positivity_min_eig = eig.eigenvalues().minCoeff();
  push("positivity", r.positivity_min_eig, 0.0, r.positivity_min_eig > 0.0);

  // integral structure hyperbolic over Z
  if (g > 0) {
    const MatrixXd gl = x.lattice().transpose() * x.s() * x.lattice();
    Eigen::MatrixXi gi(2 * g, 2 * g);
    double res = 0.0;
    for (int i = 0; i < 2 * g; ++i)
      for (int j = 0; j < 2 * g; ++j) {
        gi(i, j) = static_cast<int>(std::llround(gl(i, j)));
        res = std::max(res, std::abs(gl(i, j) - gi(i, j)));
      }
    r.lattice_integrality_residual = res;
    bool hyperbolic = false;
    if (res <= std::max(tol, 1e-6)) {
      try {
        auto nf = linalg::symplectic_normal_form(gi);
        r.lattice_divisors = nf.divisors;
        hyperbolic = nf.unimodular;
      } catch (const std::exception&) {
        hyperbolic = false;
      }
    }
    push("lattice_integrality", res, std::max(tol, 1e-6), res <= std::max(tol, 1e-6));
    push("lattice_hyperbolic", hyperbolic ? 1.0 : 0.0, 1.0, hyperbolic);
  }

  // winding balance of the boundary part of W (structural under the chart,
  // recomputed from the decoded block vectors)
  if (dv > 0) {
    const MatrixXd ann = linalg::nullspace(MatrixXd(x.iota().transpose() * x.s()), 1e-9);
    MatrixXcd frame(d, dv + ann.cols());
    frame << x.iota().cast<cplx>(), ann.cast<cplx>();
    const MatrixXcd coords = frame.fullPivLu().solve(x.w());
    double dres = 0.0;
    for (int c = 0; c < x.w().cols(); ++c) {
      const BlockVector bv = x.chart().decode(coords.col(c).head(dv));
      dres = std::max(dres, bv.max_degree_residual());
    }
    r.degree_residual = dres;
    push("degree_balance", dres, tol, dres <= tol);
  }

  r.pass = true;
  for (const CheckItem& c : r.checks) r.pass = r.pass && c.pass;
  return r;
}

OpenAbelianVariety reorder(const OpenAbelianVariety& x, const Ordering& order) {
  if (!order.same_id_set(Ordering::ascending(x.signature())))
    throw std::invalid_argument("ordering id set mismatch");
  const MatrixXd m = x.chart().transform_matrix(order, x.reference());
  return OpenAbelianVariety(x.signature(), x.truncation(), order, x.iota() * m, x.s(), x.w(),
                            x.lattice());
}

OpenAbelianVariety normalized(const OpenAbelianVariety& x) {
  if (x.normal_form()) return x;
  const int d = x.dim();
  const int dv = x.dim_v();
  const int g = x.genus();

  MatrixXd lat = x.lattice();
  if (g > 0) {
    const MatrixXd gl = lat.transpose() * x.s() * lat;
    Eigen::MatrixXi gi(2 * g, 2 * g);
    for (int i = 0; i < 2 * g; ++i)
      for (int j = 0; j < 2 * g; ++j) gi(i, j) = static_cast<int>(std::llround(gl(i, j)));
    const auto nf = linalg::symplectic_normal_form(gi);
    if (!nf.unimodular) throw std::runtime_error("lattice not hyperbolic over Z");
    lat = lat * nf.transform.cast<double>();
  }
  MatrixXd frame(d, d);
  frame.leftCols(dv) = x.iota();
  frame.rightCols(2 * g) = lat;

  const Eigen::FullPivLU<MatrixXd> lu(frame);
  if (!lu.isInvertible()) throw std::runtime_error("degenerate frame in normalization");

  const MatrixXd s_new_raw = frame.transpose() * x.s() * frame;
  MatrixXd s_new = MatrixXd::Zero(d, d);
  if (dv > 0) s_new.topLeftCorner(dv, dv) = x.chart().gram(x.reference());
  if (g > 0) s_new.bottomRightCorner(2 * g, 2 * g) = standard_j(g);
  const double snap = (s_new_raw - s_new).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, s_new.cwiseAbs().maxCoeff());
  if (snap > 1e-6 * scale) throw std::runtime_error("normalization residual too large");

  const MatrixXcd w_new = lu.solve(MatrixXd::Identity(d, d)).cast<cplx>() * x.w();
  return OpenAbelianVariety(x.signature(), x.truncation(), x.reference(), inclusion(d, dv),
                            s_new, w_new, perp_embedding(d, 2 * g));
}

OpenAbelianVariety relabel(const OpenAbelianVariety& x,
                           const std::map<BoundaryId, BoundaryId>& id_map) {
  // monotone maps only; the chart layout then carries over unchanged
  BoundaryId prev_src = 0, prev_dst = 0;
  bool first = true;
  std::vector<BoundaryId> sorted_src;
  for (BoundaryId id : x.signature().flat_ids()) sorted_src.push_back(id);
  std::sort(sorted_src.begin(), sorted_src.end());
  for (BoundaryId id : sorted_src) {
    auto it = id_map.find(id);
    if (it == id_map.end()) throw std::invalid_argument("relabel map misses an id");
    if (!first && (it->second <= prev_dst || id <= prev_src))
      throw std::invalid_argument("relabel map must be order-preserving");
    prev_src = id;
    prev_dst = it->second;
    first = false;
  }
  std::vector<ComponentSignature> comps;
  for (const ComponentSignature& c : x.signature().components()) {
    ComponentSignature nc;
    nc.component_id = c.component_id;
    for (const BoundaryMark& b : c.boundaries) nc.boundaries.push_back({id_map.at(b.id), b.outbound});
    comps.push_back(nc);
  }
  std::vector<BoundaryId> ref_ids;
  for (BoundaryId id : x.reference().ids()) ref_ids.push_back(id_map.at(id));
  return OpenAbelianVariety(Signature(comps), x.truncation(), Ordering(ref_ids), x.iota(),
                            x.s(), x.w(), x.lattice());
}

MatrixXd integer_constant_basis(const Chart& chart) {
  std::vector<int> cols;
  for (const ComponentSignature& comp : chart.signature().components()) {
    for (size_t k = 1; k < comp.boundaries.size(); ++k)
      cols.push_back(chart.constant_coord(comp.boundaries[k].id));
  }
  MatrixXd m = MatrixXd::Zero(chart.dim(), static_cast<int>(cols.size()));
  for (size_t k = 0; k < cols.size(); ++k) m(cols[k], static_cast<int>(k)) = 1.0;
  return m;
}

MatrixXd integer_degree_basis(const Chart& chart) {
  std::vector<int> cols;
  for (const ComponentSignature& comp : chart.signature().components()) {
    for (size_t k = 1; k < comp.boundaries.size(); ++k)
      cols.push_back(chart.degree_coord(comp.boundaries[k].id));
  }
  MatrixXd m = MatrixXd::Zero(chart.dim(), static_cast<int>(cols.size()));
  for (size_t k = 0; k < cols.size(); ++k) m(cols[k], static_cast<int>(k)) = 1.0;
  return m;
}

EquivalenceReport equivalent(const OpenAbelianVariety& x1, const OpenAbelianVariety& x2,
                             double tol) {
  EquivalenceReport r;
  if (!(x1.signature() == x2.signature())) {
    r.reason = "signatures differ";
    return r;
  }
  if (x1.truncation() != x2.truncation() || x1.dim() != x2.dim()) {
    r.reason = "truncation or dimension differs";
    return r;
  }
  const double s_res = (x1.s() - x2.s()).cwiseAbs().maxCoeff();
  if (s_res > 1e-7 * std::max(1.0, x1.s().cwiseAbs().maxCoeff())) {
    r.reason = "symplectic forms differ";
    return r;
  }
  r.w_distance = linalg::subspace_distance(x1.w(), x2.w());
  if (r.w_distance > 1e-6) {
    r.reason = "W subspaces differ";
    return r;
  }
  r.comparable = true;

  const Chart& chart = x1.chart();
  const int n_const = static_cast<int>(integer_constant_basis(chart).cols());
  MatrixXd cands(x1.dim(), x2.lattice().cols() + n_const);
  cands.leftCols(x2.lattice().cols()) = x2.lattice();
  cands.rightCols(n_const) = x2.iota() * integer_constant_basis(chart);

  bool ok = true;
  for (int k = 0; k < x1.lattice().cols(); ++k) {
    const bool m = linalg::integer_member(cands, x1.lattice().col(k), tol);
    r.checks.push_back({"lattice_generator_" + std::to_string(k), m ? 0.0 : 1.0, 0.5, m});
    ok = ok && m;
  }

  // compare embeddings at a common ordering
  const MatrixXd iota2_common =
      x2.iota() * chart.transform_matrix(x1.reference(), x2.reference());
  const MatrixXd diff = x1.iota() - iota2_common;
  const MatrixXd degs = integer_degree_basis(chart);
  for (int k = 0; k < degs.cols(); ++k) {
    const VectorXd v = diff * degs.col(k);
    const bool m = linalg::integer_member(cands, v, tol);
    r.checks.push_back({"degree_vector_" + std::to_string(k), m ? 0.0 : 1.0, 0.5, m});
    ok = ok && m;
  }
  r.equivalent = ok;
  return r;
}

MatrixXcd period_matrix(const OpenAbelianVariety& x) {
  const int g = x.genus();
  if (!x.closed()) throw std::invalid_argument("period matrix requires a closed variety");
  if (g == 0) return MatrixXcd(0, 0);
  const MatrixXd gl = x.lattice().transpose() * x.s() * x.lattice();
  Eigen::MatrixXi gi(2 * g, 2 * g);
  for (int i = 0; i < 2 * g; ++i)
    for (int j = 0; j < 2 * g; ++j) gi(i, j) = static_cast<int>(std::llround(gl(i, j)));
  if ((gl - gi.cast<double>()).cwiseAbs().maxCoeff() > 1e-6)
    throw std::invalid_argument("lattice gram not integral");
  const auto nf = linalg::symplectic_normal_form(gi);
  if (!nf.unimodular) throw std::invalid_argument("degenerate lattice");
  const MatrixXd basis = x.lattice() * nf.transform.cast<double>();
  return period_matrix(x, basis.leftCols(g), basis.rightCols(g));
}

MatrixXcd period_matrix(const OpenAbelianVariety& x, const MatrixXd& a_cycles,
                        const MatrixXd& b_cycles) {
  if (!x.closed()) throw std::invalid_argument("period matrix requires a closed variety");
  const int g = x.genus();
  if (a_cycles.cols() != g || b_cycles.cols() != g)
    throw std::invalid_argument("cycle basis has wrong size");
  // omega = W Lambda with S(omega_i, b_j) = delta_ij, tau_ij = S(a_i, omega_j)
  const MatrixXcd pair_wb = x.w().transpose() * x.s().cast<cplx>() * b_cycles.cast<cplx>();
  Eigen::FullPivLU<MatrixXcd> lu(pair_wb.transpose());
  if (!lu.isInvertible()) throw std::invalid_argument("degenerate lattice pairing");
  const MatrixXcd lambda = lu.solve(MatrixXcd::Identity(g, g)).transpose();
  return a_cycles.transpose().cast<cplx>() * x.s().cast<cplx>() * (x.w() * lambda);
}

bool sp_open_member(const BlockMatrix2x2& phi, const OpenAbelianVariety& x_in, double tol) {
  const OpenAbelianVariety x = normalized(x_in);
  const int dv = x.dim_v();
  const int g = x.genus();
  if (phi.vv.rows() != dv || phi.vv.cols() != dv || phi.v_perp.rows() != dv ||
      phi.v_perp.cols() != 2 * g || phi.perp_v.rows() != 2 * g || phi.perp_v.cols() != dv ||
      phi.perp_perp.rows() != 2 * g || phi.perp_perp.cols() != 2 * g)
    throw std::invalid_argument("block dimensions do not match the variety");

  const MatrixXd consts = integer_constant_basis(x.chart());
  const MatrixXd degs = integer_degree_basis(x.chart());

  if (g > 0) {
    // integral symplectic on the perp block
    Eigen::MatrixXi pp(2 * g, 2 * g);
    for (int i = 0; i < 2 * g; ++i)
      for (int j = 0; j < 2 * g; ++j) {
        pp(i, j) = static_cast<int>(std::llround(phi.perp_perp(i, j)));
        if (std::abs(phi.perp_perp(i, j) - pp(i, j)) > tol) return false;
      }
    const MatrixXd j = standard_j(g);
    if ((pp.cast<double>().transpose() * j * pp.cast<double>() - j).cwiseAbs().maxCoeff() >
        1e-9)
      return false;
    // lattice generators land in integral constants
    for (int k = 0; k < 2 * g; ++k) {
      if (!linalg::integer_member(consts, phi.v_perp.col(k), tol)) return false;
    }
  }
  for (int k = 0; k < degs.cols(); ++k) {
    const VectorXd img = phi.perp_v * degs.col(k);
    if (!linalg::integer_member(MatrixXd::Identity(2 * g, 2 * g), img, tol)) return false;
    const VectorXd fix = (phi.vv - MatrixXd::Identity(dv, dv)) * degs.col(k);
    if (!linalg::integer_member(consts, fix, tol)) return false;
  }
  return true;
}

SmoothnessReport smoothness_diagnostic(const OpenAbelianVariety& x_in, double rank_tol) {
  const OpenAbelianVariety x = normalized(x_in);
  SmoothnessReport rep;
  const int d = x.dim();
  const int dv = x.dim_v();
  const int dw = static_cast<int>(x.w().cols());

  const MatrixXcd h = positivity_gram(x.s(), x.w());
  Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(h);
  if (eig.eigenvalues().minCoeff() <= 0.0)
    throw std::runtime_error("positivity gram not definite");
  const MatrixXcd hinv_sqrt =
      eig.eigenvectors() *
      eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal().toDenseMatrix().cast<cplx>() *
      eig.eigenvectors().adjoint();
  const MatrixXcd w_on = x.w() * hinv_sqrt;

  if (dv > 0) {
    MatrixXcd reader = MatrixXcd::Zero(x.chart().vminus_reader().rows(), d);
    reader.leftCols(dv) = x.chart().vminus_reader();
    Eigen::JacobiSVD<MatrixXcd> svd(reader * w_on);
    for (int k = 0; k < svd.singularValues().size(); ++k)
      rep.singular_values.push_back(svd.singularValues()(k));
  }
  while (static_cast<int>(rep.singular_values.size()) < dw) rep.singular_values.push_back(0.0);
  std::sort(rep.singular_values.begin(), rep.singular_values.end(), std::greater<double>());
  rep.singular_values.resize(dw);

  // index of the plus projection: modes plus the winding directions
  const MatrixXd degs = integer_degree_basis(x.chart());
  const int plus_rows = static_cast<int>(x.chart().vplus_reader().rows() + degs.cols());
  MatrixXcd plus = MatrixXcd::Zero(plus_rows, d);
  if (dv > 0) {
    plus.topLeftCorner(x.chart().vplus_reader().rows(), dv) = x.chart().vplus_reader();
    plus.bottomLeftCorner(degs.cols(), dv) = degs.transpose().cast<cplx>();
  }
  const int r = linalg::rank(plus * x.w(), rank_tol);
  rep.fredholm_index = (dw - r) - (plus_rows - r);
  return rep;
}

}  // namespace openjac
