#include "openjac/gluing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

#include "openjac/linalg.hpp"

namespace openjac {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace {

MatrixXd standard_j(int g) {
  MatrixXd j = MatrixXd::Zero(2 * g, 2 * g);
  j.topRightCorner(g, g).setIdentity();
  j.bottomLeftCorner(g, g) = -MatrixXd::Identity(g, g);
  return j;
}

MatrixXd inclusion(int d, int dv) {
  MatrixXd m = MatrixXd::Zero(d, dv);
  m.topLeftCorner(dv, dv).setIdentity();
  return m;
}

MatrixXd perp_embedding(int d, int g2) {
  MatrixXd m = MatrixXd::Zero(d, g2);
  m.bottomRightCorner(g2, g2).setIdentity();
  return m;
}

struct PairPlan {
  std::vector<GluePair> pairs;
  std::vector<bool> cycle;            // pair closes a cycle among components
  std::vector<size_t> comp_in;        // old component indices per pair
  std::vector<size_t> comp_out;
  std::vector<size_t> group_of_comp;  // merged-group representative per old component
};

// union-find over old components; pairs processed in list order so the
// tree/cycle split is deterministic
PairPlan plan_pairs(const Signature& sig, const std::vector<GluePair>& pairs) {
  PairPlan plan;
  plan.pairs = pairs;
  std::set<BoundaryId> seen;
  for (const GluePair& p : pairs) {
    if (!sig.has_id(p.inbound) || !sig.has_id(p.outbound))
      throw std::invalid_argument("glue pair names an unknown boundary id");
    if (sig.epsilon(p.inbound) != -1)
      throw std::invalid_argument("boundary " + std::to_string(p.inbound) + " is not inbound");
    if (sig.epsilon(p.outbound) != 1)
      throw std::invalid_argument("boundary " + std::to_string(p.outbound) + " is not outbound");
    if (!seen.insert(p.inbound).second || !seen.insert(p.outbound).second)
      throw std::invalid_argument("glue pairs overlap");
  }
  const size_t nc = sig.component_count();
  std::vector<size_t> parent(nc);
  for (size_t c = 0; c < nc; ++c) parent[c] = c;
  std::function<size_t(size_t)> find = [&](size_t c) {
    while (parent[c] != c) c = parent[c] = parent[parent[c]];
    return c;
  };
  for (const GluePair& p : pairs) {
    const size_t ci = sig.component_index_of(p.inbound);
    const size_t co = sig.component_index_of(p.outbound);
    plan.comp_in.push_back(ci);
    plan.comp_out.push_back(co);
    const size_t ri = find(ci), ro = find(co);
    if (ri == ro) {
      plan.cycle.push_back(true);
    } else {
      plan.cycle.push_back(false);
      parent[std::max(ri, ro)] = std::min(ri, ro);
    }
  }
  plan.group_of_comp.resize(nc);
  for (size_t c = 0; c < nc; ++c) plan.group_of_comp[c] = find(c);
  return plan;
}

// Degrees of the winding lifts on the glued slots: tree pairs carry the flow
// balancing the per-component demands, cycle pairs carry the forced values.
// Integral demands give integral flows.
std::vector<double> solve_flows(const PairPlan& plan, const std::vector<double>& demand,
                                const std::vector<double>& forced_cycle_flow) {
  const size_t np = plan.pairs.size();
  const size_t nc = plan.group_of_comp.size();
  std::vector<double> flow(np, 0.0);
  std::vector<double> residual = demand;
  // cycle flows are fixed; they contribute -flow at the inbound component and
  // +flow at the outbound one
  for (size_t p = 0; p < np; ++p) {
    if (!plan.cycle[p]) continue;
    flow[p] = forced_cycle_flow[p];
    residual[plan.comp_in[p]] -= flow[p];
    residual[plan.comp_out[p]] += flow[p];
  }
  // peel tree leaves
  std::vector<int> degree(nc, 0);
  std::vector<bool> done_pair(np, false), done_comp(nc, false);
  for (size_t p = 0; p < np; ++p) {
    if (plan.cycle[p]) continue;
    ++degree[plan.comp_in[p]];
    ++degree[plan.comp_out[p]];
  }
  bool progress = true;
  while (progress) {
    progress = false;
    for (size_t c = 0; c < nc; ++c) {
      if (done_comp[c] || degree[c] != 1) continue;
      for (size_t p = 0; p < np; ++p) {
        if (plan.cycle[p] || done_pair[p]) continue;
        if (plan.comp_in[p] != c && plan.comp_out[p] != c) continue;
        // component balance: residual + eps_in * flow = 0 at the inbound side
        const bool at_in = plan.comp_in[p] == c;
        flow[p] = at_in ? residual[c] : -residual[c];
        residual[plan.comp_in[p]] -= flow[p];
        residual[plan.comp_out[p]] += flow[p];
        done_pair[p] = true;
        done_comp[c] = true;
        --degree[plan.comp_in[p]];
        --degree[plan.comp_out[p]];
        progress = true;
        break;
      }
    }
  }
  return flow;
}

Signature glued_signature(const Signature& sig, const PairPlan& plan,
                          const std::set<BoundaryId>& glued_ids) {
  std::map<size_t, ComponentSignature> groups;
  for (size_t c = 0; c < sig.component_count(); ++c) {
    const size_t rep = plan.group_of_comp[c];
    auto& dst = groups[rep];
    dst.component_id = static_cast<int>(rep);
    for (const BoundaryMark& b : sig.components()[c].boundaries) {
      if (glued_ids.count(b.id)) continue;
      dst.boundaries.push_back(b);
    }
  }
  std::vector<ComponentSignature> comps;
  for (auto& [rep, comp] : groups) {
    if (comp.boundaries.empty()) continue;  // fully closed group drops out
    comps.push_back(std::move(comp));
  }
  return Signature(comps);
}

}  // namespace

OpenAbelianVariety disjoint_union(const OpenAbelianVariety& x1_in,
                                  const OpenAbelianVariety& x2_in) {
  const OpenAbelianVariety x1 = normalized(x1_in);
  const OpenAbelianVariety x2 = normalized(x2_in);
  if (x1.truncation() != x2.truncation())
    throw std::invalid_argument("union requires equal truncation");
  for (BoundaryId id : x1.signature().flat_ids()) {
    if (x2.signature().has_id(id))
      throw std::invalid_argument("boundary id collision in union: " + std::to_string(id) +
                                  " (relabel one side first)");
  }
  std::vector<ComponentSignature> comps = x1.signature().components();
  for (const ComponentSignature& c : x2.signature().components()) comps.push_back(c);
  const Signature sig(comps);
  const Chart chart(sig, x1.truncation());

  const int dv1 = x1.dim_v(), dv2 = x2.dim_v();
  const int g1 = x1.genus(), g2 = x2.genus();
  const int d = dv1 + dv2 + 2 * (g1 + g2);
  const int dv = chart.dim();
  if (dv != dv1 + dv2) throw std::logic_error("union chart dimension mismatch");

  // chart embeddings via decode/encode round trips (plain index maps; the
  // component layouts interleave by least boundary id)
  auto embed_chart = [&](const Chart& src, int offset_cols) {
    MatrixXd e = MatrixXd::Zero(dv, src.dim());
    for (int k = 0; k < src.dim(); ++k) {
      VectorXcd unit = VectorXcd::Zero(src.dim());
      unit(k) = 1.0;
      const BlockVector x = src.decode(unit);
      BlockVector big(sig, x1.truncation());
      for (BoundaryId id : src.signature().flat_ids()) big.at(id) = x.at(id);
      e.col(k) = chart.encode_real(big);
    }
    (void)offset_cols;
    return e;
  };
  const MatrixXd e1 = embed_chart(x1.chart(), 0);
  const MatrixXd e2 = embed_chart(x2.chart(), dv1);

  // U embeddings: chart part via e_i, perp part into [a1 a2 | b1 b2]
  MatrixXd u1 = MatrixXd::Zero(d, x1.dim());
  MatrixXd u2 = MatrixXd::Zero(d, x2.dim());
  u1.topLeftCorner(dv, dv1) = e1;
  u2.topLeftCorner(dv, dv2) = e2;
  for (int k = 0; k < g1; ++k) {
    u1(dv + k, dv1 + k) = 1.0;                        // a-block of x1
    u1(dv + g1 + g2 + k, dv1 + g1 + k) = 1.0;         // b-block of x1
  }
  for (int k = 0; k < g2; ++k) {
    u2(dv + g1 + k, dv2 + k) = 1.0;                   // a-block of x2
    u2(dv + g1 + g2 + g1 + k, dv2 + g2 + k) = 1.0;    // b-block of x2
  }

  MatrixXcd w(d, x1.w().cols() + x2.w().cols());
  w.leftCols(x1.w().cols()) = u1.cast<cplx>() * x1.w();
  w.rightCols(x2.w().cols()) = u2.cast<cplx>() * x2.w();

  const Ordering ref = Ordering::ascending(sig);
  MatrixXd s = MatrixXd::Zero(d, d);
  s.topLeftCorner(dv, dv) = chart.gram(ref);
  s.bottomRightCorner(2 * (g1 + g2), 2 * (g1 + g2)) = standard_j(g1 + g2);

  return OpenAbelianVariety(sig, x1.truncation(), ref, inclusion(d, dv), s, w,
                            perp_embedding(d, 2 * (g1 + g2)));
}

OpenAbelianVariety glue_many(const OpenAbelianVariety& x_in, const std::vector<GluePair>& pairs,
                             const GlueOptions& opt, GlueDiagnostics* diag) {
  if (pairs.empty()) {
    if (diag) diag->report = validate(x_in);
    return x_in;
  }
  const OpenAbelianVariety x = normalized(x_in);
  const Signature& sig = x.signature();
  const Chart& chart = x.chart();
  const int N = x.truncation();
  const int d = x.dim();
  const int dv = x.dim_v();
  const int g = x.genus();

  const PairPlan plan = plan_pairs(sig, pairs);
  std::set<BoundaryId> glued_ids;
  for (const GluePair& p : pairs) {
    glued_ids.insert(p.inbound);
    glued_ids.insert(p.outbound);
  }

  // glue ordering: each outbound follows its inbound immediately
  std::vector<BoundaryId> order_ids = Ordering::ascending(sig).ids();
  for (const GluePair& p : pairs) {
    order_ids.erase(std::find(order_ids.begin(), order_ids.end(), p.outbound));
    auto at = std::find(order_ids.begin(), order_ids.end(), p.inbound);
    order_ids.insert(at + 1, p.outbound);
  }
  const Ordering glue_order(order_ids);
  MatrixXd iota_g = MatrixXd::Zero(d, dv);
  iota_g.topRows(dv) = chart.transform_matrix(glue_order, x.reference());

  // matching constraints: winding degree and oscillating modes agree across
  // each pair (constants stay free)
  const int rows_per_pair = 2 * N + 1;
  MatrixXd c = MatrixXd::Zero(rows_per_pair * static_cast<int>(pairs.size()), d);
  int row = 0;
  for (const GluePair& p : pairs) {
    c.row(row++).head(dv) = chart.degree_reader(p.inbound) - chart.degree_reader(p.outbound);
    for (int n = 1; n <= N; ++n) {
      c(row, chart.mode_coord_x(p.inbound, n)) = 1.0;
      c(row, chart.mode_coord_x(p.outbound, n)) = -1.0;
      ++row;
      c(row, chart.mode_coord_y(p.inbound, n)) = 1.0;
      c(row, chart.mode_coord_y(p.outbound, n)) = -1.0;
      ++row;
    }
  }

  const MatrixXd k_basis = linalg::nullspace(c, 1e-12);
  const MatrixXd s_k = k_basis.transpose() * x.s() * k_basis;
  const MatrixXd rad_in_k = linalg::nullspace(s_k, 1e-8);
  const MatrixXd radical = linalg::orthonormalize(MatrixXd(k_basis * rad_in_k));

  // the radical must be the degree-zero diagonal on the glued pairs
  std::vector<VectorXd> diag_cols;
  for (const GluePair& p : pairs) {
    for (int n = 1; n <= N; ++n) {
      for (int part = 0; part < 2; ++part) {
        VectorXd e = VectorXd::Zero(dv);
        const int ci = part == 0 ? chart.mode_coord_x(p.inbound, n) : chart.mode_coord_y(p.inbound, n);
        const int cj = part == 0 ? chart.mode_coord_x(p.outbound, n) : chart.mode_coord_y(p.outbound, n);
        e(ci) = 1.0;
        e(cj) = 1.0;
        diag_cols.push_back(iota_g * e);
      }
    }
    BlockVector const_diag(sig, N);
    const_diag.at(p.inbound) = BranchedFunction::constant(1.0, N);
    const_diag.at(p.outbound) = BranchedFunction::constant(1.0, N);
    const VectorXd v = iota_g * chart.encode_real(const_diag);
    if (v.lpNorm<Eigen::Infinity>() > 1e-14) diag_cols.push_back(v);
  }
  MatrixXd diag0(d, static_cast<int>(diag_cols.size()));
  for (size_t k = 0; k < diag_cols.size(); ++k) diag0.col(static_cast<int>(k)) = diag_cols[k];
  diag0 = linalg::orthonormalize(diag0);

  const double rad_dist = linalg::subspace_distance(radical, diag0);
  if (diag) diag->radical_distance = rad_dist;
  if (rad_dist > opt.radical_tol)
    throw std::runtime_error(
        "radical of the glued form is not the degree-zero diagonal (truncation breakdown), "
        "distance " +
        std::to_string(rad_dist));

  const MatrixXd t_basis = linalg::complement_within(k_basis, radical);
  const int d_new = static_cast<int>(t_basis.cols());
  const MatrixXd s_t = t_basis.transpose() * x.s() * t_basis;

  // glued W: matching kernel inside W, pushed to the quotient
  MatrixXcd w_scaled = x.w();
  for (int k = 0; k < w_scaled.cols(); ++k) w_scaled.col(k) /= w_scaled.col(k).norm();
  const MatrixXcd cw = c.cast<cplx>() * w_scaled;
  const MatrixXcd kernel = linalg::nullspace(cw, opt.kernel_rel_tol);
  const MatrixXcd w_t = t_basis.transpose().cast<cplx>() * (w_scaled * kernel);
  if (2 * static_cast<int>(kernel.cols()) != d_new)
    throw std::runtime_error("glued W kernel has wrong dimension (truncation breakdown)");

  // new roster, genus, chart
  const Signature sig_new = glued_signature(sig, plan, glued_ids);
  int cycles = 0;
  for (bool cyc : plan.cycle) cycles += cyc ? 1 : 0;
  if (diag) {
    diag->cycle_pairs = cycles;
    diag->tree_pairs = static_cast<int>(pairs.size()) - cycles;
  }
  const int g_new = g + cycles;
  const Chart chart_new(sig_new, N);
  const int dv_new = chart_new.dim();
  if (d_new != dv_new + 2 * g_new)
    throw std::runtime_error("glued dimension bookkeeping failed");

  // embedding of the glued chart: lift each basis vector across the seams
  // with the winding flows, read off the class in the quotient
  auto lift_to_old = [&](const BlockVector& y_new) {
    BlockVector y(sig, N);
    for (BoundaryId id : sig_new.flat_ids()) y.at(id) = y_new.at(id);
    std::vector<double> demand(sig.component_count(), 0.0);
    for (size_t comp = 0; comp < sig.component_count(); ++comp) {
      for (const BoundaryMark& b : sig.components()[comp].boundaries) {
        if (glued_ids.count(b.id)) continue;
        const cplx dg = y_new.at(b.id).degree();
        demand[comp] += (b.outbound ? 1.0 : -1.0) * dg.real();
      }
    }
    const std::vector<double> flow =
        solve_flows(plan, demand, std::vector<double>(pairs.size(), 0.0));
    for (size_t p = 0; p < pairs.size(); ++p) {
      y.at(pairs[p].inbound) = BranchedFunction::winding(flow[p], N);
      y.at(pairs[p].outbound) = BranchedFunction::winding(flow[p], N);
    }
    return y;
  };

  const Ordering order_delta = [&] {
    std::vector<BoundaryId> ids;
    for (BoundaryId id : glue_order.ids())
      if (!glued_ids.count(id)) ids.push_back(id);
    return Ordering(ids);
  }();

  MatrixXd iota_delta_glue(d_new, dv_new);
  for (int k = 0; k < dv_new; ++k) {
    VectorXcd unit = VectorXcd::Zero(dv_new);
    unit(k) = 1.0;
    const BlockVector lifted = lift_to_old(chart_new.decode(unit));
    iota_delta_glue.col(k) = t_basis.transpose() * (iota_g * chart.encode_real(lifted));
  }
  const Ordering ref_new = Ordering::ascending(sig_new);
  const MatrixXd iota_delta =
      iota_delta_glue * chart_new.transform_matrix(ref_new, order_delta);

  // integral structure: survivors plus one hyperbolic pair per cycle pair
  MatrixXd gens(d_new, 2 * g_new);
  int gcol = 0;
  for (int k = 0; k < 2 * g; ++k) {
    gens.col(gcol++) = t_basis.transpose() * x.lattice().col(k);
  }
  for (size_t p = 0; p < pairs.size(); ++p) {
    if (!plan.cycle[p]) continue;
    std::vector<double> forced(pairs.size(), 0.0);
    forced[p] = 1.0;
    const std::vector<double> flow =
        solve_flows(plan, std::vector<double>(sig.component_count(), 0.0), forced);
    BlockVector deg_gen(sig, N);
    for (size_t q = 0; q < pairs.size(); ++q) {
      deg_gen.at(pairs[q].inbound) = BranchedFunction::winding(flow[q], N);
      deg_gen.at(pairs[q].outbound) = BranchedFunction::winding(flow[q], N);
    }
    gens.col(gcol++) = t_basis.transpose() * (iota_g * chart.encode_real(deg_gen));

    BlockVector const_gen(sig, N);
    const_gen.at(pairs[p].inbound) = BranchedFunction::constant(1.0, N);
    gens.col(gcol++) = t_basis.transpose() * (iota_g * chart.encode_real(const_gen));
  }

  // order the generators to the [a | b] layout via the integer normal form
  const double s_scale = std::max(1.0, s_t.cwiseAbs().maxCoeff());
  if (g_new > 0) {
    const MatrixXd gq = gens.transpose() * s_t * gens;
    Eigen::MatrixXi gi(2 * g_new, 2 * g_new);
    for (int i = 0; i < 2 * g_new; ++i)
      for (int j = 0; j < 2 * g_new; ++j) {
        gi(i, j) = static_cast<int>(std::llround(gq(i, j)));
        if (std::abs(gq(i, j) - gi(i, j)) > opt.snap_tol)
          throw std::runtime_error("glued lattice gram not integral");
      }
    const auto nf = linalg::symplectic_normal_form(gi);
    if (!nf.unimodular) throw std::runtime_error("glued lattice not hyperbolic over Z");
    gens = gens * nf.transform.cast<double>();
  }

  // assemble the normal form
  MatrixXd frame(d_new, d_new);
  frame.leftCols(dv_new) = iota_delta;
  frame.rightCols(2 * g_new) = gens;
  MatrixXd s_new = MatrixXd::Zero(d_new, d_new);
  if (dv_new > 0) s_new.topLeftCorner(dv_new, dv_new) = chart_new.gram(ref_new);
  if (g_new > 0) s_new.bottomRightCorner(2 * g_new, 2 * g_new) = standard_j(g_new);
  const double snap = (frame.transpose() * s_t * frame - s_new).cwiseAbs().maxCoeff();
  if (snap > opt.snap_tol * s_scale)
    throw std::runtime_error("glued form does not match the block normal form, residual " +
                             std::to_string(snap));

  const Eigen::FullPivLU<MatrixXd> lu(frame);
  if (!lu.isInvertible()) throw std::runtime_error("glued frame degenerate");
  const MatrixXcd w_new = lu.solve(MatrixXd::Identity(d_new, d_new)).cast<cplx>() * w_t;

  OpenAbelianVariety out(sig_new, N, ref_new, inclusion(d_new, dv_new), s_new, w_new,
                         perp_embedding(d_new, 2 * g_new));
  if (opt.validate_output || diag) {
    const ValidationReport rep = validate(out);
    if (diag) diag->report = rep;
    if (opt.validate_output && !rep.pass)
      throw std::runtime_error("glued variety failed validation");
  }
  return out;
}

OpenAbelianVariety glue_many(const OpenAbelianVariety& x, const std::vector<GluePair>& pairs,
                             const GlueOptions& opt) {
  return glue_many(x, pairs, opt, nullptr);
}

OpenAbelianVariety glue_pair(const OpenAbelianVariety& x, const GluePair& pair,
                             const GlueOptions& opt) {
  return glue_many(x, std::vector<GluePair>{pair}, opt);
}

int relative_dimension(const Chart& chart, const MatrixXcd& q_basis, double rank_tol) {
  const MatrixXcd plus_modes = chart.vplus_reader();
  const MatrixXd degs = integer_degree_basis(chart);
  MatrixXcd rows(plus_modes.rows() + degs.cols(), chart.dim());
  rows.topRows(plus_modes.rows()) = plus_modes;
  rows.bottomRows(degs.cols()) = degs.transpose().cast<cplx>();
  const int r = linalg::rank(rows * q_basis, rank_tol);
  const int dim_q = static_cast<int>(q_basis.cols());
  return (dim_q - r) - (static_cast<int>(rows.rows()) - r);
}

int relative_dimension_minus(const Chart& chart, const MatrixXcd& q_basis, double rank_tol) {
  const MatrixXcd minus_modes = chart.vminus_reader();
  const MatrixXd consts = integer_constant_basis(chart);
  MatrixXcd rows(minus_modes.rows() + consts.cols(), chart.dim());
  rows.topRows(minus_modes.rows()) = minus_modes;
  rows.bottomRows(consts.cols()) = consts.transpose().cast<cplx>();
  const int r = linalg::rank(rows * q_basis, rank_tol);
  const int dim_q = static_cast<int>(q_basis.cols());
  return (dim_q - r) - (static_cast<int>(rows.rows()) - r);
}

RelDimReport check_dimension_identity(const OpenAbelianVariety& x_in, double rank_tol) {
  const OpenAbelianVariety x = normalized(x_in);
  const int dv = x.dim_v();
  const int dw = static_cast<int>(x.w().cols());
  RelDimReport rep;
  rep.two_genus = 2 * x.genus();

  const MatrixXcd w_top = x.w().topRows(dv);
  const MatrixXcd wbar_top = w_top.conjugate();
  const int rank_w = dv > 0 ? linalg::rank(w_top, rank_tol) : 0;
  const int rank_wbar = dv > 0 ? linalg::rank(wbar_top, rank_tol) : 0;
  rep.ker_p_w = dw - rank_w;
  rep.ker_p_wbar = dw - rank_wbar;

  if (dv > 0) {
    const MatrixXcd w0 = linalg::orthonormalize(w_top, 1e-9);
    const MatrixXcd wbar0 = linalg::orthonormalize(wbar_top, 1e-9);
    rep.reldim_w0 = relative_dimension(x.chart(), w0, rank_tol);
    rep.reldim_wbar0 = relative_dimension_minus(x.chart(), wbar0, rank_tol);
  }
  rep.sum = rep.ker_p_w + rep.reldim_w0 + rep.ker_p_wbar + rep.reldim_wbar0;
  rep.verdict = rep.sum == rep.two_genus;
  return rep;
}

}  // namespace openjac
