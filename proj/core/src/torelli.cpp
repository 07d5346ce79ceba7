#include "openjac/torelli.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "openjac/linalg.hpp"

namespace openjac {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;

namespace {

constexpr cplx kI(0.0, 1.0);
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double binom(int n, int k) {
  double b = 1.0;
  for (int j = 1; j <= k; ++j) b *= static_cast<double>(n - k + j) / j;
  return b;
}

bool concentric(const CircleDomain::Circle& c, cplx q) { return std::abs(c.center - q) == 0.0; }

// restriction of z^n to one circle
BranchedFunction restrict_power(const CircleDomain::Circle& c, int n, int N) {
  BranchedFunction f(0.0, N);
  for (int j = 0; j <= n && j <= N; ++j) {
    const cplx coeff = binom(n, j) * std::pow(c.center, n - j) * std::pow(c.radius, j);
    f.set_coeff(j * c.direction, f.coeff(j * c.direction) + coeff);
  }
  return f;
}

// restriction of (z - q)^{-n}
BranchedFunction restrict_pole(const CircleDomain::Circle& c, cplx q, int n, int N) {
  BranchedFunction f(0.0, N);
  if (concentric(c, q)) {
    f.set_coeff(-n * c.direction, std::pow(cplx(c.radius), -n));
    return f;
  }
  if (c.outer) {
    // (e^{i d t} - q)^{-n} = sum_j C(n+j-1, j) q^j e^{-i (n+j) d t}
    for (int j = 0; n + j <= N; ++j) {
      f.set_coeff(-(n + j) * c.direction, binom(n + j - 1, j) * std::pow(q, j));
    }
    return f;
  }
  const cplx d = c.center - q;
  const cplx u = c.radius / d;
  for (int j = 0; j <= N; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    f.set_coeff(j * c.direction, std::pow(d, -n) * sign * binom(n + j - 1, j) * std::pow(u, j));
  }
  return f;
}

// restriction of log(z - q) / (2 pi i); branch continuous on (0, 2 pi)
BranchedFunction restrict_log(const CircleDomain::Circle& c, cplx q, int N) {
  BranchedFunction f(0.0, N);
  const cplx scale = 1.0 / (kTwoPi * kI);
  if (concentric(c, q)) {
    f.set_degree(static_cast<double>(c.direction));
    f.set_coeff(0, std::log(cplx(c.radius)) * scale);
    return f;
  }
  if (c.outer) {
    // log(e^{i d t} - q) = i d t - sum_j (q^j / j) e^{-i j d t}
    f.set_degree(static_cast<double>(c.direction));
    for (int j = 1; j <= N; ++j) {
      f.set_coeff(-j * c.direction, -std::pow(q, j) / static_cast<double>(j) * scale);
    }
    return f;
  }
  const cplx d = c.center - q;
  const cplx u = c.radius / d;
  f.set_coeff(0, std::log(d) * scale);
  for (int j = 1; j <= N; ++j) {
    const double sign = (j % 2 == 0) ? -1.0 : 1.0;
    f.set_coeff(j * c.direction, sign * std::pow(u, j) / static_cast<double>(j) * scale);
  }
  return f;
}

BlockVector restrict_all(const CircleDomain& domain, int N,
                         const std::function<BranchedFunction(const CircleDomain::Circle&)>& r) {
  BlockVector v(domain.signature(), N);
  for (const auto& c : domain.circles()) v.at(c.id) = r(c);
  return v;
}

}  // namespace

std::vector<HolomorphicBasisElement> holomorphic_basis(const CircleDomain& domain,
                                                       int truncation) {
  const int N = truncation;
  if (N < 1) throw std::invalid_argument("truncation must be at least 1");
  std::vector<HolomorphicBasisElement> basis;
  for (int n = 1; n <= N; ++n) {
    HolomorphicBasisElement e;
    e.kind = HolomorphicBasisElement::Kind::power;
    e.order = n;
    e.restriction = restrict_all(domain, N, [&](const CircleDomain::Circle& c) {
      return restrict_power(c, n, N);
    });
    basis.push_back(std::move(e));
  }
  for (const auto& disk : domain.circles()) {
    if (disk.outer) continue;
    for (int n = 1; n <= N; ++n) {
      HolomorphicBasisElement e;
      e.kind = HolomorphicBasisElement::Kind::pole;
      e.disk_id = disk.id;
      e.order = n;
      e.restriction = restrict_all(domain, N, [&](const CircleDomain::Circle& c) {
        return restrict_pole(c, disk.center, n, N);
      });
      basis.push_back(std::move(e));
    }
  }
  for (const auto& disk : domain.circles()) {
    if (disk.outer) continue;
    HolomorphicBasisElement e;
    e.kind = HolomorphicBasisElement::Kind::log_branch;
    e.disk_id = disk.id;
    e.restriction = restrict_all(domain, N, [&](const CircleDomain::Circle& c) {
      return restrict_log(c, disk.center, N);
    });
    basis.push_back(std::move(e));
  }
  return basis;
}

TorelliResult torelli_with_report(const CircleDomain& domain, int truncation) {
  const Signature sig = domain.signature();
  const Chart chart(sig, truncation);
  const auto basis = holomorphic_basis(domain, truncation);
  if (static_cast<int>(basis.size()) * 2 != chart.dim())
    throw std::logic_error("holomorphic basis does not have half dimension");

  MatrixXcd w(chart.dim(), static_cast<int>(basis.size()));
  for (size_t k = 0; k < basis.size(); ++k) {
    w.col(static_cast<int>(k)) = chart.encode(basis[k].restriction);
    w.col(static_cast<int>(k)) /= w.col(static_cast<int>(k)).norm();
  }

  const Ordering ref = Ordering::ascending(sig);
  OpenAbelianVariety oav(sig, truncation, ref, MatrixXd::Identity(chart.dim(), chart.dim()),
                         chart.gram(ref), w, MatrixXd(chart.dim(), 0));

  TorelliResult res{std::move(oav), {}, domain.geometry_ratio(), 0.0};
  const MatrixXcd h =
      2.0 * kI * (w.transpose() * res.oav.s().cast<cplx>() * w.conjugate());
  const double c_scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double scale = std::max(1.0, res.oav.s().cwiseAbs().maxCoeff());
  res.isotropy_budget =
      std::max(1e-10 * scale, 10.0 * c_scale * std::pow(res.rho, truncation));

  ValidationOptions opt;
  opt.isotropy_tol = res.isotropy_budget;
  res.report = validate(res.oav, opt);
  if (!res.report.pass)
    throw std::runtime_error("construction failed validation: truncation too small for geometry");
  return res;
}

OpenAbelianVariety torelli(const CircleDomain& domain, int truncation) {
  return torelli_with_report(domain, truncation).oav;
}

HarmonicSplitResult harmonic_split(const CircleDomain& domain, const BlockVector& data,
                                   int truncation) {
  const Signature sig = domain.signature();
  if (!(data.signature() == sig) || data.truncation() != truncation)
    throw std::invalid_argument("data does not live on the domain boundary");
  if (data.max_degree_residual() > 1e-9 * std::max(1.0, data.scale()))
    throw std::invalid_argument("degree-sum-zero violated");

  const Chart chart(sig, truncation);
  const auto basis = holomorphic_basis(domain, truncation);
  const int half = static_cast<int>(basis.size());

  auto conj_block = [&](const BlockVector& v) {
    BlockVector c(sig, truncation);
    for (BoundaryId id : sig.flat_ids()) c.at(id) = v.at(id).conj();
    return c;
  };

  MatrixXcd a(chart.dim(), 2 * half);
  for (int k = 0; k < half; ++k) {
    a.col(k) = chart.encode(basis[k].restriction);
    a.col(half + k) = chart.encode(conj_block(basis[k].restriction));
  }
  const VectorXcd rhs = chart.encode(data);
  const VectorXcd coeffs = a.colPivHouseholderQr().solve(rhs);

  HarmonicSplitResult res;
  res.holomorphic_coeffs = coeffs.head(half);
  res.antiholomorphic_coeffs = coeffs.tail(half);
  res.residual = (a * coeffs - rhs).norm();

  BlockVector wp(sig, truncation), vp(sig, truncation);
  for (int k = 0; k < half; ++k) {
    wp = wp + basis[k].restriction * res.holomorphic_coeffs(k);
    vp = vp + conj_block(basis[k].restriction) * res.antiholomorphic_coeffs(k);
  }
  res.holomorphic_part = std::move(wp);
  res.antiholomorphic_part = std::move(vp);
  return res;
}

PerpLatticeDescription integral_perp_lattice(const CircleDomain& domain) {
  (void)domain;
  PerpLatticeDescription d;
  d.genus = 0;
  d.generators = MatrixXd(0, 0);
  return d;
}

}  // namespace openjac
