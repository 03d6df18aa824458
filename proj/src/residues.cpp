#include "spectral/residues.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "eigen_bridge.hpp"
#include "spectral/jets.hpp"
#include "spectral/parallel.hpp"

namespace spectral {

namespace {

bool lex_less(cplx a, cplx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

double cluster_scale(const std::vector<cplx>& values) {
  double m = 0.0;
  for (cplx v : values) m = std::max(m, std::abs(v));
  return std::max(1.0, m);
}

void check_separation(const PoleConfiguration& cfg) {
  std::vector<cplx> locs;
  locs.reserve(cfg.poles.size());
  for (const Pole& p : cfg.poles) locs.push_back(p.location);
  const double tol = kDefaultClusterTol * cluster_scale(locs);
  for (std::size_t i = 0; i < locs.size(); ++i) {
    for (std::size_t j = i + 1; j < locs.size(); ++j) {
      if (std::abs(locs[i] - locs[j]) <= tol) {
        raise(errc::poles_too_close,
              "pole locations within cluster tolerance; merge them first");
      }
    }
  }
}

void check_enclosure(const Eigen::MatrixXcd& h, const Contour& c) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(h, false);
  const double band = c.radius * 1e-6;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double dist = std::abs(solver.eigenvalues()(i) - c.center);
    if (dist > c.radius - band) {
      raise(errc::pole_on_contour,
            dist < c.radius + band
                ? "eigenvalue inside the contour exclusion band"
                : "eigenvalue not enclosed by the contour");
    }
  }
}

void check_contour(const Contour& c) {
  if (!is_finite(c.center) || !is_finite(c.radius) || c.radius <= 0.0) {
    raise(errc::validation_error, "contour needs a finite center and radius > 0");
  }
  if (c.nodes < 8) raise(errc::validation_error, "contour needs at least 8 nodes");
}

// e^{-i z_k t} (z_k I - h)^{-1} * (radius/M) e^{i theta_k} at node k.
Eigen::MatrixXcd resolvent_node(const Eigen::MatrixXcd& h, double t,
                                const Contour& c, std::size_t k) {
  const double theta = 2.0 * M_PI * static_cast<double>(k) /
                       static_cast<double>(c.nodes);
  const cplx rot = std::polar(1.0, theta);
  const cplx z = c.center + c.radius * rot;
  const auto n = h.rows();
  Eigen::MatrixXcd shifted = -h;
  shifted.diagonal().array() += z;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
  Eigen::MatrixXcd res = lu.solve(Eigen::MatrixXcd::Identity(n, n));
  if (!res.allFinite()) {
    raise(errc::singular_solve, "resolvent solve failed at a contour node");
  }
  const cplx weight =
      std::exp(cplx(0.0, -t) * z) * rot * (c.radius / static_cast<double>(c.nodes));
  return weight * res;
}

double bound_node(const Eigen::MatrixXcd& h0, const Eigen::MatrixXcd& v,
                  const Contour& c, std::size_t k) {
  const double theta = 2.0 * M_PI * static_cast<double>(k) /
                       static_cast<double>(c.nodes);
  const cplx z = c.center + c.radius * std::polar(1.0, theta);
  Eigen::MatrixXcd shifted = -h0;
  shifted.diagonal().array() += z;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
  Eigen::MatrixXcd vg = lu.solve(Eigen::MatrixXcd::Identity(h0.rows(), h0.rows()));
  if (!vg.allFinite()) {
    raise(errc::singular_solve, "resolvent solve failed at a contour node");
  }
  vg = v * vg;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(vg);
  return svd.singularValues()(0);
}

}  // namespace

PoleConfiguration cluster_poles(std::vector<cplx> values, double tol) {
  if (values.empty()) {
    raise(errc::validation_error, "pole configuration needs at least one value");
  }
  for (cplx v : values) {
    if (!is_finite(v)) raise(errc::non_finite, "non-finite pole location");
  }
  std::sort(values.begin(), values.end(), lex_less);
  const double threshold = tol * cluster_scale(values);

  PoleConfiguration cfg;
  std::size_t start = 0;
  while (start < values.size()) {
    std::size_t stop = start + 1;
    // Chain neighbours while consecutive gaps stay within the threshold.
    while (stop < values.size() &&
           std::abs(values[stop] - values[stop - 1]) <= threshold) {
      ++stop;
    }
    cplx mean = 0.0;
    for (std::size_t k = start; k < stop; ++k) mean += values[k];
    mean /= static_cast<double>(stop - start);
    cfg.poles.push_back({mean, static_cast<unsigned>(stop - start)});
    start = stop;
  }
  return cfg;
}

cplx residue_exp_kernel(const PoleConfiguration& cfg, std::size_t j, double t) {
  if (j >= cfg.poles.size()) {
    raise(errc::index_out_of_range, "pole index out of range");
  }
  if (!is_finite(t)) raise(errc::non_finite, "non-finite time");
  check_separation(cfg);

  const Pole& pj = cfg.poles[j];
  const std::size_t order = pj.multiplicity - 1;
  TaylorJet jet = TaylorJet::exp_linear(cplx(0.0, -t) * pj.location,
                                        cplx(0.0, -t), order);
  for (std::size_t k = 0; k < cfg.poles.size(); ++k) {
    if (k == j) continue;
    jet *= TaylorJet::inverse_power(pj.location - cfg.poles[k].location,
                                    cfg.poles[k].multiplicity, order);
  }
  return jet.coeff(order);
}

cplx residue_sum(const PoleConfiguration& cfg, double t) {
  cplx sum = 0.0;
  for (std::size_t j = 0; j < cfg.poles.size(); ++j) {
    sum += residue_exp_kernel(cfg, j, t);
  }
  return sum;
}

Contour auto_contour(const std::vector<cplx>& eigenvalues, std::size_t nodes) {
  if (eigenvalues.empty()) {
    raise(errc::validation_error, "auto_contour needs at least one eigenvalue");
  }
  cplx center = 0.0;
  for (cplx v : eigenvalues) center += v;
  center /= static_cast<double>(eigenvalues.size());
  double maxdist = 0.0;
  for (cplx v : eigenvalues) maxdist = std::max(maxdist, std::abs(v - center));
  return Contour{center, 1.5 * maxdist + 0.5, nodes};
}

SquareMatrix contour_resolvent(const SquareMatrix& h, double t,
                               const Contour& c) {
  check_contour(c);
  if (!h.finite()) raise(errc::non_finite, "non-finite matrix");
  if (!is_finite(t)) raise(errc::non_finite, "non-finite time");
  const Eigen::MatrixXcd he = to_eigen(h);
  check_enclosure(he, c);

  auto nodes = par::indexed_map<Eigen::MatrixXcd>(
      c.nodes, [&](std::size_t k) { return resolvent_node(he, t, c, k); });
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(he.rows(), he.cols());
  for (const auto& term : nodes) acc += term;
  return from_eigen(acc);
}

double series_convergence_bound(const SquareMatrix& h0, const SquareMatrix& v,
                                const Contour& c) {
  check_contour(c);
  if (!h0.finite() || !v.finite()) raise(errc::non_finite, "non-finite matrix");
  if (h0.dim() != v.dim()) raise(errc::validation_error, "dimension mismatch");
  const Eigen::MatrixXcd h0e = to_eigen(h0);
  const Eigen::MatrixXcd ve = to_eigen(v);
  check_enclosure(h0e, c);

  auto values = par::indexed_map<double>(
      c.nodes, [&](std::size_t k) { return bound_node(h0e, ve, c, k); });
  double best = 0.0;
  for (double x : values) best = std::max(best, x);
  return best;
}

namespace reference {

SquareMatrix contour_resolvent(const SquareMatrix& h, double t,
                               const Contour& c) {
  check_contour(c);
  if (!h.finite()) raise(errc::non_finite, "non-finite matrix");
  const Eigen::MatrixXcd he = to_eigen(h);
  check_enclosure(he, c);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(he.rows(), he.cols());
  for (std::size_t k = 0; k < c.nodes; ++k) {
    acc += resolvent_node(he, t, c, k);
  }
  return from_eigen(acc);
}

double series_convergence_bound(const SquareMatrix& h0, const SquareMatrix& v,
                                const Contour& c) {
  check_contour(c);
  const Eigen::MatrixXcd h0e = to_eigen(h0);
  const Eigen::MatrixXcd ve = to_eigen(v);
  check_enclosure(h0e, c);
  double best = 0.0;
  for (std::size_t k = 0; k < c.nodes; ++k) {
    best = std::max(best, bound_node(h0e, ve, c, k));
  }
  return best;
}

}  // namespace reference

}  // namespace spectral
