#include "spectral/eig.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "eigen_bridge.hpp"

namespace spectral {

SquareMatrix BiorthogonalSystem::projector_sum() const {
  SquareMatrix acc(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    acc += (cplx(1.0) / overlaps[i]) * outer(right_vectors[i], left_vectors[i]);
  }
  return acc;
}

SquareMatrix BiorthogonalSystem::reconstruct() const {
  SquareMatrix acc(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    acc += (eigenvalues[i] / overlaps[i]) *
           outer(right_vectors[i], left_vectors[i]);
  }
  return acc;
}

std::array<SquareMatrix, 4> KaonBasis::unity_forms() const {
  const double w = std::sqrt(1.0 - std::norm(chi));
  std::array<SquareMatrix, 4> forms = {
      outer(ks, ks) + outer(kl_prime, kl_prime),
      outer(kl, kl) + outer(ks_prime, ks_prime),
      (1.0 / w) * (outer(ks, ks_prime) + outer(kl, kl_prime)),
      (1.0 / w) * (outer(ks_prime, ks) + outer(kl_prime, kl)),
  };
  return forms;
}

namespace {

// Rotate a unit vector so its largest-magnitude component is real positive.
void fix_phase(Eigen::VectorXcd& v) {
  Eigen::Index best = 0;
  double best_mag = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > best_mag) {
      best_mag = mag;
      best = i;
    }
  }
  if (best_mag == 0.0) return;
  v *= std::conj(v(best)) / best_mag;
}

}  // namespace

BiorthogonalSystem eig_biorthogonal(const SquareMatrix& a, double tol_cluster) {
  if (!a.finite()) raise(errc::non_finite, "eigendecomposition of non-finite matrix");
  if (tol_cluster < 0.0) raise(errc::validation_error, "tol_cluster must be >= 0");
  const std::size_t n = a.dim();

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(to_eigen(a), true);
  if (solver.info() != Eigen::Success) {
    raise(errc::defective, "eigensolver failed to converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto& vals = solver.eigenvalues();
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const cplx a_ = vals(static_cast<Eigen::Index>(i));
    const cplx b_ = vals(static_cast<Eigen::Index>(j));
    if (a_.real() != b_.real()) return a_.real() < b_.real();
    return a_.imag() < b_.imag();
  });

  Eigen::MatrixXcd right(n, n);
  BiorthogonalSystem sys;
  sys.cluster_tol = tol_cluster;
  sys.eigenvalues.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Eigen::VectorXcd col =
        solver.eigenvectors().col(static_cast<Eigen::Index>(order[k]));
    col.normalize();
    fix_phase(col);
    right.col(static_cast<Eigen::Index>(k)) = col;
    sys.eigenvalues.push_back(vals(static_cast<Eigen::Index>(order[k])));
  }

  Eigen::FullPivLU<Eigen::MatrixXcd> lu(right);
  if (!lu.isInvertible()) {
    raise(errc::defective, "eigenvector matrix is singular (not diagonalizable)");
  }
  Eigen::MatrixXcd left = lu.inverse();
  // One Newton step tightens left*right toward the identity.
  left = left + (Eigen::MatrixXcd::Identity(n, n) - left * right) * left;

  sys.right_vectors.resize(n);
  sys.left_vectors.resize(n);
  sys.overlaps.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec phi(n), psi(n);
    for (std::size_t r = 0; r < n; ++r) {
      phi[r] = right(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i));
      // Row i of the inverse is the covector; store its ket (conjugate).
      psi[r] = std::conj(left(static_cast<Eigen::Index>(i),
                              static_cast<Eigen::Index>(r)));
    }
    const double psi_norm = norm(psi);
    for (cplx& x : psi) x /= psi_norm;
    sys.right_vectors[i] = std::move(phi);
    sys.left_vectors[i] = std::move(psi);
    sys.overlaps[i] = inner(sys.left_vectors[i], sys.right_vectors[i]);
    if (std::abs(sys.overlaps[i]) < kDefectiveOverlapTol) {
      raise(errc::defective, "vanishing left-right overlap (not diagonalizable)");
    }
  }
  return sys;
}

KaonBasis kaon_reciprocal(const Vec& ks, const Vec& kl) {
  if (ks.size() != kl.size()) {
    raise(errc::validation_error, "state dimensions differ");
  }
  for (cplx x : ks) {
    if (!is_finite(x)) raise(errc::non_finite, "non-finite state component");
  }
  for (cplx x : kl) {
    if (!is_finite(x)) raise(errc::non_finite, "non-finite state component");
  }
  if (std::abs(norm(ks) - 1.0) > 1e-9 || std::abs(norm(kl) - 1.0) > 1e-9) {
    raise(errc::not_normalized, "input states must be unit norm");
  }

  KaonBasis basis;
  basis.ks = ks;
  basis.kl = kl;
  basis.chi = inner(kl, ks);
  if (std::abs(basis.chi) >= 1.0 - 1e-12) {
    raise(errc::parallel_states, "states too close to parallel");
  }
  const double w = std::sqrt(1.0 - std::norm(basis.chi));
  basis.ks_prime.resize(ks.size());
  basis.kl_prime.resize(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    basis.ks_prime[i] = (ks[i] - basis.chi * kl[i]) / w;
    basis.kl_prime[i] = (kl[i] - std::conj(basis.chi) * ks[i]) / w;
  }
  return basis;
}

EigenvaluePair eigenvalues_2x2(const SquareMatrix& h0) {
  if (h0.dim() != 2) raise(errc::validation_error, "eigenvalues_2x2 needs dim 2");
  if (!h0.finite()) raise(errc::non_finite, "non-finite matrix");
  const cplx tr = h0(0, 0) + h0(1, 1);
  const cplx det = h0(0, 0) * h0(1, 1) - h0(0, 1) * h0(1, 0);
  const cplx root = std::sqrt(tr * tr - 4.0 * det);
  EigenvaluePair pair{(tr - root) / 2.0, (tr + root) / 2.0};
  const double scale = std::max(1.0, std::abs(pair.lambda_s));
  if (std::abs(pair.lambda_s - pair.lambda_l) < 1e-12 * scale) {
    raise(errc::degenerate_spectrum, "coincident eigenvalues");
  }
  return pair;
}

}  // namespace spectral
