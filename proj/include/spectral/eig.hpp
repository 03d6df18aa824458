#pragma once

#include <array>
#include <vector>

#include "spectral/matrix.hpp"

namespace spectral {

// Eigenvalues with paired right eigenvectors and left covectors of a
// diagonalizable (generally non-normal) matrix.
//
// Conventions: right_vectors[i] and left_vectors[i] are unit-norm kets; the
// covector <Psi_i| acts as inner(left_vectors[i], .). Overlaps <Psi_i|Phi_i>
// come out real positive, so sum_i |Phi_i><Psi_i| / overlap_i = identity.
struct BiorthogonalSystem {
  std::vector<cplx> eigenvalues;
  std::vector<Vec> right_vectors;
  std::vector<Vec> left_vectors;
  std::vector<cplx> overlaps;
  double cluster_tol = kDefaultClusterTol;

  std::size_t dim() const { return eigenvalues.size(); }

  // sum_i |Phi_i><Psi_i| / <Psi_i|Phi_i>; identity for a valid system.
  SquareMatrix projector_sum() const;
  // sum_i lambda_i |Phi_i><Psi_i| / <Psi_i|Phi_i>; reconstructs the matrix.
  SquareMatrix reconstruct() const;
};

// Metastable two-level eigenbasis with its reciprocal covector set.
struct KaonBasis {
  Vec ks, kl;            // unit right eigenvectors
  cplx chi;              // <kl|ks>
  Vec ks_prime, kl_prime;

  // The four equivalent resolutions of the identity:
  //   |ks><ks| + |kl'><kl'|,
  //   |kl><kl| + |ks'><ks'|,
  //   (|ks><ks'| + |kl><kl'|) / sqrt(1-|chi|^2),
  //   (|ks'><ks| + |kl'><kl|) / sqrt(1-|chi|^2).
  std::array<SquareMatrix, 4> unity_forms() const;
};

struct EigenvaluePair {
  cplx lambda_s;  // minus branch of the square root
  cplx lambda_l;
};

// Biorthogonal eigendecomposition: eigenvalues sorted lexicographically by
// (re, im); right vectors phase-fixed (largest entry real positive); left
// covectors from the inverse of the right-eigenvector matrix, both sides
// normalized to unit norm. Throws errc::defective when any normalized overlap
// falls below kDefectiveOverlapTol, errc::non_finite on bad input.
BiorthogonalSystem eig_biorthogonal(const SquareMatrix& a,
                                    double tol_cluster = kDefaultClusterTol);

// Reciprocal basis of two non-parallel unit states:
//   ks' = (ks - chi*kl)/sqrt(1-|chi|^2), kl' = (kl - conj(chi)*ks)/sqrt(1-|chi|^2).
// Throws errc::not_normalized / errc::parallel_states.
KaonBasis kaon_reciprocal(const Vec& ks, const Vec& kl);

// (tr -+ sqrt(tr^2 - 4 det))/2 with the principal square root; lambda_s takes
// the minus sign. Throws errc::degenerate_spectrum when the roots coincide.
EigenvaluePair eigenvalues_2x2(const SquareMatrix& h0);

}  // namespace spectral
