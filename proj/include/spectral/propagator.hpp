#pragma once

#include <vector>

#include "spectral/eig.hpp"
#include "spectral/matrix.hpp"
#include "spectral/residues.hpp"

namespace spectral {

// Split evolution problem U(t) = exp[-i (h0 + v) t] with diagonalizable h0.
struct PerturbationProblem {
  SquareMatrix h0;
  SquareMatrix v;
  double t = 0.0;
  double cluster_tol = kDefaultClusterTol;
};

// Per-order diagnostics of the truncated spectral series.
struct TruncationReport {
  unsigned order = 0;
  std::vector<SquareMatrix> partial_sums;  // cumulative through n = 0..order
  std::vector<double> term_norms;          // spectral norm of each increment
  std::vector<double> oracle_error;        // ||partial_sum_n - expm(h0+v, t)||_2
  double convergence_bound = 0.0;          // sup ||v G0(z)|| on the auto-contour
  bool divergent = false;                  // convergence_bound >= 1
};

// Matrix element <Psi_alpha| U(t) |Phi_beta> of the perturbation series summed
// through the given order. The n-th term runs over all intermediate index
// strings; each inserted resolution of the identity divides by its overlap,
// and the eigenvalue multiset of a string is clustered into the pole
// configuration fed to the residue machinery. Terms of order n >= 1 evaluate
// in parallel with a fixed-order reduction.
//
// A divergent series (bound >= 1) still evaluates; when `divergent` is
// non-null it receives the flag.
cplx propagator_element(const PerturbationProblem& p, std::size_t alpha,
                        std::size_t beta, unsigned order,
                        bool* divergent = nullptr);

// Assembles the full U(t) from all elements through each order:
//   U = sum_{ab} |Phi_a> U_ab <Psi_b| / (overlap_a * overlap_b),
// with oracle errors measured against expm(h0 + v, t).
TruncationReport propagator_matrix(const PerturbationProblem& p,
                                   unsigned order);

// The n = 2 term of the short-to-long element of a two-level system,
// assembled from first- and second-order pole residues:
//   (1/sqrt(1-|chi|^2)) [ V_ss V_sl (R_(2)(l_s) + R_(1)(l_l))
//                       + V_sl V_ll (R_(1)(l_s) + R_(2)(l_l)) ].
cplx kaon_second_order(const PerturbationProblem& p);

namespace reference {
// Serial recomputation of the series element, kept as a cross-check.
cplx propagator_element(const PerturbationProblem& p, std::size_t alpha,
                        std::size_t beta, unsigned order);
}  // namespace reference

}  // namespace spectral
