#pragma once

#include <vector>

#include "spectral/matrix.hpp"

namespace spectral {

struct Pole {
  cplx location;
  unsigned multiplicity = 1;
};

// Poles of the evolution kernel F(z) = e^{-izt} * prod (z - lambda_i)^{-m_i}.
// Locations must stay pairwise separated by more than the cluster tolerance;
// build configurations through cluster_poles to guarantee that.
struct PoleConfiguration {
  std::vector<Pole> poles;

  unsigned total_order() const {
    unsigned sum = 0;
    for (const Pole& p : poles) sum += p.multiplicity;
    return sum;
  }
};

// Merges an eigenvalue multiset into distinct poles with multiplicities.
// Values within tol * max(1, max|lambda|) of each other collapse onto their
// mean. Output sorted lexicographically by (re, im).
PoleConfiguration cluster_poles(std::vector<cplx> values,
                                double tol = kDefaultClusterTol);

// Residue of F(z) at pole j:
//   (1/(m_j-1)!) d^{m_j-1}/dz^{m_j-1} [e^{-izt} prod_{k!=j} (z-lambda_k)^{-m_k}]
// evaluated with truncated Taylor-jet arithmetic (exact to rounding).
cplx residue_exp_kernel(const PoleConfiguration& cfg, std::size_t j, double t);

// Sum of all residues; equals (1/2*pi*i) times the integral of F over any
// contour enclosing every pole.
cplx residue_sum(const PoleConfiguration& cfg, double t);

// Circular contour for resolvent quadrature.
struct Contour {
  cplx center;
  double radius = 1.0;
  std::size_t nodes = kDefaultContourNodes;
};

// center = mean of the eigenvalues, radius = 1.5 * max distance + 0.5.
Contour auto_contour(const std::vector<cplx>& eigenvalues,
                     std::size_t nodes = kDefaultContourNodes);

// Trapezoidal quadrature of (1/2*pi*i) * integral of e^{-izt} (zI - h)^{-1} dz
// over the circle. Node solves run in parallel; the node sum is always taken
// in ascending index order. Throws errc::pole_on_contour when an eigenvalue
// of h is not strictly inside (relative exclusion band 1e-6 of the radius).
SquareMatrix contour_resolvent(const SquareMatrix& h, double t,
                               const Contour& c);

// sup over the contour nodes of ||v (zI - h0)^{-1}||_2; below 1 the geometric
// resolvent expansion converges on that contour.
double series_convergence_bound(const SquareMatrix& h0, const SquareMatrix& v,
                                const Contour& c);

namespace reference {
// Plain serial loops kept as a cross-check for the parallel kernels.
SquareMatrix contour_resolvent(const SquareMatrix& h, double t,
                               const Contour& c);
double series_convergence_bound(const SquareMatrix& h0, const SquareMatrix& v,
                                const Contour& c);
}  // namespace reference

}  // namespace spectral
