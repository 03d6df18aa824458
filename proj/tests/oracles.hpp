// Test-side oracles, all independent of the library paths they cross-check:
// scalar contour quadrature for the residue machinery, a spectral-sum
// exponential for expm, brute-force coefficient extraction for the series,
// and a plain RK4 on the commutator-truncated matrix equation.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <random>

#include "spectral/eig.hpp"
#include "spectral/expm.hpp"
#include "spectral/matrix.hpp"
#include "spectral/residues.hpp"

namespace oracles {

using spectral::cplx;
using spectral::SquareMatrix;
using spectral::Vec;

// (1/2*pi*i) * closed-circle quadrature of F(z) = e^{-izt} prod (z-l_k)^{-m_k}
// around the pole centroid with a tight margin (keeps |e^{-izt}| small so the
// node sum stays accurate in absolute terms).
inline cplx contour_residue_sum(const spectral::PoleConfiguration& cfg,
                                double t, std::size_t nodes = 512,
                                double margin = 0.5) {
  cplx center = 0.0;
  for (const auto& p : cfg.poles) center += p.location;
  center /= static_cast<double>(cfg.poles.size());
  double radius = 0.0;
  for (const auto& p : cfg.poles) {
    radius = std::max(radius, std::abs(p.location - center));
  }
  radius += margin;

  cplx acc = 0.0;
  for (std::size_t k = 0; k < nodes; ++k) {
    const double theta =
        2.0 * M_PI * static_cast<double>(k) / static_cast<double>(nodes);
    const cplx rot = std::polar(1.0, theta);
    const cplx z = center + radius * rot;
    cplx f = std::exp(cplx(0.0, -t) * z);
    for (const auto& p : cfg.poles) {
      for (unsigned q = 0; q < p.multiplicity; ++q) f /= (z - p.location);
    }
    acc += f * rot;
  }
  return acc * radius / static_cast<double>(nodes);
}

// Spectral-sum exponential: exp(-i t h) = sum e^{-i l_i t} |phi_i><psi_i|/o_i.
inline SquareMatrix eig_expm(const SquareMatrix& h, double t) {
  const auto sys = spectral::eig_biorthogonal(h);
  SquareMatrix acc(h.dim());
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    acc += (std::exp(cplx(0.0, -t) * sys.eigenvalues[i]) / sys.overlaps[i]) *
           spectral::outer(sys.right_vectors[i], sys.left_vectors[i]);
  }
  return acc;
}

// Solves the 3x3 complex system a x = b by Gaussian elimination with partial
// pivoting (plenty for the well-conditioned fit systems below).
inline std::array<cplx, 3> solve3(std::array<std::array<cplx, 3>, 3> a,
                                  std::array<cplx, 3> b) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int r = col + 1; r < 3; ++r) {
      const cplx f = a[r][col] / a[col][col];
      for (int c = col; c < 3; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::array<cplx, 3> x{};
  for (int r = 2; r >= 0; --r) {
    cplx s = b[r];
    for (int c = r + 1; c < 3; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return x;
}

// Quadratic coefficient of g(eps) around 0, from g at eps in {0.05, 0.1, 0.2}
// plus the exact g(0): fit c1*eps + c2*eps^2 + c3*eps^3 through the three
// points and return c2.
inline cplx fit_second_order(const std::function<cplx(double)>& g, cplx g0) {
  const std::array<double, 3> eps = {0.05, 0.1, 0.2};
  std::array<std::array<cplx, 3>, 3> a{};
  std::array<cplx, 3> rhs{};
  for (int i = 0; i < 3; ++i) {
    a[i][0] = eps[i];
    a[i][1] = eps[i] * eps[i];
    a[i][2] = eps[i] * eps[i] * eps[i];
    rhs[i] = g(eps[i]) - g0;
  }
  return solve3(a, rhs)[1];
}

// RK4 for W' = (b - lambda [a,b]) W on [0, 1]; the truncated equation at the
// matrix level, used against the Zassenhaus closed form on nilpotent pairs.
inline SquareMatrix truncated_matrix_w1(const SquareMatrix& a,
                                        const SquareMatrix& b,
                                        std::size_t steps) {
  const SquareMatrix ab = spectral::commutator(a, b);
  const double h = 1.0 / static_cast<double>(steps);
  SquareMatrix w = SquareMatrix::identity(a.dim());
  auto rhs = [&](double lam) { return b - cplx(lam) * ab; };
  for (std::size_t i = 0; i < steps; ++i) {
    const double lam = static_cast<double>(i) * h;
    const SquareMatrix k1 = rhs(lam) * w;
    const SquareMatrix k2 = rhs(lam + h / 2) * (w + cplx(h / 2) * k1);
    const SquareMatrix k3 = rhs(lam + h / 2) * (w + cplx(h / 2) * k2);
    const SquareMatrix k4 = rhs(lam + h) * (w + cplx(h) * k3);
    w += cplx(h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return w;
}

// ---- random instance generators -------------------------------------------

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine);
  }
  cplx box() { return cplx(uniform(-1.0, 1.0), uniform(-1.0, 1.0)); }

  SquareMatrix box_matrix(std::size_t dim) {
    SquareMatrix m(dim);
    for (auto& e : m.entries()) e = box();
    return m;
  }

  // Random matrix in the unit box, redrawn until it diagonalizes cleanly.
  SquareMatrix diagonalizable(std::size_t dim) {
    for (;;) {
      SquareMatrix m = box_matrix(dim);
      try {
        (void)spectral::eig_biorthogonal(m);
        return m;
      } catch (const spectral::Error&) {
      }
    }
  }

  Vec unit_vector(std::size_t dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec v(dim);
    for (auto& x : v) x = cplx(gauss(engine), gauss(engine));
    const double n = spectral::norm(v);
    for (auto& x : v) x /= n;
    return v;
  }

  // Unit pair with overlap bounded away from 1.
  std::pair<Vec, Vec> state_pair(double max_overlap = 0.99) {
    for (;;) {
      Vec ks = unit_vector(2);
      Vec kl = unit_vector(2);
      if (std::abs(spectral::inner(kl, ks)) < max_overlap) return {ks, kl};
    }
  }
};

}  // namespace oracles
