#pragma once

#include <vector>

#include "spectral/matrix.hpp"

namespace spectral {

// Scalar data of the truncated factorization model: the coefficient matrix of
// the 2x2 system is [[p - lambda*kappa, r], [r, -(p - lambda*kappa)]], where
// kappa is the c-number commutator and q_shift enters only through the scalar
// prefactor exp(q_shift * I).
struct BchParams {
  cplx p;
  cplx r;
  cplx kappa;
  cplx q_shift;
};

enum class WMethod { exact, truncated };

// W(lambda) sampled on a uniform grid, with W(0) = identity.
struct WPath {
  std::vector<double> lambdas;
  std::vector<SquareMatrix> w_values;
  WMethod method = WMethod::exact;
};

// Frame change bracketing the factorized evolution: U = o_final^{-1} * Utilde * o_initial.
struct TransformPair {
  SquareMatrix o_initial;
  SquareMatrix o_final;
};

// Integrates dW/dlambda = (e^{-lambda a} b e^{lambda a}) W, W(0) = I, with a
// fixed-step classical 4th-order method; e^{lambda a} W(lambda) then matches
// e^{lambda (a+b)} to O(steps^-4).
WPath integrate_w_exact(const SquareMatrix& a, const SquareMatrix& b,
                        double lambda_max, std::size_t steps);

// Same stepper on the truncated 2x2 scalar system built from (p, r, kappa).
WPath integrate_w_truncated(const BchParams& params, double lambda_max,
                            std::size_t steps);

// Max interior defect of the decoupled second-order form
//   W11'' = (r^2 - kappa + (lambda*kappa - p)^2) W11,
//   W22'' = (r^2 + kappa + (lambda*kappa - p)^2) W22,
// using central second differences, normalized by max |W| along the path.
// Requires a truncated-method path with at least 256 grid points.
double second_order_residual(const WPath& path, const BchParams& params);

struct ParabolicCoords {
  cplx theta;  // r^2 / (2 kappa)
  cplx y;      // (lambda*kappa - p) * sqrt(2/kappa), principal branch
};

// The change of variables taking the second-order form to the parabolic
// cylinder normal form w'' = (y^2/4 + theta -+ 1/2) w; dy/dlambda = kappa*sqrt(2/kappa).
ParabolicCoords parabolic_coords(const BchParams& params, double lambda);

// o_final^{-1} * e^{a} * W(1) * o_initial; the path must reach lambda = 1.
SquareMatrix assemble_full_u(const SquareMatrix& a, const WPath& path,
                             const TransformPair& transforms);

// Decoupled closed form exp(-i t h_cm) * exp(-i t v) recovered when the
// coupling (hence theta) vanishes.
SquareMatrix theta_zero_u(const SquareMatrix& h_cm, const SquareMatrix& v,
                          double t);

}  // namespace spectral
