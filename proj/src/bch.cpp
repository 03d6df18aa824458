#include "spectral/bch.hpp"

#include <cmath>

#include "spectral/expm.hpp"

namespace spectral {

namespace {

// Classical RK4 on W' = rhs(lambda) * W over a uniform grid.
template <class Rhs>
WPath integrate_linear(std::size_t dim, double lambda_max, std::size_t steps,
                       WMethod method, Rhs&& rhs) {
  if (steps < 16) raise(errc::step_count_too_small, "need at least 16 steps");
  if (!is_finite(lambda_max) || lambda_max < 0.0) {
    raise(errc::validation_error, "lambda_max must be finite and >= 0");
  }
  const double h = lambda_max / static_cast<double>(steps);

  WPath path;
  path.method = method;
  path.lambdas.reserve(steps + 1);
  path.w_values.reserve(steps + 1);
  path.lambdas.push_back(0.0);
  path.w_values.push_back(SquareMatrix::identity(dim));

  SquareMatrix w = SquareMatrix::identity(dim);
  SquareMatrix coeff_lo = rhs(0.0);
  for (std::size_t i = 0; i < steps; ++i) {
    const double lam = static_cast<double>(i) * h;
    const SquareMatrix coeff_mid = rhs(lam + 0.5 * h);
    const SquareMatrix coeff_hi = rhs(lam + h);

    const SquareMatrix k1 = coeff_lo * w;
    const SquareMatrix k2 = coeff_mid * (w + (0.5 * h) * k1);
    const SquareMatrix k3 = coeff_mid * (w + (0.5 * h) * k2);
    const SquareMatrix k4 = coeff_hi * (w + h * k3);
    w += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!w.finite()) raise(errc::non_finite, "integration blew up");

    path.lambdas.push_back(static_cast<double>(i + 1) * h);
    path.w_values.push_back(w);
    coeff_lo = coeff_hi;
  }
  return path;
}

SquareMatrix truncated_coefficient(const BchParams& params, double lambda) {
  const cplx diag = params.p - lambda * params.kappa;
  SquareMatrix m(2);
  m(0, 0) = diag;
  m(0, 1) = params.r;
  m(1, 0) = params.r;
  m(1, 1) = -diag;
  return m;
}

}  // namespace

WPath integrate_w_exact(const SquareMatrix& a, const SquareMatrix& b,
                        double lambda_max, std::size_t steps) {
  if (a.dim() != b.dim() || a.dim() == 0) {
    raise(errc::validation_error, "a and b must share a dimension >= 1");
  }
  if (!a.finite() || !b.finite()) raise(errc::non_finite, "non-finite input");
  return integrate_linear(a.dim(), lambda_max, steps, WMethod::exact,
                          [&](double lam) {
                            const SquareMatrix left = expm_mat(cplx(-lam) * a);
                            const SquareMatrix right = expm_mat(cplx(lam) * a);
                            return left * b * right;
                          });
}

WPath integrate_w_truncated(const BchParams& params, double lambda_max,
                            std::size_t steps) {
  if (!is_finite(params.p) || !is_finite(params.r) || !is_finite(params.kappa)) {
    raise(errc::non_finite, "non-finite parameters");
  }
  return integrate_linear(2, lambda_max, steps, WMethod::truncated,
                          [&](double lam) {
                            return truncated_coefficient(params, lam);
                          });
}

double second_order_residual(const WPath& path, const BchParams& params) {
  if (path.method != WMethod::truncated) {
    raise(errc::method_mismatch,
          "residual check applies to truncated-method paths only");
  }
  const std::size_t n = path.lambdas.size();
  if (n < 256) raise(errc::grid_too_coarse, "need at least 256 grid points");
  const double h = path.lambdas[1] - path.lambdas[0];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (std::abs(path.lambdas[i + 1] - path.lambdas[i] - h) > 1e-12) {
      raise(errc::grid_too_coarse, "grid must be uniform");
    }
  }

  double max_w = 0.0;
  for (const SquareMatrix& w : path.w_values) {
    max_w = std::max(max_w, max_abs_entry(w));
  }

  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double lam = path.lambdas[i];
    const cplx shift = lam * params.kappa - params.p;
    const cplx base = params.r * params.r + shift * shift;
    const SquareMatrix& lo = path.w_values[i - 1];
    const SquareMatrix& mid = path.w_values[i];
    const SquareMatrix& hi = path.w_values[i + 1];

    const cplx d2_11 = (hi(0, 0) - 2.0 * mid(0, 0) + lo(0, 0)) / (h * h);
    const cplx d2_22 = (hi(1, 1) - 2.0 * mid(1, 1) + lo(1, 1)) / (h * h);
    worst = std::max(worst, std::abs(d2_11 - (base - params.kappa) * mid(0, 0)));
    worst = std::max(worst, std::abs(d2_22 - (base + params.kappa) * mid(1, 1)));
  }
  return worst / max_w;
}

ParabolicCoords parabolic_coords(const BchParams& params, double lambda) {
  if (params.kappa == cplx(0.0)) {
    raise(errc::zero_commutator, "parabolic coordinates need kappa != 0");
  }
  ParabolicCoords out;
  out.theta = params.r * params.r / (2.0 * params.kappa);
  out.y = (lambda * params.kappa - params.p) * std::sqrt(2.0 / params.kappa);
  return out;
}

SquareMatrix assemble_full_u(const SquareMatrix& a, const WPath& path,
                             const TransformPair& transforms) {
  if (path.lambdas.empty() || std::abs(path.lambdas.back() - 1.0) > 1e-12) {
    raise(errc::validation_error, "path must be evaluated up to lambda = 1");
  }
  const SquareMatrix& w1 = path.w_values.back();
  if (transforms.o_initial.dim() != w1.dim() ||
      transforms.o_final.dim() != w1.dim() || a.dim() != w1.dim()) {
    raise(errc::validation_error, "dimension mismatch in assembly");
  }
  SquareMatrix o_final_inv;
  try {
    o_final_inv = inverse(transforms.o_final);
  } catch (const Error&) {
    raise(errc::singular_transform, "o_final is not invertible");
  }
  try {
    (void)inverse(transforms.o_initial);
  } catch (const Error&) {
    raise(errc::singular_transform, "o_initial is not invertible");
  }
  return o_final_inv * expm_mat(a) * w1 * transforms.o_initial;
}

SquareMatrix theta_zero_u(const SquareMatrix& h_cm, const SquareMatrix& v,
                          double t) {
  if (h_cm.dim() != v.dim() || h_cm.dim() == 0) {
    raise(errc::validation_error, "dimension mismatch");
  }
  return expm(h_cm, t) * expm(v, t);
}

}  // namespace spectral
