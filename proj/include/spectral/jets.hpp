#pragma once

#include <cstddef>
#include <vector>

#include "spectral/types.hpp"

namespace spectral {

// Truncated Taylor expansion in a formal offset eps, kept to a fixed order.
// Coefficient k stores the k-th Taylor coefficient (derivative / k!), so
// products are plain truncated convolutions and every coefficient is exact to
// rounding. Used to read off residues of e^{-izt} * prod (z - lambda_k)^{-m_k}
// without numerical differentiation.
class TaylorJet {
 public:
  explicit TaylorJet(std::size_t order) : coeffs_(order + 1, cplx(0.0)) {}

  static TaylorJet constant(cplx value, std::size_t order) {
    TaylorJet jet(order);
    jet.coeffs_[0] = value;
    return jet;
  }

  // Coefficients of exp(c0 + c1*eps): exp(c0) * c1^k / k!.
  static TaylorJet exp_linear(cplx c0, cplx c1, std::size_t order);

  // Coefficients of (base + eps)^(-power) for base != 0, power >= 1.
  static TaylorJet inverse_power(cplx base, unsigned power, std::size_t order);

  std::size_t order() const { return coeffs_.size() - 1; }
  cplx coeff(std::size_t k) const { return coeffs_[k]; }

  TaylorJet& operator*=(const TaylorJet& rhs);
  friend TaylorJet operator*(TaylorJet a, const TaylorJet& b) {
    a *= b;
    return a;
  }

 private:
  std::vector<cplx> coeffs_;
};

}  // namespace spectral
