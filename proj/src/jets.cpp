#include "spectral/jets.hpp"

namespace spectral {

TaylorJet TaylorJet::exp_linear(cplx c0, cplx c1, std::size_t order) {
  TaylorJet jet(order);
  jet.coeffs_[0] = std::exp(c0);
  for (std::size_t k = 1; k <= order; ++k) {
    jet.coeffs_[k] = jet.coeffs_[k - 1] * c1 / static_cast<double>(k);
  }
  return jet;
}

TaylorJet TaylorJet::inverse_power(cplx base, unsigned power,
                                   std::size_t order) {
  if (base == cplx(0.0)) {
    raise(errc::poles_too_close, "inverse power expansion at zero base");
  }
  TaylorJet jet(order);
  cplx lead = 1.0;
  for (unsigned k = 0; k < power; ++k) lead /= base;
  jet.coeffs_[0] = lead;
  // Binomial series: c_k = c_{k-1} * (-(power + k - 1) / k) / base.
  for (std::size_t k = 1; k <= order; ++k) {
    jet.coeffs_[k] = jet.coeffs_[k - 1] *
                     (-static_cast<double>(power + k - 1) /
                      static_cast<double>(k)) /
                     base;
  }
  return jet;
}

TaylorJet& TaylorJet::operator*=(const TaylorJet& rhs) {
  const std::size_t n = coeffs_.size();
  std::vector<cplx> out(n, cplx(0.0));
  for (std::size_t i = 0; i < n; ++i) {
    if (coeffs_[i] == cplx(0.0)) continue;
    for (std::size_t j = 0; i + j < n && j < rhs.coeffs_.size(); ++j) {
      out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
  }
  coeffs_ = std::move(out);
  return *this;
}

}  // namespace spectral
