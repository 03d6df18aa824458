#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace spectral {

using cplx = std::complex<double>;

// Relative threshold below which two eigenvalues are treated as one pole of
// higher multiplicity (scaled by max(1, max|lambda|)).
inline constexpr double kDefaultClusterTol = 1e-9;

// Overlap magnitude below which a matrix is reported as non-diagonalizable.
inline constexpr double kDefectiveOverlapTol = 1e-10;

// Node count used when a contour is auto-selected around a spectrum.
inline constexpr std::size_t kDefaultContourNodes = 128;

enum class errc {
  non_finite,
  defective,
  parallel_states,
  not_normalized,
  degenerate_spectrum,
  index_out_of_range,
  poles_too_close,
  pole_on_contour,
  singular_solve,
  step_count_too_small,
  grid_too_coarse,
  method_mismatch,
  zero_commutator,
  singular_transform,
  parse_error,
  validation_error,
  unknown_parameter,
  compute_error,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& message) {
  throw Error(code, message);
}

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(cplx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace spectral
