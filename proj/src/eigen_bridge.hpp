#pragma once

#include <Eigen/Dense>

#include "spectral/matrix.hpp"

namespace spectral {

inline Eigen::MatrixXcd to_eigen(const SquareMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  return out;
}

inline SquareMatrix from_eigen(const Eigen::MatrixXcd& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  SquareMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) =
          m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

}  // namespace spectral
