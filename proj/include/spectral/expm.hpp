#pragma once

#include "spectral/matrix.hpp"

namespace spectral {

// exp(M) by Pade approximation with scaling and squaring.
SquareMatrix expm_mat(const SquareMatrix& m);

// Evolution-operator exponential exp(-i t M).
SquareMatrix expm(const SquareMatrix& m, double t);

}  // namespace spectral
