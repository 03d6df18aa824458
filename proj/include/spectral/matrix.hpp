#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "spectral/types.hpp"

namespace spectral {

// Dense complex N x N matrix, row-major. The universal carrier for
// Hamiltonians, perturbations, propagators and factorization paths.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}
  SquareMatrix(std::size_t dim, std::vector<cplx> entries);

  static SquareMatrix identity(std::size_t dim);
  // Row-major literal, mostly for tests: SquareMatrix::from_rows({{a,b},{c,d}}).
  static SquareMatrix from_rows(
      std::initializer_list<std::initializer_list<cplx>> rows);

  std::size_t dim() const { return dim_; }
  bool empty() const { return dim_ == 0; }

  cplx& operator()(std::size_t i, std::size_t j) {
    return entries_[i * dim_ + j];
  }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * dim_ + j];
  }

  const std::vector<cplx>& entries() const { return entries_; }
  std::vector<cplx>& entries() { return entries_; }

  bool finite() const;

  SquareMatrix adjoint() const;

  SquareMatrix& operator+=(const SquareMatrix& rhs);
  SquareMatrix& operator-=(const SquareMatrix& rhs);
  SquareMatrix& operator*=(cplx scale);

  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) {
    a += b;
    return a;
  }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) {
    a -= b;
    return a;
  }
  friend SquareMatrix operator*(cplx s, SquareMatrix a) {
    a *= s;
    return a;
  }
  friend SquareMatrix operator*(SquareMatrix a, cplx s) {
    a *= s;
    return a;
  }
  SquareMatrix operator*(const SquareMatrix& rhs) const;

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> entries_;
};

cplx trace(const SquareMatrix& m);
cplx determinant(const SquareMatrix& m);
SquareMatrix commutator(const SquareMatrix& a, const SquareMatrix& b);

double frobenius_norm(const SquareMatrix& m);
// Largest singular value.
double spectral_norm(const SquareMatrix& m);
double spectral_norm_diff(const SquareMatrix& a, const SquareMatrix& b);
double max_abs_entry(const SquareMatrix& m);

// Throws errc::singular_solve when the matrix is not invertible.
SquareMatrix inverse(const SquareMatrix& m);
// Solves a * x = b.
SquareMatrix solve(const SquareMatrix& a, const SquareMatrix& b);

// Column vector helpers; bras are formed by conjugation inside inner().
using Vec = std::vector<cplx>;

// Hermitian pairing <a|b> = sum conj(a_i) b_i.
cplx inner(const Vec& a, const Vec& b);
double norm(const Vec& v);
Vec matvec(const SquareMatrix& m, const Vec& v);
// |u><v| as a matrix (v entering as a bra, i.e. conjugated).
SquareMatrix outer(const Vec& u, const Vec& v);

}  // namespace spectral
