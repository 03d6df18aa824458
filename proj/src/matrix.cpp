#include "spectral/matrix.hpp"

#include <Eigen/Dense>

#include "eigen_bridge.hpp"

namespace spectral {

const char* errc_name(errc code) {
  switch (code) {
    case errc::non_finite: return "NonFinite";
    case errc::defective: return "Defective";
    case errc::parallel_states: return "ParallelStates";
    case errc::not_normalized: return "NotNormalized";
    case errc::degenerate_spectrum: return "DegenerateSpectrum";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::poles_too_close: return "PolesTooClose";
    case errc::pole_on_contour: return "PoleOnContour";
    case errc::singular_solve: return "SingularSolve";
    case errc::step_count_too_small: return "StepCountTooSmall";
    case errc::grid_too_coarse: return "GridTooCoarse";
    case errc::method_mismatch: return "MethodMismatch";
    case errc::zero_commutator: return "ZeroCommutator";
    case errc::singular_transform: return "SingularTransform";
    case errc::parse_error: return "ParseError";
    case errc::validation_error: return "ValidationError";
    case errc::unknown_parameter: return "UnknownParameter";
    case errc::compute_error: return "ComputeError";
  }
  return "UnknownError";
}

SquareMatrix::SquareMatrix(std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim_ == 0 || entries_.size() != dim_ * dim_) {
    raise(errc::validation_error, "entry count must equal dim^2 with dim >= 1");
  }
}

SquareMatrix SquareMatrix::identity(std::size_t dim) {
  SquareMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

SquareMatrix SquareMatrix::from_rows(
    std::initializer_list<std::initializer_list<cplx>> rows) {
  const std::size_t n = rows.size();
  SquareMatrix m(n);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != n) {
      raise(errc::validation_error, "from_rows requires a square literal");
    }
    std::size_t j = 0;
    for (cplx v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

bool SquareMatrix::finite() const {
  for (cplx v : entries_) {
    if (!is_finite(v)) return false;
  }
  return true;
}

SquareMatrix SquareMatrix::adjoint() const {
  SquareMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      out(i, j) = std::conj((*this)(j, i));
    }
  }
  return out;
}

SquareMatrix& SquareMatrix::operator+=(const SquareMatrix& rhs) {
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
  return *this;
}

SquareMatrix& SquareMatrix::operator-=(const SquareMatrix& rhs) {
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
  return *this;
}

SquareMatrix& SquareMatrix::operator*=(cplx scale) {
  for (cplx& v : entries_) v *= scale;
  return *this;
}

SquareMatrix SquareMatrix::operator*(const SquareMatrix& rhs) const {
  const std::size_t n = dim_;
  SquareMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = (*this)(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        out(i, j) += aik * rhs(k, j);
      }
    }
  }
  return out;
}

cplx trace(const SquareMatrix& m) {
  cplx t = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) t += m(i, i);
  return t;
}

cplx determinant(const SquareMatrix& m) {
  return to_eigen(m).determinant();
}

SquareMatrix commutator(const SquareMatrix& a, const SquareMatrix& b) {
  return a * b - b * a;
}

double frobenius_norm(const SquareMatrix& m) {
  double s = 0.0;
  for (cplx v : m.entries()) s += std::norm(v);
  return std::sqrt(s);
}

double spectral_norm(const SquareMatrix& m) {
  if (m.dim() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  return svd.singularValues()(0);
}

double spectral_norm_diff(const SquareMatrix& a, const SquareMatrix& b) {
  return spectral_norm(a - b);
}

double max_abs_entry(const SquareMatrix& m) {
  double best = 0.0;
  for (cplx v : m.entries()) best = std::max(best, std::abs(v));
  return best;
}

SquareMatrix inverse(const SquareMatrix& m) {
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(to_eigen(m));
  if (!lu.isInvertible()) {
    raise(errc::singular_solve, "matrix is singular to working precision");
  }
  return from_eigen(lu.inverse());
}

SquareMatrix solve(const SquareMatrix& a, const SquareMatrix& b) {
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(to_eigen(a));
  if (!lu.isInvertible()) {
    raise(errc::singular_solve, "solve with singular coefficient matrix");
  }
  return from_eigen(lu.solve(to_eigen(b)));
}

cplx inner(const Vec& a, const Vec& b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(const Vec& v) {
  double s = 0.0;
  for (cplx x : v) s += std::norm(x);
  return std::sqrt(s);
}

Vec matvec(const SquareMatrix& m, const Vec& v) {
  const std::size_t n = m.dim();
  Vec out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

SquareMatrix outer(const Vec& u, const Vec& v) {
  const std::size_t n = u.size();
  SquareMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) = u[i] * std::conj(v[j]);
    }
  }
  return out;
}

}  // namespace spectral
