#include "spectral/expm.hpp"

#include <cmath>

namespace spectral {

namespace {

double l1_norm(const SquareMatrix& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.dim(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i) col += std::abs(m(i, j));
    best = std::max(best, col);
  }
  return best;
}

// Builds U (odd part) and V (even part) for a diagonal Pade approximant from
// precomputed even powers; exp(A) ~ (V - U)^{-1} (V + U).
void pade_from_powers(const SquareMatrix& a, const double* b, int degree,
                      const std::vector<SquareMatrix>& even_pows,
                      SquareMatrix& u, SquareMatrix& v) {
  const std::size_t n = a.dim();
  SquareMatrix odd_acc(n), even_acc(n);
  for (int k = 0; k <= degree; ++k) {
    const SquareMatrix& pw = even_pows[static_cast<std::size_t>(k / 2)];
    if (k % 2 == 1) {
      odd_acc += b[k] * pw;  // coefficient of A^(k-1), multiplied by A below
    } else {
      even_acc += b[k] * pw;
    }
  }
  u = a * odd_acc;
  v = even_acc;
}

SquareMatrix pade13(const SquareMatrix& a) {
  static const double b[] = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  const std::size_t n = a.dim();
  const SquareMatrix id = SquareMatrix::identity(n);
  const SquareMatrix a2 = a * a;
  const SquareMatrix a4 = a2 * a2;
  const SquareMatrix a6 = a4 * a2;
  SquareMatrix w = b[13] * a6 + b[11] * a4 + b[9] * a2;
  SquareMatrix u = a * (a6 * w + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  w = b[12] * a6 + b[10] * a4 + b[8] * a2;
  SquareMatrix v = a6 * w + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  return solve(v - u, v + u);
}

}  // namespace

SquareMatrix expm_mat(const SquareMatrix& m) {
  if (!m.finite()) raise(errc::non_finite, "expm of non-finite matrix");
  const std::size_t n = m.dim();
  const double nrm = l1_norm(m);

  // Degree thresholds from the standard scaling-and-squaring analysis.
  static const double theta3 = 1.495585217958292e-2;
  static const double theta5 = 2.539398330063230e-1;
  static const double theta7 = 9.504178996162932e-1;
  static const double theta9 = 2.097847961257068e0;
  static const double theta13 = 5.371920351148152e0;

  if (nrm <= theta9) {
    static const double b3[] = {120.0, 60.0, 12.0, 1.0};
    static const double b5[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
    static const double b7[] = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                25200.0,    1512.0,    56.0,      1.0};
    static const double b9[] = {17643225600.0, 8821612800.0, 2075673600.0,
                                302702400.0,   30270240.0,   2162160.0,
                                110880.0,      3960.0,       90.0,
                                1.0};
    int degree;
    const double* b;
    if (nrm <= theta3) {
      degree = 3;
      b = b3;
    } else if (nrm <= theta5) {
      degree = 5;
      b = b5;
    } else if (nrm <= theta7) {
      degree = 7;
      b = b7;
    } else {
      degree = 9;
      b = b9;
    }
    std::vector<SquareMatrix> even_pows;
    even_pows.push_back(SquareMatrix::identity(n));
    const SquareMatrix m2 = m * m;
    for (int k = 2; k <= degree; k += 2) {
      even_pows.push_back(even_pows.back() * m2);
    }
    SquareMatrix u(n), v(n);
    pade_from_powers(m, b, degree, even_pows, u, v);
    return solve(v - u, v + u);
  }

  int squarings = 0;
  std::frexp(nrm / theta13, &squarings);
  if (squarings < 0) squarings = 0;
  SquareMatrix scaled = m;
  scaled *= std::ldexp(1.0, -squarings);
  SquareMatrix result = pade13(scaled);
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

SquareMatrix expm(const SquareMatrix& m, double t) {
  if (!is_finite(t)) raise(errc::non_finite, "non-finite time");
  return expm_mat(cplx(0.0, -t) * m);
}

}  // namespace spectral
