#include <doctest.h>

#include "oracles.hpp"
#include "spectral/expm.hpp"

using namespace spectral;

TEST_CASE("diagonal exponential at t = pi") {
  const SquareMatrix m = SquareMatrix::from_rows({{1.0, 0.0}, {0.0, 2.0}});
  const SquareMatrix u = expm(m, M_PI);
  CHECK(std::abs(u(0, 0) - cplx(-1.0)) < 1e-14);
  CHECK(std::abs(u(1, 1) - cplx(1.0)) < 1e-13);
  CHECK(std::abs(u(0, 1)) < 1e-15);
}

TEST_CASE("nilpotent series terminates") {
  const SquareMatrix m = SquareMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});
  const SquareMatrix u = expm(m, 1.0);
  CHECK(std::abs(u(0, 0) - cplx(1.0)) < 1e-15);
  CHECK(std::abs(u(0, 1) - cplx(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(u(1, 0)) < 1e-15);
}

TEST_CASE("agrees with the spectral-sum route on random matrices") {
  oracles::Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const SquareMatrix m = rng.diagonalizable(2 + trial % 3);
    const double t = rng.uniform(-0.7, 0.7);
    CHECK(spectral_norm_diff(expm(m, t), oracles::eig_expm(m, t)) < 1e-10);
  }
}

TEST_CASE("group law") {
  oracles::Rng rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const SquareMatrix m = rng.box_matrix(3);
    const double t1 = rng.uniform(-1.5, 1.5);
    const double t2 = rng.uniform(-1.5, 1.5);
    CHECK(spectral_norm_diff(expm(m, t1 + t2), expm(m, t1) * expm(m, t2)) <
          1e-10);
  }
}

TEST_CASE("large argument stays on the accuracy contract") {
  // ||t m|| up to 50 exercises the squaring phase.
  oracles::Rng rng(33);
  const SquareMatrix m = rng.diagonalizable(3);
  const double scale = 48.0 / spectral_norm(m);
  const SquareMatrix u = expm(m, scale);
  const SquareMatrix v = oracles::eig_expm(m, scale);
  CHECK(spectral_norm_diff(u, v) / spectral_norm(v) < 1e-10);
}

TEST_CASE("rejects non-finite input") {
  SquareMatrix m(1);
  m(0, 0) = cplx(0.0, std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(expm(m, 1.0), Error);
  CHECK_THROWS_AS(expm(SquareMatrix::identity(1),
                       std::numeric_limits<double>::quiet_NaN()),
                  Error);
}
