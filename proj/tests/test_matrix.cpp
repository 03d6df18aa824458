#include <doctest.h>

#include "oracles.hpp"
#include "spectral/format.hpp"
#include "spectral/matrix.hpp"
#include "spectral/scenario.hpp"

using namespace spectral;

TEST_CASE("matrix construction guards") {
  CHECK_THROWS_AS(SquareMatrix(2, std::vector<cplx>(3)), Error);
  CHECK_THROWS_AS(SquareMatrix::from_rows({{1.0, 2.0}, {3.0}}), Error);
  const SquareMatrix id = SquareMatrix::identity(3);
  CHECK(id(0, 0) == cplx(1.0));
  CHECK(id(0, 1) == cplx(0.0));
}

TEST_CASE("product, trace, commutator on a hand instance") {
  const SquareMatrix a = SquareMatrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
  const SquareMatrix b =
      SquareMatrix::from_rows({{0.0, 1.0}, {cplx(0.0, 1.0), 0.0}});
  const SquareMatrix ab = a * b;
  CHECK(std::abs(ab(0, 0) - cplx(0.0, 2.0)) < 1e-15);
  CHECK(std::abs(ab(0, 1) - cplx(1.0)) < 1e-15);
  CHECK(std::abs(trace(a) - cplx(5.0)) < 1e-15);
  const SquareMatrix comm = commutator(a, b);
  CHECK(std::abs(comm(0, 0) - (ab(0, 0) - (b * a)(0, 0))) < 1e-15);
}

TEST_CASE("inverse and solve round-trip") {
  oracles::Rng rng(11);
  const SquareMatrix m = rng.diagonalizable(4);
  const SquareMatrix minv = inverse(m);
  CHECK(spectral_norm_diff(m * minv, SquareMatrix::identity(4)) < 1e-12);
  CHECK_THROWS_AS(inverse(SquareMatrix(2)), Error);
}

TEST_CASE("spectral norm matches the Frobenius bound") {
  oracles::Rng rng(12);
  for (int i = 0; i < 20; ++i) {
    const SquareMatrix m = rng.box_matrix(3);
    const double s = spectral_norm(m);
    const double f = frobenius_norm(m);
    CHECK(s <= f + 1e-12);
    CHECK(f <= std::sqrt(3.0) * s + 1e-12);
  }
}

TEST_CASE("matrix literal parsing") {
  const SquareMatrix m =
      parse_matrix_text("[[[1,0],[0,0]],[[0,0],[2,-0.3]]]");
  CHECK(m.dim() == 2);
  CHECK(m(1, 1) == cplx(2.0, -0.3));

  CHECK_THROWS_AS(parse_matrix_text("[[[1,0]],[[0,0],[1,0]]]"), Error);  // ragged
  CHECK_THROWS_AS(parse_matrix_text("[]"), Error);
  CHECK_THROWS_AS(parse_matrix_text("[[[1,0,3]]]"), Error);
  CHECK_THROWS_AS(parse_matrix_text("not json"), Error);
}

TEST_CASE("float17 formatting round-trips exactly") {
  oracles::Rng rng(13);
  for (int i = 0; i < 2000; ++i) {
    double x = rng.uniform(-1.0, 1.0) * std::pow(10.0, rng.uniform(-12.0, 12.0));
    const std::string text = fmt_double(x);
    CHECK(std::stod(text) == x);
    CHECK(text.find('E') == std::string::npos);
  }
  CHECK(fmt_double(1.0) == "1");
}

TEST_CASE("pole configuration wire format round-trips") {
  PoleConfiguration cfg{{{cplx(0.25, -1.5), 2}, {cplx(2.0, 0.0), 1}}};
  const std::string text = pole_configuration_to_json(cfg);
  const PoleConfiguration back = pole_configuration_from_json(text);
  REQUIRE(back.poles.size() == 2);
  CHECK(back.poles[0].location == cfg.poles[0].location);
  CHECK(back.poles[0].multiplicity == 2);
  CHECK(back.poles[1].multiplicity == 1);
  CHECK_THROWS_AS(pole_configuration_from_json("[[1,2,3]]"), Error);
}
