#include <doctest.h>

#include "oracles.hpp"
#include "spectral/jets.hpp"
#include "spectral/residues.hpp"

using namespace spectral;

namespace {

cplx phase(cplx lambda, double t) { return std::exp(cplx(0.0, -t) * lambda); }

PoleConfiguration random_config(oracles::Rng& rng, std::size_t max_poles,
                                unsigned max_mult) {
  for (;;) {
    const std::size_t n_poles =
        1 + static_cast<std::size_t>(rng.uniform(0.0, 1.0) *
                                     static_cast<double>(max_poles)) %
                max_poles;
    std::vector<cplx> locs;
    for (std::size_t i = 0; i < n_poles; ++i) {
      locs.push_back(cplx(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)));
    }
    // Keep poles apart so the quadrature oracle stays sharp.
    bool ok = true;
    for (std::size_t i = 0; i < locs.size() && ok; ++i) {
      for (std::size_t j = i + 1; j < locs.size(); ++j) {
        if (std::abs(locs[i] - locs[j]) < 0.15) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    PoleConfiguration cfg;
    for (cplx loc : locs) {
      cfg.poles.push_back(
          {loc, 1 + static_cast<unsigned>(rng.uniform(0.0, 1.0) * max_mult) %
                        max_mult});
    }
    return cfg;
  }
}

}  // namespace

TEST_CASE("jet coefficients match hand Leibniz expansions") {
  const cplx lam(0.3, 0.1);
  const cplx mu(-0.5, -0.2);
  const double t = 0.7;
  const cplx mit(0.0, -t);
  const cplx d = lam - mu;

  SUBCASE("double pole against a simple one") {
    const PoleConfiguration cfg{{{lam, 2}, {mu, 1}}};
    const cplx expected = phase(lam, t) * (mit / d - 1.0 / (d * d));
    CHECK(std::abs(residue_exp_kernel(cfg, 0, t) - expected) < 1e-13);
  }
  SUBCASE("triple pole against a simple one") {
    const PoleConfiguration cfg{{{lam, 3}, {mu, 1}}};
    const cplx expected =
        0.5 * phase(lam, t) *
        (mit * mit / d - 2.0 * mit / (d * d) + 2.0 / (d * d * d));
    CHECK(std::abs(residue_exp_kernel(cfg, 0, t) - expected) < 1e-13);
  }
  SUBCASE("double against double") {
    const PoleConfiguration cfg{{{lam, 2}, {mu, 2}}};
    const cplx expected =
        phase(lam, t) * (mit / (d * d) - 2.0 / (d * d * d));
    CHECK(std::abs(residue_exp_kernel(cfg, 0, t) - expected) < 1e-13);
  }
}

TEST_CASE("simple and multiple pole closed forms") {
  const cplx lam(0.4, -0.3);
  const double t = 1.3;

  CHECK(std::abs(residue_exp_kernel({{{lam, 1}}}, 0, t) - phase(lam, t)) <
        1e-14);
  CHECK(std::abs(residue_exp_kernel({{{lam, 2}}}, 0, t) -
                 cplx(0.0, -t) * phase(lam, t)) < 1e-14);

  // Single pole of order m: (-it)^(m-1) e^{-i lam t}/(m-1)!.
  for (unsigned m = 1; m <= 5; ++m) {
    cplx expected = phase(lam, t);
    for (unsigned k = 1; k < m; ++k) {
      expected *= cplx(0.0, -t) / static_cast<double>(k);
    }
    CHECK(std::abs(residue_sum({{{lam, m}}}, t) - expected) < 1e-13);
  }
}

TEST_CASE("second-order pole pair instance, frozen from the oracle") {
  // lambda_s = 0 (order 2), lambda_l = 1 (order 1), t = 1:
  //   d/dz[e^{-izt}(z-1)^{-1}] at 0 = i - 1.
  const PoleConfiguration cfg{{{cplx(0.0), 2}, {cplx(1.0), 1}}};
  const cplx at_s = residue_exp_kernel(cfg, 0, 1.0);
  CHECK(std::abs(at_s - cplx(-1.0, 1.0)) < 1e-13);
  CHECK(std::abs(oracles::contour_residue_sum(cfg, 1.0) -
                 residue_sum(cfg, 1.0)) < 1e-11);
}

TEST_CASE("two-level kernel is the divided difference of the phase") {
  const cplx ls(0.2, -0.4);
  const cplx ll(1.1, 0.3);
  const double t = 2.1;
  const cplx expected = (phase(ls, t) - phase(ll, t)) / (ls - ll);
  CHECK(std::abs(residue_sum({{{ls, 1}, {ll, 1}}}, t) - expected) < 1e-13);
}

TEST_CASE("three-pole instance against the quadrature oracle") {
  const PoleConfiguration cfg{{{cplx(0.0), 2}, {cplx(1.0), 1}, {cplx(-1.0), 1}}};
  CHECK(std::abs(residue_sum(cfg, 0.5) -
                 oracles::contour_residue_sum(cfg, 0.5)) < 1e-10);
}

TEST_CASE("residue sum vanishes at t = 0 when the total order is >= 2") {
  const PoleConfiguration two{{{cplx(0.3, 0.7), 1}, {cplx(-0.9, 0.2), 1}}};
  CHECK(std::abs(residue_sum(two, 0.0)) < 1e-14);
  const PoleConfiguration mixed{{{cplx(0.5), 2}, {cplx(-1.2, 0.4), 2}}};
  CHECK(std::abs(residue_sum(mixed, 0.0)) < 1e-14);
}

TEST_CASE("random configurations match the quadrature oracle") {
  oracles::Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const PoleConfiguration cfg = random_config(rng, 4, 3);
    const double t = rng.uniform(-5.0, 5.0);
    CHECK(std::abs(residue_sum(cfg, t) -
                   oracles::contour_residue_sum(cfg, t)) < 1e-9);
  }
}

TEST_CASE("residue error paths") {
  const PoleConfiguration cfg{{{cplx(0.0), 1}, {cplx(1.0), 1}}};
  CHECK_THROWS_AS(residue_exp_kernel(cfg, 2, 1.0), Error);
  const PoleConfiguration close{{{cplx(0.0), 1}, {cplx(1e-12), 1}}};
  CHECK_THROWS_AS(residue_sum(close, 1.0), Error);
}

TEST_CASE("clustering merges close eigenvalues onto their mean") {
  const auto cfg =
      cluster_poles({cplx(1.0), cplx(1.0 + 1e-12), cplx(2.0)}, 1e-9);
  REQUIRE(cfg.poles.size() == 2);
  CHECK(cfg.poles[0].multiplicity == 2);
  CHECK(std::abs(cfg.poles[0].location - cplx(1.0 + 5e-13)) < 1e-15);
  CHECK(cfg.poles[1].multiplicity == 1);

  const auto apart = cluster_poles({cplx(1.0), cplx(1.0 + 1e-12)}, 0.0);
  CHECK(apart.poles.size() == 2);

  const auto exact = cluster_poles({cplx(3.0), cplx(3.0), cplx(3.0)});
  REQUIRE(exact.poles.size() == 1);
  CHECK(exact.poles[0].multiplicity == 3);
}

TEST_CASE("contour resolvent on closed-form instances") {
  SUBCASE("diagonal") {
    const SquareMatrix h = SquareMatrix::from_rows({{1.0, 0.0}, {0.0, 2.0}});
    const Contour c{cplx(1.5), 2.0, 64};
    const SquareMatrix u = contour_resolvent(h, 1.0, c);
    CHECK(std::abs(u(0, 0) - phase(1.0, 1.0)) < 1e-10);
    CHECK(std::abs(u(1, 1) - phase(2.0, 1.0)) < 1e-10);
    CHECK(std::abs(u(0, 1)) < 1e-12);
  }
  SUBCASE("zero matrix") {
    const SquareMatrix h(2);
    const SquareMatrix u = contour_resolvent(h, 3.7, Contour{cplx(0.0), 1.0, 32});
    CHECK(spectral_norm_diff(u, SquareMatrix::identity(2)) < 1e-12);
  }
  SUBCASE("random 3x3 against expm") {
    oracles::Rng rng(42);
    const SquareMatrix h = rng.diagonalizable(3);
    const Contour c = auto_contour(eig_biorthogonal(h).eigenvalues, 128);
    CHECK(spectral_norm_diff(contour_resolvent(h, 0.3, c), expm(h, 0.3)) <
          1e-9);
  }
}

TEST_CASE("contour quadrature is node-stable") {
  oracles::Rng rng(43);
  const SquareMatrix h = rng.diagonalizable(3);
  Contour c = auto_contour(eig_biorthogonal(h).eigenvalues, 128);
  const SquareMatrix coarse = contour_resolvent(h, 0.8, c);
  c.nodes = 256;
  const SquareMatrix fine = contour_resolvent(h, 0.8, c);
  CHECK(spectral_norm_diff(coarse, fine) < 1e-10);
}

TEST_CASE("pole-on-contour and enclosure guards") {
  const SquareMatrix h = SquareMatrix::from_rows({{1.0, 0.0}, {0.0, 2.0}});
  CHECK_THROWS_AS(contour_resolvent(h, 1.0, Contour{cplx(0.0), 1.0, 64}),
                  Error);  // eigenvalue 1 sits on the circle
  CHECK_THROWS_AS(contour_resolvent(h, 1.0, Contour{cplx(0.0), 1.5, 64}),
                  Error);  // eigenvalue 2 outside
  CHECK_THROWS_AS(contour_resolvent(h, 1.0, Contour{cplx(1.5), 2.0, 4}),
                  Error);  // too few nodes
}

TEST_CASE("convergence bound: zero perturbation and diagonal closed form") {
  const SquareMatrix h0 = SquareMatrix::from_rows({{0.0, 0.0}, {0.0, 1.0}});
  const Contour c{cplx(0.5), 2.0, 256};
  CHECK(series_convergence_bound(h0, SquareMatrix(2), c) == 0.0);

  const double eps = 0.01;
  SquareMatrix v(2);
  v(0, 1) = eps;
  v(1, 0) = eps;
  // ||v G0(z)|| = eps * max(1/|z|, 1/|z-1|); the circle stays 1.5 away.
  const double bound = series_convergence_bound(h0, v, c);
  CHECK(bound <= eps);
  CHECK(std::abs(bound - eps / 1.5) < 1e-6);
}

TEST_CASE("convergence bound is homogeneous in the perturbation") {
  oracles::Rng rng(44);
  const SquareMatrix h0 = rng.diagonalizable(3);
  const SquareMatrix v = rng.box_matrix(3);
  const Contour c = auto_contour(eig_biorthogonal(h0).eigenvalues);
  const double b1 = series_convergence_bound(h0, v, c);
  const double b2 = series_convergence_bound(h0, 2.0 * v, c);
  CHECK(std::abs(b2 - 2.0 * b1) <= 1e-12 * std::abs(b2));
}
