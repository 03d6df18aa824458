#include "spectral/propagator.hpp"

#include <cmath>

#include "spectral/expm.hpp"
#include "spectral/parallel.hpp"

namespace spectral {

namespace {

void validate_problem(const PerturbationProblem& p) {
  if (p.h0.dim() == 0 || p.h0.dim() != p.v.dim()) {
    raise(errc::validation_error, "h0 and v must share a dimension >= 1");
  }
  if (!p.h0.finite() || !p.v.finite()) {
    raise(errc::non_finite, "non-finite problem matrices");
  }
  if (!is_finite(p.t)) raise(errc::non_finite, "non-finite time");
}

// Eigen-coordinate data shared by every term of one expansion.
struct Expansion {
  BiorthogonalSystem sys;
  SquareMatrix v_elems;         // <Psi_i|V|Phi_j>
  std::vector<cplx> inv_overlap;
  double t = 0.0;
  double cluster_tol = kDefaultClusterTol;

  explicit Expansion(const PerturbationProblem& p)
      : sys(eig_biorthogonal(p.h0, p.cluster_tol)),
        t(p.t),
        cluster_tol(p.cluster_tol) {
    const std::size_t d = sys.dim();
    v_elems = SquareMatrix(d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        v_elems(i, j) = inner(sys.left_vectors[i],
                              matvec(p.v, sys.right_vectors[j]));
      }
    }
    inv_overlap.resize(d);
    for (std::size_t i = 0; i < d; ++i) inv_overlap[i] = cplx(1.0) / sys.overlaps[i];
  }

  std::size_t dim() const { return sys.dim(); }

  cplx string_value(unsigned n, std::size_t alpha, std::size_t beta,
                    std::size_t rank) const {
    const std::size_t d = dim();
    std::vector<cplx> lambdas;
    lambdas.reserve(n + 1);
    lambdas.push_back(sys.eigenvalues[alpha]);
    cplx coeff = 1.0;
    std::size_t prev = alpha;
    std::size_t rest = rank;
    // Digits are decoded most-significant first so rank order matches
    // lexicographic order of the index strings.
    for (unsigned pos = 1; pos < n; ++pos) {
      std::size_t weight = 1;
      for (unsigned q = pos; q + 1 < n; ++q) weight *= d;
      const std::size_t mu = rest / weight;
      rest %= weight;
      coeff *= v_elems(prev, mu) * inv_overlap[mu];
      lambdas.push_back(sys.eigenvalues[mu]);
      prev = mu;
    }
    coeff *= v_elems(prev, beta);
    lambdas.push_back(sys.eigenvalues[beta]);
    return coeff * residue_sum(cluster_poles(std::move(lambdas), cluster_tol), t);
  }

  // The n-th term of <Psi_alpha| U |Phi_beta>.
  cplx term(unsigned n, std::size_t alpha, std::size_t beta) const {
    if (n == 0) {
      if (alpha != beta) return 0.0;
      const PoleConfiguration cfg =
          cluster_poles({sys.eigenvalues[beta]}, cluster_tol);
      return sys.overlaps[alpha] * residue_sum(cfg, t);
    }
    std::size_t count = 1;
    for (unsigned q = 1; q < n; ++q) count *= dim();
    auto values = par::indexed_map<cplx>(count, [&](std::size_t rank) {
      return string_value(n, alpha, beta, rank);
    });
    cplx sum = 0.0;
    for (cplx v : values) sum += v;
    return sum;
  }
};

double auto_bound(const PerturbationProblem& p, const BiorthogonalSystem& sys) {
  return series_convergence_bound(p.h0, p.v, auto_contour(sys.eigenvalues));
}

}  // namespace

cplx propagator_element(const PerturbationProblem& p, std::size_t alpha,
                        std::size_t beta, unsigned order, bool* divergent) {
  validate_problem(p);
  Expansion exp(p);
  if (alpha >= exp.dim() || beta >= exp.dim()) {
    raise(errc::index_out_of_range, "eigenindex out of range");
  }
  if (divergent != nullptr) {
    *divergent = auto_bound(p, exp.sys) >= 1.0;
  }
  cplx value = 0.0;
  for (unsigned n = 0; n <= order; ++n) value += exp.term(n, alpha, beta);
  return value;
}

TruncationReport propagator_matrix(const PerturbationProblem& p,
                                   unsigned order) {
  validate_problem(p);
  Expansion exp(p);
  const std::size_t d = exp.dim();

  TruncationReport report;
  report.order = order;
  report.convergence_bound = auto_bound(p, exp.sys);
  report.divergent = report.convergence_bound >= 1.0;

  const SquareMatrix oracle = expm(p.h0 + p.v, p.t);
  SquareMatrix partial(d);
  for (unsigned n = 0; n <= order; ++n) {
    SquareMatrix increment(d);
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        const cplx u_ab = exp.term(n, a, b);
        if (u_ab == cplx(0.0)) continue;
        increment += (u_ab * exp.inv_overlap[a] * exp.inv_overlap[b]) *
                     outer(exp.sys.right_vectors[a], exp.sys.left_vectors[b]);
      }
    }
    partial += increment;
    report.partial_sums.push_back(partial);
    report.term_norms.push_back(spectral_norm(increment));
    report.oracle_error.push_back(spectral_norm_diff(partial, oracle));
  }
  return report;
}

cplx kaon_second_order(const PerturbationProblem& p) {
  validate_problem(p);
  if (p.h0.dim() != 2) {
    raise(errc::validation_error, "kaon_second_order needs dim 2");
  }
  const EigenvaluePair pair = eigenvalues_2x2(p.h0);  // DegenerateSpectrum guard
  Expansion exp(p);

  // Map the sorted eigensystem onto the S/L labels of the minus/plus roots.
  const std::size_t s_idx =
      std::abs(exp.sys.eigenvalues[0] - pair.lambda_s) <=
              std::abs(exp.sys.eigenvalues[1] - pair.lambda_s)
          ? 0
          : 1;
  const std::size_t l_idx = 1 - s_idx;
  const cplx lam_s = exp.sys.eigenvalues[s_idx];
  const cplx lam_l = exp.sys.eigenvalues[l_idx];

  const cplx chi = inner(exp.sys.right_vectors[l_idx],
                         exp.sys.right_vectors[s_idx]);
  const double w = std::sqrt(1.0 - std::norm(chi));

  const cplx v_ss = exp.v_elems(s_idx, s_idx);
  const cplx v_sl = exp.v_elems(s_idx, l_idx);
  const cplx v_ll = exp.v_elems(l_idx, l_idx);

  const PoleConfiguration heavy_s{{{lam_s, 2}, {lam_l, 1}}};
  const PoleConfiguration heavy_l{{{lam_s, 1}, {lam_l, 2}}};
  const cplx bracket_s = residue_sum(heavy_s, p.t);
  const cplx bracket_l = residue_sum(heavy_l, p.t);

  return (v_ss * v_sl * bracket_s + v_sl * v_ll * bracket_l) / w;
}

namespace reference {

cplx propagator_element(const PerturbationProblem& p, std::size_t alpha,
                        std::size_t beta, unsigned order) {
  validate_problem(p);
  const BiorthogonalSystem sys = eig_biorthogonal(p.h0, p.cluster_tol);
  const std::size_t d = sys.dim();
  if (alpha >= d || beta >= d) {
    raise(errc::index_out_of_range, "eigenindex out of range");
  }

  cplx value = 0.0;
  if (alpha == beta) {
    value += sys.overlaps[alpha] *
             residue_sum(cluster_poles({sys.eigenvalues[alpha]}, p.cluster_tol),
                         p.t);
  }
  for (unsigned n = 1; n <= order; ++n) {
    // Odometer over the n-1 intermediate indices, least significant last.
    std::vector<std::size_t> digits(n - 1, 0);
    while (true) {
      cplx coeff = 1.0;
      std::vector<cplx> lambdas{sys.eigenvalues[alpha]};
      std::size_t prev = alpha;
      for (std::size_t mu : digits) {
        coeff *= inner(sys.left_vectors[prev], matvec(p.v, sys.right_vectors[mu]));
        coeff /= sys.overlaps[mu];
        lambdas.push_back(sys.eigenvalues[mu]);
        prev = mu;
      }
      coeff *= inner(sys.left_vectors[prev], matvec(p.v, sys.right_vectors[beta]));
      lambdas.push_back(sys.eigenvalues[beta]);
      value += coeff * residue_sum(cluster_poles(lambdas, p.cluster_tol), p.t);

      std::size_t pos = digits.size();
      while (pos > 0 && ++digits[pos - 1] == d) {
        digits[pos - 1] = 0;
        --pos;
      }
      if (digits.empty() || (pos == 0 && digits[0] == 0)) break;
    }
  }
  return value;
}

}  // namespace reference

}  // namespace spectral
