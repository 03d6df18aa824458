#include "spectral/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <set>

#include "spectral/expm.hpp"
#include "spectral/parallel.hpp"
#include "spectral/propagator.hpp"

namespace spectral {

using nlohmann::json;

const char* kind_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::propagate: return "propagate";
    case ScenarioKind::converge: return "converge";
    case ScenarioKind::kaon: return "kaon";
    case ScenarioKind::bch: return "bch";
    case ScenarioKind::contour_check: return "contour-check";
  }
  return "?";
}

namespace {

double number_from(const json& node, const std::string& where) {
  if (!node.is_number()) raise(errc::parse_error, where + ": expected a number");
  return node.get<double>();
}

cplx complex_from(const json& node, const std::string& where) {
  if (node.is_number()) return cplx(node.get<double>(), 0.0);
  if (node.is_array() && node.size() == 2 && node[0].is_number() &&
      node[1].is_number()) {
    return cplx(node[0].get<double>(), node[1].get<double>());
  }
  raise(errc::parse_error, where + ": expected [re, im]");
}

SquareMatrix matrix_from(const json& node, const std::string& where) {
  if (!node.is_array() || node.empty()) {
    raise(errc::parse_error, where + ": expected a nested array literal");
  }
  const std::size_t n = node.size();
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = node[i];
    if (!row.is_array() || row.size() != n) {
      raise(errc::parse_error,
            where + ": ragged or non-square row " + std::to_string(i));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const cplx entry = complex_from(
          row[j], where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
      if (!is_finite(entry)) {
        raise(errc::validation_error, where + ": non-finite entry");
      }
      m(i, j) = entry;
    }
  }
  return m;
}

void reject_unknown_keys(const json& node, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (auto it = node.begin(); it != node.end(); ++it) {
    if (allowed.find(it.key()) == allowed.end()) {
      raise(errc::parse_error, where + ": unknown field '" + it.key() + "'");
    }
  }
}

void validate(const Scenario& s) {
  const bool needs_matrices = s.kind != ScenarioKind::bch;
  if (needs_matrices) {
    if (s.h0.empty() || s.v.empty()) {
      raise(errc::validation_error,
            std::string(kind_name(s.kind)) + " needs h0 and v");
    }
    if (s.h0.dim() != s.v.dim()) {
      raise(errc::validation_error, "h0 and v must have equal dimension");
    }
  }
  if (s.kind == ScenarioKind::kaon && s.h0.dim() != 2) {
    raise(errc::validation_error, "kaon scenarios need 2x2 matrices");
  }
  if (s.kind == ScenarioKind::bch && !s.bch.has_value()) {
    raise(errc::validation_error, "bch scenarios need a bch block");
  }
  if (s.t_grid.count < 1) raise(errc::validation_error, "t_grid count must be >= 1");
  if (!is_finite(s.t_grid.start) || !is_finite(s.t_grid.stop)) {
    raise(errc::validation_error, "t_grid bounds must be finite");
  }
  if (s.kind == ScenarioKind::converge && s.t_grid.count != 1) {
    raise(errc::validation_error, "converge runs at a single t (count must be 1)");
  }
  if (s.contour.has_value()) {
    if (s.kind != ScenarioKind::converge && s.kind != ScenarioKind::contour_check) {
      raise(errc::validation_error,
            std::string("contour override is not used by kind ") +
                kind_name(s.kind));
    }
    if (!is_finite(s.contour->radius) || s.contour->radius <= 0.0) {
      raise(errc::validation_error, "contour radius must be positive");
    }
    if (s.contour->nodes < 8) {
      raise(errc::validation_error, "contour needs at least 8 nodes");
    }
  }
  if (s.bch.has_value()) {
    if (s.bch->lambda_max < 0.0 || !is_finite(s.bch->lambda_max)) {
      raise(errc::validation_error, "lambda_max must be finite and >= 0");
    }
    if (s.bch->steps < 16) {
      raise(errc::validation_error, "bch steps must be >= 16");
    }
  }
  if (s.output.empty()) raise(errc::validation_error, "output prefix is required");
}

Scenario scenario_from_json(const json& root) {
  if (!root.is_object()) raise(errc::parse_error, "scenario must be a JSON object");
  reject_unknown_keys(root,
                      {"kind", "h0", "v", "t_grid", "order", "bch", "contour",
                       "output"},
                      "scenario");

  Scenario s;
  if (!root.contains("kind") || !root["kind"].is_string()) {
    raise(errc::parse_error, "scenario: missing string field 'kind'");
  }
  const std::string kind = root["kind"].get<std::string>();
  if (kind == "propagate") {
    s.kind = ScenarioKind::propagate;
  } else if (kind == "converge") {
    s.kind = ScenarioKind::converge;
  } else if (kind == "kaon") {
    s.kind = ScenarioKind::kaon;
  } else if (kind == "bch") {
    s.kind = ScenarioKind::bch;
  } else if (kind == "contour-check") {
    s.kind = ScenarioKind::contour_check;
  } else {
    raise(errc::parse_error, "scenario: unknown kind '" + kind + "'");
  }

  if (root.contains("h0")) s.h0 = matrix_from(root["h0"], "h0");
  if (root.contains("v")) s.v = matrix_from(root["v"], "v");

  if (root.contains("t_grid")) {
    const json& tg = root["t_grid"];
    if (!tg.is_object()) raise(errc::parse_error, "t_grid: expected an object");
    reject_unknown_keys(tg, {"start", "stop", "count"}, "t_grid");
    if (!tg.contains("start") || !tg.contains("count")) {
      raise(errc::parse_error, "t_grid: needs 'start' and 'count'");
    }
    s.t_grid.start = number_from(tg["start"], "t_grid.start");
    s.t_grid.stop = tg.contains("stop") ? number_from(tg["stop"], "t_grid.stop")
                                        : s.t_grid.start;
    if (!tg["count"].is_number_unsigned()) {
      raise(errc::parse_error, "t_grid.count: expected a nonnegative integer");
    }
    s.t_grid.count = tg["count"].get<std::size_t>();
  }

  if (root.contains("order")) {
    if (!root["order"].is_number_unsigned()) {
      raise(errc::parse_error, "order: expected a nonnegative integer");
    }
    s.order = root["order"].get<unsigned>();
  }

  if (root.contains("bch")) {
    const json& b = root["bch"];
    if (!b.is_object()) raise(errc::parse_error, "bch: expected an object");
    reject_unknown_keys(b, {"p", "r", "kappa", "q_shift", "lambda_max", "steps"},
                        "bch");
    BchBlock block;
    block.params.p = b.contains("p") ? complex_from(b["p"], "bch.p") : cplx(0.0);
    block.params.r = b.contains("r") ? complex_from(b["r"], "bch.r") : cplx(0.0);
    block.params.kappa =
        b.contains("kappa") ? complex_from(b["kappa"], "bch.kappa") : cplx(0.0);
    block.params.q_shift =
        b.contains("q_shift") ? complex_from(b["q_shift"], "bch.q_shift") : cplx(0.0);
    if (b.contains("lambda_max")) {
      block.lambda_max = number_from(b["lambda_max"], "bch.lambda_max");
    }
    if (b.contains("steps")) {
      if (!b["steps"].is_number_unsigned()) {
        raise(errc::parse_error, "bch.steps: expected a nonnegative integer");
      }
      block.steps = b["steps"].get<std::size_t>();
    }
    s.bch = block;
  }

  if (root.contains("contour")) {
    const json& c = root["contour"];
    if (!c.is_object()) raise(errc::parse_error, "contour: expected an object");
    reject_unknown_keys(c, {"center", "radius", "nodes"}, "contour");
    Contour contour;
    contour.center =
        c.contains("center") ? complex_from(c["center"], "contour.center") : cplx(0.0);
    if (!c.contains("radius")) raise(errc::parse_error, "contour: needs 'radius'");
    contour.radius = number_from(c["radius"], "contour.radius");
    if (c.contains("nodes")) {
      if (!c["nodes"].is_number_unsigned()) {
        raise(errc::parse_error, "contour.nodes: expected a nonnegative integer");
      }
      contour.nodes = c["nodes"].get<std::size_t>();
    }
    s.contour = contour;
  }

  if (!root.contains("output") || !root["output"].is_string()) {
    raise(errc::parse_error, "scenario: missing string field 'output'");
  }
  s.output = root["output"].get<std::string>();

  validate(s);
  return s;
}

std::string render_complex(cplx z) {
  JsonWriter w;
  w.begin_array();
  w.value_number(z.real());
  w.value_number(z.imag());
  w.end_array();
  return w.take();
}

std::string render_number(double x) { return fmt_double(x); }

std::vector<std::string> columns_for(const Scenario& s) {
  switch (s.kind) {
    case ScenarioKind::propagate: {
      std::vector<std::string> cols{"t"};
      for (std::size_t i = 1; i <= s.h0.dim(); ++i) {
        for (std::size_t j = 1; j <= s.h0.dim(); ++j) {
          const std::string base =
              "u_" + std::to_string(i) + "_" + std::to_string(j);
          cols.push_back(base + "_re");
          cols.push_back(base + "_im");
        }
      }
      cols.push_back("abs_u_1_1");
      cols.push_back("err_expm");
      cols.push_back("divergent");
      return cols;
    }
    case ScenarioKind::converge:
      return {"order", "term_norm", "err_expm", "err_contour"};
    case ScenarioKind::kaon:
      return {"t",       "u_ss_re", "u_ss_im", "u_sl_re",  "u_sl_im",
              "u_ls_re", "u_ls_im", "u_ll_re", "u_ll_im",  "u2_sl_re",
              "u2_sl_im", "err_expm"};
    case ScenarioKind::bch:
      return {"lambda", "y_re",   "y_im",   "w11_re", "w11_im", "w12_re",
              "w12_im", "w21_re", "w21_im", "w22_re", "w22_im", "det_err"};
    case ScenarioKind::contour_check:
      return {"t", "err_contour_vs_expm", "bound"};
  }
  return {};
}

// ---- kind pipelines ------------------------------------------------------

RunReport execute_propagate(const Scenario& s) {
  RunReport report;
  report.scenario = s;
  report.columns = columns_for(s);
  const std::size_t d = s.h0.dim();

  double bound = 0.0;
  for (std::size_t it = 0; it < s.t_grid.count; ++it) {
    PerturbationProblem problem{s.h0, s.v, s.t_grid.at(it)};
    const TruncationReport tr = propagator_matrix(problem, s.order);
    bound = tr.convergence_bound;
    const SquareMatrix& u = tr.partial_sums.back();

    std::vector<Cell> row;
    row.emplace_back(problem.t);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        row.emplace_back(u(i, j).real());
        row.emplace_back(u(i, j).imag());
      }
    }
    row.emplace_back(std::abs(u(0, 0)));
    row.emplace_back(tr.oracle_error.back());
    row.emplace_back(tr.divergent ? 1.0 : 0.0);
    report.rows.push_back(std::move(row));
    if (tr.divergent && report.warnings.empty()) {
      report.warnings.push_back("Divergent: series_convergence_bound = " +
                                fmt_double(tr.convergence_bound) + " >= 1");
    }
  }
  report.info.emplace_back("convergence_bound", render_number(bound));
  return report;
}

RunReport execute_converge(const Scenario& s) {
  RunReport report;
  report.scenario = s;
  report.columns = columns_for(s);

  PerturbationProblem problem{s.h0, s.v, s.t_grid.at(0)};
  const TruncationReport tr = propagator_matrix(problem, s.order);

  const SquareMatrix h = s.h0 + s.v;
  const Contour contour = s.contour.has_value()
                              ? *s.contour
                              : auto_contour(eig_biorthogonal(h).eigenvalues);
  const SquareMatrix u_contour = contour_resolvent(h, problem.t, contour);

  for (unsigned n = 0; n <= s.order; ++n) {
    std::vector<Cell> row;
    row.emplace_back(static_cast<double>(n));
    row.emplace_back(tr.term_norms[n]);
    row.emplace_back(tr.oracle_error[n]);
    row.emplace_back(spectral_norm_diff(tr.partial_sums[n], u_contour));
    report.rows.push_back(std::move(row));
  }
  if (tr.divergent) {
    report.warnings.push_back("Divergent: series_convergence_bound = " +
                              fmt_double(tr.convergence_bound) + " >= 1");
  }
  report.info.emplace_back("t", render_number(problem.t));
  report.info.emplace_back("convergence_bound",
                           render_number(tr.convergence_bound));
  return report;
}

RunReport execute_kaon(const Scenario& s) {
  RunReport report;
  report.scenario = s;
  report.columns = columns_for(s);

  const EigenvaluePair pair = eigenvalues_2x2(s.h0);
  const BiorthogonalSystem sys = eig_biorthogonal(s.h0);
  const std::size_t s_idx = std::abs(sys.eigenvalues[0] - pair.lambda_s) <=
                                    std::abs(sys.eigenvalues[1] - pair.lambda_s)
                                ? 0
                                : 1;
  const std::size_t l_idx = 1 - s_idx;
  const cplx chi = inner(sys.right_vectors[l_idx], sys.right_vectors[s_idx]);

  bool divergent = false;
  for (std::size_t it = 0; it < s.t_grid.count; ++it) {
    PerturbationProblem problem{s.h0, s.v, s.t_grid.at(it)};
    const std::size_t idx[2] = {s_idx, l_idx};
    cplx elems[2][2];
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        bool flag = false;
        elems[a][b] = propagator_element(problem, idx[a], idx[b], s.order,
                                         (a == 0 && b == 0) ? &flag : nullptr);
        divergent = divergent || flag;
      }
    }
    const cplx u2_sl = kaon_second_order(problem);

    const SquareMatrix oracle = expm(s.h0 + s.v, problem.t);
    double err = 0.0;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const cplx exact = inner(sys.left_vectors[idx[a]],
                                 matvec(oracle, sys.right_vectors[idx[b]]));
        err = std::max(err, std::abs(elems[a][b] - exact));
      }
    }

    std::vector<Cell> row;
    row.emplace_back(problem.t);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        row.emplace_back(elems[a][b].real());
        row.emplace_back(elems[a][b].imag());
      }
    }
    row.emplace_back(u2_sl.real());
    row.emplace_back(u2_sl.imag());
    row.emplace_back(err);
    report.rows.push_back(std::move(row));
  }
  if (divergent) {
    report.warnings.push_back("Divergent: series_convergence_bound >= 1");
  }
  report.info.emplace_back("chi", render_complex(chi));
  report.info.emplace_back("lambda_s", render_complex(pair.lambda_s));
  report.info.emplace_back("lambda_l", render_complex(pair.lambda_l));
  return report;
}

RunReport execute_bch(const Scenario& s) {
  RunReport report;
  report.scenario = s;
  report.columns = columns_for(s);

  const BchBlock& block = *s.bch;
  const WPath path =
      integrate_w_truncated(block.params, block.lambda_max, block.steps);
  const bool has_kappa = block.params.kappa != cplx(0.0);

  for (std::size_t i = 0; i < path.lambdas.size(); ++i) {
    const SquareMatrix& w = path.w_values[i];
    std::vector<Cell> row;
    row.emplace_back(path.lambdas[i]);
    if (has_kappa) {
      const ParabolicCoords pc = parabolic_coords(block.params, path.lambdas[i]);
      row.emplace_back(pc.y.real());
      row.emplace_back(pc.y.imag());
    } else {
      row.emplace_back(std::nullopt);
      row.emplace_back(std::nullopt);
    }
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t c = 0; c < 2; ++c) {
        row.emplace_back(w(r, c).real());
        row.emplace_back(w(r, c).imag());
      }
    }
    row.emplace_back(std::abs(determinant(w) - cplx(1.0)));
    report.rows.push_back(std::move(row));
  }

  if (has_kappa) {
    report.info.emplace_back(
        "theta", render_complex(parabolic_coords(block.params, 0.0).theta));
  }
  if (path.lambdas.size() >= 256) {
    report.info.emplace_back(
        "second_order_residual",
        render_number(second_order_residual(path, block.params)));
  }
  return report;
}

RunReport execute_contour_check(const Scenario& s) {
  RunReport report;
  report.scenario = s;
  report.columns = columns_for(s);

  const SquareMatrix h = s.h0 + s.v;
  const BiorthogonalSystem full_sys = eig_biorthogonal(h);
  Contour contour;
  if (s.contour.has_value()) {
    contour = *s.contour;
  } else {
    // Enclose the perturbed and unperturbed spectra together.
    std::vector<cplx> all = full_sys.eigenvalues;
    const BiorthogonalSystem base_sys = eig_biorthogonal(s.h0);
    all.insert(all.end(), base_sys.eigenvalues.begin(),
               base_sys.eigenvalues.end());
    contour = auto_contour(all);
  }
  const double bound = series_convergence_bound(s.h0, s.v, contour);

  for (std::size_t it = 0; it < s.t_grid.count; ++it) {
    const double t = s.t_grid.at(it);
    const double err =
        spectral_norm_diff(contour_resolvent(h, t, contour), expm(h, t));
    std::vector<Cell> row;
    row.emplace_back(t);
    row.emplace_back(err);
    row.emplace_back(bound);
    report.rows.push_back(std::move(row));
  }

  JsonWriter cw;
  cw.begin_object();
  cw.key_complex("center", contour.center);
  cw.key_number("radius", contour.radius);
  cw.key_int("nodes", static_cast<long long>(contour.nodes));
  cw.end_object();
  report.info.emplace_back("contour", cw.take());
  report.info.emplace_back("bound", render_number(bound));
  report.info.emplace_back(
      "poles", pole_configuration_to_json(cluster_poles(full_sys.eigenvalues)));
  return report;
}

void echo_scenario(JsonWriter& w, const Scenario& s) {
  w.key("scenario");
  w.begin_object();
  w.key_string("kind", kind_name(s.kind));
  if (!s.h0.empty()) w.key_matrix("h0", s.h0);
  if (!s.v.empty()) w.key_matrix("v", s.v);
  w.key("t_grid");
  w.begin_object();
  w.key_number("start", s.t_grid.start);
  w.key_number("stop", s.t_grid.stop);
  w.key_int("count", static_cast<long long>(s.t_grid.count));
  w.end_object();
  w.key_int("order", s.order);
  if (s.bch.has_value()) {
    w.key("bch");
    w.begin_object();
    w.key_complex("p", s.bch->params.p);
    w.key_complex("r", s.bch->params.r);
    w.key_complex("kappa", s.bch->params.kappa);
    w.key_complex("q_shift", s.bch->params.q_shift);
    w.key_number("lambda_max", s.bch->lambda_max);
    w.key_int("steps", static_cast<long long>(s.bch->steps));
    w.end_object();
  }
  if (s.contour.has_value()) {
    w.key("contour");
    w.begin_object();
    w.key_complex("center", s.contour->center);
    w.key_number("radius", s.contour->radius);
    w.key_int("nodes", static_cast<long long>(s.contour->nodes));
    w.end_object();
  }
  w.key_string("output", s.output);
  w.end_object();
}

std::string render_report_json(const RunReport& report) {
  JsonWriter w;
  w.begin_object();
  echo_scenario(w, report.scenario);
  w.key("columns");
  w.begin_array();
  for (const std::string& c : report.columns) w.value_string(c);
  w.end_array();
  w.key("rows");
  w.begin_array();
  for (const auto& row : report.rows) {
    w.begin_array();
    for (const Cell& cell : row) {
      if (cell.has_value()) {
        w.value_number(*cell);
      } else {
        w.value_null();
      }
    }
    w.end_array();
  }
  w.end_array();
  w.key("warnings");
  w.begin_array();
  for (const std::string& warning : report.warnings) w.value_string(warning);
  w.end_array();
  w.key("info");
  w.begin_object();
  for (const auto& [name, fragment] : report.info) {
    w.key(name);
    w.value_raw(fragment);
  }
  w.end_object();
  w.end_object();
  return w.take();
}

void write_file(const std::string& path, const std::string& bytes) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(errc::compute_error, "cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) raise(errc::compute_error, "short write to " + path);
}

std::string render_csv(const std::vector<std::string>& columns,
                       const std::vector<std::vector<Cell>>& rows) {
  std::string out = csv_line(columns);
  for (const auto& row : rows) {
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (const Cell& cell : row) {
      cells.push_back(cell.has_value() ? fmt_double(*cell) : std::string());
    }
    out += csv_line(cells);
  }
  return out;
}

}  // namespace

SquareMatrix parse_matrix_text(const std::string& text) {
  json node;
  try {
    node = json::parse(text);
  } catch (const json::exception& e) {
    raise(errc::parse_error, e.what());
  }
  return matrix_from(node, "matrix");
}

std::string pole_configuration_to_json(const PoleConfiguration& cfg) {
  JsonWriter w;
  w.begin_array();
  for (const Pole& p : cfg.poles) {
    w.begin_array();
    w.begin_array();
    w.value_number(p.location.real());
    w.value_number(p.location.imag());
    w.end_array();
    w.value_int(p.multiplicity);
    w.end_array();
  }
  w.end_array();
  return w.take();
}

PoleConfiguration pole_configuration_from_json(const std::string& text) {
  json node;
  try {
    node = json::parse(text);
  } catch (const json::exception& e) {
    raise(errc::parse_error, e.what());
  }
  if (!node.is_array() || node.empty()) {
    raise(errc::parse_error, "pole configuration: expected [[re,im],m] pairs");
  }
  PoleConfiguration cfg;
  for (const json& item : node) {
    if (!item.is_array() || item.size() != 2 || !item[1].is_number_unsigned()) {
      raise(errc::parse_error, "pole configuration: expected [[re,im],m] pairs");
    }
    const cplx loc = complex_from(item[0], "pole location");
    const unsigned mult = item[1].get<unsigned>();
    if (mult < 1) raise(errc::validation_error, "multiplicity must be >= 1");
    cfg.poles.push_back({loc, mult});
  }
  return cfg;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(errc::parse_error, "cannot open scenario file: " + path);
  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception& e) {
    raise(errc::parse_error, std::string("scenario JSON: ") + e.what());
  }
  return scenario_from_json(root);
}

RunReport execute_scenario(const Scenario& scenario) {
  switch (scenario.kind) {
    case ScenarioKind::propagate: return execute_propagate(scenario);
    case ScenarioKind::converge: return execute_converge(scenario);
    case ScenarioKind::kaon: return execute_kaon(scenario);
    case ScenarioKind::bch: return execute_bch(scenario);
    case ScenarioKind::contour_check: return execute_contour_check(scenario);
  }
  raise(errc::compute_error, "unreachable scenario kind");
}

void write_report(const RunReport& report, const std::string& prefix) {
  write_file(prefix + ".csv", render_csv(report.columns, report.rows));
  write_file(prefix + ".report.json", render_report_json(report));
}

RunReport run_scenario(const std::string& path,
                       const std::string& out_override) {
  const Scenario scenario = load_scenario(path);
  RunReport report = execute_scenario(scenario);
  const std::string prefix =
      out_override.empty() ? scenario.output : out_override;
  write_report(report, prefix);
  return report;
}

namespace {

enum class SweepParam { t, order, v_scale, p, r, kappa, q_shift, lambda_max };

SweepParam sweep_param_from(const std::string& name) {
  if (name == "t") return SweepParam::t;
  if (name == "order") return SweepParam::order;
  if (name == "v_scale") return SweepParam::v_scale;
  if (name == "p") return SweepParam::p;
  if (name == "r") return SweepParam::r;
  if (name == "kappa") return SweepParam::kappa;
  if (name == "q_shift") return SweepParam::q_shift;
  if (name == "lambda_max") return SweepParam::lambda_max;
  raise(errc::unknown_parameter, "unknown sweep parameter '" + name + "'");
}

Scenario apply_sweep_value(Scenario s, SweepParam param, double value) {
  switch (param) {
    case SweepParam::t:
      s.t_grid = TGrid{value, value, 1};
      break;
    case SweepParam::order:
      s.order = static_cast<unsigned>(value);
      break;
    case SweepParam::v_scale:
      s.v *= cplx(value, 0.0);
      break;
    case SweepParam::p:
      s.bch->params.p = cplx(value, 0.0);
      break;
    case SweepParam::r:
      s.bch->params.r = cplx(value, 0.0);
      break;
    case SweepParam::kappa:
      s.bch->params.kappa = cplx(value, 0.0);
      break;
    case SweepParam::q_shift:
      s.bch->params.q_shift = cplx(value, 0.0);
      break;
    case SweepParam::lambda_max:
      s.bch->lambda_max = value;
      break;
  }
  return s;
}

}  // namespace

void sweep(const std::string& path, const std::string& parameter,
           const std::vector<double>& values, const std::string& out_override) {
  const Scenario base = load_scenario(path);
  const SweepParam param = sweep_param_from(parameter);

  const bool bch_param = param == SweepParam::p || param == SweepParam::r ||
                         param == SweepParam::kappa ||
                         param == SweepParam::q_shift ||
                         param == SweepParam::lambda_max;
  if (bch_param && !base.bch.has_value()) {
    raise(errc::validation_error,
          "sweep parameter '" + parameter + "' needs a bch block");
  }
  if (param == SweepParam::v_scale && base.v.empty()) {
    raise(errc::validation_error, "sweep parameter 'v_scale' needs matrix v");
  }
  if (values.empty()) raise(errc::validation_error, "sweep needs values");
  for (double v : values) {
    if (!is_finite(v)) raise(errc::validation_error, "non-finite sweep value");
    if (param == SweepParam::order &&
        (v < 0.0 || v != std::floor(v) || v > 64.0)) {
      raise(errc::validation_error,
            "order sweep values must be integers in [0, 64]");
    }
    if (param == SweepParam::lambda_max && v < 0.0) {
      raise(errc::validation_error, "lambda_max sweep values must be >= 0");
    }
  }

  struct PointResult {
    std::string status = "ok";
    std::vector<std::vector<Cell>> rows;
  };

  // Points run concurrently; assembly below follows input order.
  auto results =
      par::indexed_map<PointResult>(values.size(), [&](std::size_t i) {
        PointResult result;
        try {
          result.rows =
              execute_scenario(apply_sweep_value(base, param, values[i])).rows;
        } catch (const Error& e) {
          result.status = errc_name(e.code());
        }
        return result;
      });

  std::vector<std::string> columns;
  columns.push_back("sweep:" + parameter);
  columns.push_back("status");
  const std::vector<std::string> kind_columns = columns_for(base);
  columns.insert(columns.end(), kind_columns.begin(), kind_columns.end());

  std::string csv = csv_line(columns);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const PointResult& result = results[i];
    if (result.status == "ok") {
      for (const auto& row : result.rows) {
        std::vector<std::string> cells{fmt_double(values[i]), "ok"};
        for (const Cell& cell : row) {
          cells.push_back(cell.has_value() ? fmt_double(*cell) : std::string());
        }
        csv += csv_line(cells);
      }
    } else {
      std::vector<std::string> cells{fmt_double(values[i]), result.status};
      cells.resize(columns.size());
      csv += csv_line(cells);
    }
  }

  const std::string prefix = out_override.empty() ? base.output : out_override;
  write_file(prefix + ".csv", csv);
}

}  // namespace spectral
