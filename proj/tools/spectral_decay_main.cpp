// spectral-decay: scenario-driven runner for resolvent-series propagators and
// the exponential-factorization pipeline. Emits deterministic CSV + JSON.

#include <CLI11.hpp>
#include <cstdio>
#include <string>
#include <vector>

#include "spectral/format.hpp"
#include "spectral/scenario.hpp"

namespace {

constexpr const char* kColumnsHelp = R"(Scenario kinds and CSV columns:
  propagate     t, u_<i>_<j>_re/im (row-major), abs_u_1_1, err_expm, divergent
  converge      order, term_norm, err_expm, err_contour   (single-t grid)
  kaon          t, u_ss/u_sl/u_ls/u_ll re+im, u2_sl_re/im, err_expm
  bch           lambda, y_re/im, w11..w22 re+im, det_err
  contour-check t, err_contour_vs_expm, bound

Scenario files are JSON; matrices are nested arrays with [re, im] entries,
e.g. "h0": [[[1,0],[0,0]],[[0,0],[2,-0.3]]]. All floats in outputs use 17
significant digits, so repeated runs are byte-identical.

Sweep parameters: t, order, v_scale, p, r, kappa, q_shift, lambda_max.
The sweep CSV prepends 'sweep:<param>' and 'status' columns; failed points
keep one row tagged with the error code.

SPECTRAL_DECAY_THREADS caps sweep/kernel parallelism.

Exit codes: 0 success, 2 parse error, 3 validation error, 4 compute error.)";

int exit_code_for(spectral::errc code) {
  switch (code) {
    case spectral::errc::parse_error:
      return 2;
    case spectral::errc::validation_error:
    case spectral::errc::unknown_parameter:
      return 3;
    default:
      return 4;
  }
}

void print_error_json(const std::string& code, const std::string& message) {
  spectral::JsonWriter w;
  w.begin_object();
  w.key("error");
  w.begin_object();
  w.key_string("code", code);
  w.key_string("message", message);
  w.end_object();
  w.end_object();
  std::puts(w.take().c_str());
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? std::string::npos
                                                    : comma - pos);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (...) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      spectral::raise(spectral::errc::parse_error,
                      "bad sweep value '" + item + "'");
    }
    values.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral-decay: resolvent-series propagators for metastable "
               "two-level systems"};
  app.footer(kColumnsHelp);
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_prefix;
  std::string param;
  std::string values_text;
  std::uint64_t seed = 0;

  CLI::App* run_cmd =
      app.add_subcommand("run", "Execute a scenario and write <prefix>.csv "
                                "and <prefix>.report.json");
  run_cmd->add_option("scenario", scenario_path, "Scenario JSON file")
      ->required();
  run_cmd->add_option("--out", out_prefix, "Override the output path prefix");
  run_cmd->add_option("--seed", seed,
                      "Reserved for randomized self-test scenarios");

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Run a scenario once per parameter value; write one CSV");
  sweep_cmd->add_option("scenario", scenario_path, "Scenario JSON file")
      ->required();
  sweep_cmd->add_option("--param", param, "Scalar scenario field to vary")
      ->required();
  sweep_cmd->add_option("--values", values_text, "Comma-separated values")
      ->required();
  sweep_cmd->add_option("--out", out_prefix, "Override the output path prefix");
  sweep_cmd->add_option("--seed", seed,
                        "Reserved for randomized self-test scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run_cmd->parsed()) {
      spectral::run_scenario(scenario_path, out_prefix);
    } else {
      spectral::sweep(scenario_path, param, parse_values(values_text),
                      out_prefix);
    }
  } catch (const spectral::Error& e) {
    print_error_json(spectral::errc_name(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    print_error_json("ComputeError", e.what());
    return 4;
  }
  return 0;
}
