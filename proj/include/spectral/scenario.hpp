#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spectral/bch.hpp"
#include "spectral/format.hpp"
#include "spectral/matrix.hpp"
#include "spectral/residues.hpp"

namespace spectral {

enum class ScenarioKind { propagate, converge, kaon, bch, contour_check };

const char* kind_name(ScenarioKind kind);

struct TGrid {
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 1;

  double at(std::size_t i) const {
    if (count == 1) return start;
    return start + (stop - start) * static_cast<double>(i) /
                       static_cast<double>(count - 1);
  }
};

struct BchBlock {
  BchParams params;
  double lambda_max = 1.0;
  std::size_t steps = 4096;
};

// One experiment definition, loaded from a JSON file. Matrices use the shared
// literal format: nested arrays with [re, im] entries.
struct Scenario {
  ScenarioKind kind = ScenarioKind::propagate;
  SquareMatrix h0;  // dim 0 when absent
  SquareMatrix v;
  TGrid t_grid;
  unsigned order = 0;
  std::optional<BchBlock> bch;
  std::optional<Contour> contour;
  std::string output;
};

struct RunReport {
  Scenario scenario;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> warnings;
  // Extra per-run scalars; values are pre-rendered JSON fragments so insertion
  // order fixes the output bytes.
  std::vector<std::pair<std::string, std::string>> info;
};

// Shared matrix literal parser; rejects ragged or empty literals.
SquareMatrix parse_matrix_text(const std::string& text);

// PoleConfiguration wire format: [[[re, im], multiplicity], ...].
std::string pole_configuration_to_json(const PoleConfiguration& cfg);
PoleConfiguration pole_configuration_from_json(const std::string& text);

Scenario load_scenario(const std::string& path);

// Pure compute step; throws on failure, never touches the filesystem.
RunReport execute_scenario(const Scenario& scenario);

// Writes <prefix>.csv and <prefix>.report.json (LF endings, floats with 17
// significant digits).
void write_report(const RunReport& report, const std::string& prefix);

// load + execute + write. Empty out_override keeps the scenario's own prefix.
RunReport run_scenario(const std::string& path,
                       const std::string& out_override = "");

// Runs the scenario once per value of one scalar parameter (t, order,
// v_scale, lambda_max, or a bch field p/r/kappa/q_shift) and writes a single
// CSV with a leading sweep-value column and a status column. Rows follow the
// input value order; failed points keep their row with the error tag.
void sweep(const std::string& path, const std::string& parameter,
           const std::vector<double>& values,
           const std::string& out_override = "");

}  // namespace spectral
