#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grid.hpp"
#include "levy.hpp"
#include "symbol.hpp"

namespace levymult {

using RowMatrix = std::vector<std::vector<double>>;
using ComplexRowMatrix = std::vector<std::vector<cplx>>;

struct MeasureConfig {
  std::string type = "atoms";  // atoms | radial | stable
  RowMatrix points;            // atoms: one n-vector per atom
  std::vector<double> weights;
  double c = 1.0;              // radial profile c r^{-beta} e^{-lambda r}
  double beta = 1.5;
  double lambda = 0.0;
  RowMatrix directions;
  std::vector<double> direction_weights;
  double r_max = 1e5;
  double alpha = 0.5;          // stable

  bool operator==(const MeasureConfig&) const = default;
};

struct SphereConfig {
  RowMatrix thetas;
  std::vector<double> weights;

  bool operator==(const SphereConfig&) const = default;
};

struct ModulatorConfig {
  std::string type = "constant";  // constant | sign | half_space | ball | phase | table
  cplx value{1.0, 0.0};
  int axis = 0;
  std::vector<double> normal;
  double radius = 1.0;
  int k = 1;
  std::vector<cplx> values;

  bool operator==(const ModulatorConfig&) const = default;
};

struct SymbolConfig {
  // q | integral | limit | gaussian | gaussian_limit | stable | log | riesz
  std::string form = "q";
  double u = 1.0;
  ComplexRowMatrix K;
  double s = 1.0;
  double alpha = 0.5;
  int j = 0;
  int k = 1;
  bool operator==(const SymbolConfig&) const = default;
};

struct BumpConfig {
  std::vector<double> center;
  double width = 1.0;
  cplx amplitude{1.0, 0.0};

  bool operator==(const BumpConfig&) const = default;
};

struct RunConfig {
  int d = 1;
  int n = 1;
  RowMatrix A;
  RowMatrix B;
  std::optional<MeasureConfig> measure;
  SphereConfig sphere;
  std::vector<double> gamma;
  bool compensated = true;
  ModulatorConfig phi;
  ModulatorConfig psi;
  SymbolConfig symbol;
  std::vector<double> L{16.0};
  std::vector<std::int64_t> N{256};
  std::vector<BumpConfig> f;
  std::vector<BumpConfig> g;
  std::string input;  // optional LMFIELD1 file replacing f
  std::vector<double> p{2.0};
  int trials = 500;
  std::size_t paths = 200000;
  std::size_t steps = 2000;
  double eps = 0.0;  // > 0 replaces nu by its truncated atomic approximation
  std::uint64_t seed = 1;
  std::string out = ".";

  bool operator==(const RunConfig&) const = default;
};

// Parses a JSON document, fills defaults and validates. Throws ParseError
// (with line and column) on malformed text, unknown keys or wrong types, and
// ValidationError when the described objects are inconsistent.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string emit_config(const RunConfig& cfg);

// Re-runs validation after programmatic edits.
void validate_config(const RunConfig& cfg);

LevyData build_data(const RunConfig& cfg);
Modulator build_modulator(const RunConfig& cfg);
SymbolSpec build_symbol(const RunConfig& cfg);
GridSpec build_grid(const RunConfig& cfg);
// Sum of Gaussian bumps a e^{-|x - c|^2 / (2 w^2)}.
SampledField build_field(const std::vector<BumpConfig>& bumps, const GridSpec& grid);

bool needs_measure(const SymbolConfig& s);

}  // namespace levymult
