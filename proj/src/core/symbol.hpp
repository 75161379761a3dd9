#pragma once

#include <string>
#include <variant>

#include "grid.hpp"
#include "levy.hpp"

namespace levymult {

cplx q_func(cplx z);

// u scales both exponents (u Psi, u Psi~).
cplx symbol_q(const LevyData& data, const Modulator& mod, const Vec& xi, double u = 1.0);
cplx symbol_integral(const LevyData& data, const Modulator& mod, const Vec& xi);
cplx symbol_limit(const LevyData& data, const Modulator& mod, const Vec& xi);
// s is the variance scale: s = 1 gives e^{-|a-b|^2}, s = 1/2 gives e^{-|a-b|^2/2}.
cplx symbol_gaussian(const Mat& A, const Mat& B, const CMat& K, const Vec& xi, double s = 1.0);
cplx symbol_gaussian_limit(const Mat& A, const CMat& K, const Vec& xi);
cplx symbol_stable(double alpha, double xi);
double preset_log_symbol(int j, int d, const Vec& xi);
double preset_riesz_symbol(int j, int k, const Vec& xi);

// Throws KNormExceedsOne unless the largest singular value of K is at most 1 + 1e-12.
void check_k_norm(const CMat& K);

struct QForm {
  LevyData data;
  Modulator mod;
  double u = 1.0;
};
struct IntegralForm {
  LevyData data;
  Modulator mod;
};
struct LimitForm {
  LevyData data;
  Modulator mod;
};
struct GaussianForm {
  Mat A, B;
  CMat K;
  double s = 1.0;
};
struct GaussianLimitForm {
  Mat A;
  CMat K;
};
struct StableClosedForm {
  double alpha = 0.5;
};
enum class PresetId { Log, Riesz };
struct NamedPreset {
  PresetId id = PresetId::Riesz;
  int d = 2;
  int j = 0;
  int k = 1;
};

using SymbolSpec =
    std::variant<QForm, IntegralForm, LimitForm, GaussianForm, GaussianLimitForm, StableClosedForm, NamedPreset>;

std::string variant_name(const SymbolSpec& spec);
int symbol_dimension(const SymbolSpec& spec);
void validate_symbol(const SymbolSpec& spec);
cplx evaluate(const SymbolSpec& spec, const Vec& xi);

struct SymbolGrid {
  GridSpec grid;
  std::vector<cplx> values;  // natural frequency order
  double max_abs = 0.0;
  std::size_t argmax = 0;
};

// Tabulates m on the frequency grid. Limit-type symbols are set to 0 where
// their frequency vector vanishes; the log preset takes its coordinate-wise
// limit at zero coordinates. Throws SymbolBoundViolated when |m| > 1 + 1e-9
// unless enforce_bound is false.
SymbolGrid evaluate_grid(const SymbolSpec& spec, const GridSpec& grid, bool enforce_bound = true);

SymbolGrid constant_symbol(const GridSpec& grid, cplx value);

inline constexpr double kSymbolBoundSlack = 1e-9;

}  // namespace levymult
