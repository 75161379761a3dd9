#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "numeric.hpp"

namespace levymult {

// Presets for the jump modulator phi on R^n and the sphere modulator psi.
struct ConstantMod {
  cplx value{1.0, 0.0};
};
// sgn(z_axis)
struct SignMod {
  int axis = 0;
};
// 1 if (z, normal) > 0, else 0
struct HalfSpaceMod {
  Vec normal;
};
// 1 if |z| <= radius, else 0
struct BallMod {
  double radius = 1.0;
};
// exp(i k arg(z_0 + i z_1)); for n = 1 the argument is 0 or pi.
struct PhaseMod {
  int k = 1;
};
// One value per atom of an Atoms measure (or per sphere atom for psi).
struct TableMod {
  std::vector<cplx> values;
};

using JumpModulator = std::variant<ConstantMod, SignMod, HalfSpaceMod, BallMod, PhaseMod, TableMod>;
using SphereModulator = std::variant<ConstantMod, SignMod, TableMod>;

struct Modulator {
  JumpModulator phi = ConstantMod{};
  SphereModulator psi = ConstantMod{};

  static Modulator identity() { return {}; }
  static Modulator constant(cplx c) { return {ConstantMod{c}, ConstantMod{c}}; }
};

// phi at point z; `atom` is the atom index when z is an atom of an Atoms
// measure. Table presets require the index.
cplx eval_phi(const JumpModulator& phi, const Eigen::Ref<const Vec>& z, std::optional<std::size_t> atom = std::nullopt);
cplx eval_psi(const SphereModulator& psi, const Eigen::Ref<const Vec>& theta, std::optional<std::size_t> atom = std::nullopt);

bool is_table(const JumpModulator& phi);
bool is_constant(const JumpModulator& phi, cplx* value = nullptr);
bool is_sign(const JumpModulator& phi, int* axis = nullptr);

// Radius at which phi may jump along every ray (Ball preset), if any.
std::optional<double> ray_breakpoint(const JumpModulator& phi);

// Throws ModulatorExceedsOne when sup|phi| or sup|psi| exceeds one. Presets are
// sampled over a deterministic validation set of dimension n; tables are
// inspected directly.
void validate_modulator(const Modulator& mod, int n);

std::string describe(const JumpModulator& phi);

}  // namespace levymult
