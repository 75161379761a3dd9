#include "modulator.hpp"

#include <random>
#include <sstream>

#include "error.hpp"

namespace levymult {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

cplx table_value(const TableMod& t, std::optional<std::size_t> atom, const char* who) {
  if (!atom) fail(ErrorCode::ModulatorUndefinedOnSupport, std::string(who) + " table needs an atom index");
  if (*atom >= t.values.size())
    fail(ErrorCode::ModulatorUndefinedOnSupport,
         std::string(who) + " table has " + std::to_string(t.values.size()) + " entries, atom " +
             std::to_string(*atom) + " requested");
  return t.values[*atom];
}

double coordinate(const Eigen::Ref<const Vec>& z, int axis, const char* who) {
  if (axis < 0 || axis >= z.size())
    fail(ErrorCode::ModulatorUndefinedOnSupport, std::string(who) + " sign axis out of range");
  return z[axis];
}

constexpr double kSupSlack = 1e-12;

}  // namespace

cplx eval_phi(const JumpModulator& phi, const Eigen::Ref<const Vec>& z, std::optional<std::size_t> atom) {
  return std::visit(
      overloaded{
          [](const ConstantMod& m) { return m.value; },
          [&](const SignMod& m) { return cplx(sgn(coordinate(z, m.axis, "phi"))); },
          [&](const HalfSpaceMod& m) {
            if (m.normal.size() != z.size())
              fail(ErrorCode::ModulatorUndefinedOnSupport, "half-space normal has wrong dimension");
            return cplx(z.dot(m.normal) > 0.0 ? 1.0 : 0.0);
          },
          [&](const BallMod& m) { return cplx(z.norm() <= m.radius ? 1.0 : 0.0); },
          [&](const PhaseMod& m) {
            const double arg = z.size() >= 2 ? std::atan2(z[1], z[0]) : (z[0] < 0.0 ? kPi : 0.0);
            return std::polar(1.0, m.k * arg);
          },
          [&](const TableMod& m) { return table_value(m, atom, "phi"); },
      },
      phi);
}

cplx eval_psi(const SphereModulator& psi, const Eigen::Ref<const Vec>& theta, std::optional<std::size_t> atom) {
  return std::visit(overloaded{
                        [](const ConstantMod& m) { return m.value; },
                        [&](const SignMod& m) { return cplx(sgn(coordinate(theta, m.axis, "psi"))); },
                        [&](const TableMod& m) { return table_value(m, atom, "psi"); },
                    },
                    psi);
}

bool is_table(const JumpModulator& phi) { return std::holds_alternative<TableMod>(phi); }

bool is_constant(const JumpModulator& phi, cplx* value) {
  if (const auto* c = std::get_if<ConstantMod>(&phi)) {
    if (value) *value = c->value;
    return true;
  }
  return false;
}

bool is_sign(const JumpModulator& phi, int* axis) {
  if (const auto* s = std::get_if<SignMod>(&phi)) {
    if (axis) *axis = s->axis;
    return true;
  }
  return false;
}

std::optional<double> ray_breakpoint(const JumpModulator& phi) {
  if (const auto* b = std::get_if<BallMod>(&phi)) return b->radius;
  return std::nullopt;
}

void validate_modulator(const Modulator& mod, int n) {
  auto check = [](cplx v, const char* who) {
    if (!(std::norm(v) <= 1.0 + kSupSlack))
      fail(ErrorCode::ModulatorExceedsOne, std::string(who) + " value of modulus " + std::to_string(std::abs(v)));
  };
  if (const auto* t = std::get_if<TableMod>(&mod.phi)) {
    for (cplx v : t->values) check(v, "phi");
  } else {
    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> normal;
    for (int s = 0; s < 1024; ++s) {
      Vec z(n);
      for (int i = 0; i < n; ++i) z[i] = normal(rng) * std::exp(normal(rng));
      check(eval_phi(mod.phi, z), "phi");
    }
  }
  if (const auto* t = std::get_if<TableMod>(&mod.psi)) {
    for (cplx v : t->values) check(v, "psi");
  } else {
    std::mt19937_64 rng(0x5eed + 1);
    std::normal_distribution<double> normal;
    for (int s = 0; s < 256; ++s) {
      Vec theta(n);
      for (int i = 0; i < n; ++i) theta[i] = normal(rng);
      if (theta.norm() == 0.0) continue;
      check(eval_psi(mod.psi, theta.normalized()), "psi");
    }
  }
}

std::string describe(const JumpModulator& phi) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const ConstantMod& m) { os << "constant(" << m.value.real() << "," << m.value.imag() << ")"; },
                 [&](const SignMod& m) { os << "sign(axis=" << m.axis << ")"; },
                 [&](const HalfSpaceMod&) { os << "half_space"; },
                 [&](const BallMod& m) { os << "ball(r=" << m.radius << ")"; },
                 [&](const PhaseMod& m) { os << "phase(k=" << m.k << ")"; },
                 [&](const TableMod& m) { os << "table(" << m.values.size() << ")"; },
             },
             phi);
  return os.str();
}

}  // namespace levymult
