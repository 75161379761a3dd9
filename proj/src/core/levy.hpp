#pragma once

#include <utility>
#include <variant>

#include "modulator.hpp"
#include "numeric.hpp"

namespace levymult {

// Finite collection of jump atoms: column i of `points` carries mass weights[i].
struct AtomsMeasure {
  Mat points;  // n x M
  Vec weights;

  Eigen::Index size() const { return weights.size(); }
};

// rho(r) = c r^{-beta} e^{-lambda r}; lambda = 0 is the pure power profile.
struct RadialProfile {
  double c = 1.0;
  double beta = 1.5;
  double lambda = 0.0;

  double operator()(double r) const {
    const double v = c * std::pow(r, -beta);
    return lambda > 0.0 ? v * std::exp(-lambda * r) : v;
  }
};

// nu(dz) = sum_j a_j rho(r) dr delta_{theta_j}(dz/|z|)
struct RadialProductMeasure {
  RadialProfile profile;
  Mat directions;  // n x J, unit columns
  Vec dir_weights;
  double r_max = 1e5;      // truncation used when converting to atoms
  int nodes_per_panel = 64;
};

// Isotropic alpha-stable measure with exponent -|zeta|^alpha.
struct ClosedFormStable {
  double alpha = 0.5;
};

using LevyMeasure = std::variant<AtomsMeasure, RadialProductMeasure, ClosedFormStable>;

struct SphericalMeasure {
  Mat thetas;  // n x K, unit columns
  Vec weights;

  Eigen::Index size() const { return weights.size(); }
};

struct LevyData {
  int d = 1;
  int n = 1;
  LevyMeasure nu = AtomsMeasure{};
  SphericalMeasure mu;
  Vec gamma;
  Mat A;
  Mat B;
  // When false the jump integrand is e^{i(zeta,z)} - 1 with no small-jump
  // compensation (finite-variation data).
  bool compensated = true;
};

LevyData make_data(int d, int n, LevyMeasure nu, Mat A, Mat B);

AtomsMeasure atoms_1d(std::initializer_list<std::pair<double, double>> atoms);

// Power profile and directions +-e of the one-dimensional alpha-stable measure.
RadialProductMeasure stable_radial_1d(double alpha, double r_max = 1e5);

double stable_constant(double alpha, int d);

// Throws on the first violated invariant; returns the data unchanged.
const LevyData& validate(const LevyData& data);
void validate(const LevyData& data, const Modulator& mod);

bool is_atoms(const LevyData& data);
const AtomsMeasure& atoms_of(const LevyData& data);

cplx psi(const LevyData& data, const Vec& zeta);
cplx psi_tilde(const LevyData& data, const Modulator& mod, const Vec& zeta);

enum class CrossRoute { Direct, Difference };
cplx cross_form(const LevyData& data, const Modulator& mod, const Vec& zeta1, const Vec& zeta2,
                CrossRoute route = CrossRoute::Direct);

struct ApproxOptions {
  int nodes_per_panel = 64;
  double max_panel_length = 8.0;
  double stable_r_max = 1e5;
};

std::pair<LevyData, Modulator> approximate(const LevyData& data, const Modulator& mod, double eps,
                                           const ApproxOptions& opts = {});

// Pure-jump data (uncompensated, no drift) and the net drift h.
std::pair<LevyData, Vec> drift_reduce(const LevyData& data);

// Total mass of a finite measure.
double total_mass(const AtomsMeasure& atoms);

}  // namespace levymult
