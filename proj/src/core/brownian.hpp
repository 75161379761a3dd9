#pragma once

#include <cstdint>
#include <vector>

#include "grid.hpp"
#include "numeric.hpp"

namespace levymult {

// Increments of an n-dimensional Brownian motion with E e^{i(zeta, W_t)} = e^{-s t |zeta|^2}.
struct BrownianPath {
  double h = 0.0;
  double s = 0.5;
  Mat increments;  // n x steps, each column ~ N(0, 2 s h I)

  std::size_t steps() const { return static_cast<std::size_t>(increments.cols()); }
};

BrownianPath simulate_brownian(int n, std::size_t steps, std::uint64_t seed, double s = 0.5);

struct BrownianOptions {
  std::size_t paths = 10000;
  std::size_t steps = 2000;
  std::uint64_t seed = 1;
  double s = 0.5;
  std::size_t chunk = 256;
};

struct BrownianEstimate {
  CMat K;
  cplx estimate{0.0, 0.0};          // Euler with `steps` steps
  cplx standard_error{0.0, 0.0};
  cplx fine_estimate{0.0, 0.0};     // same paths, 2 * steps steps
  cplx step_gap{0.0, 0.0};          // estimate - fine_estimate
  double step_gap_error = 0.0;
  bool step_ok = true;               // |step_gap| <= joint standard error of the estimate
};

// Monte-Carlo Λ(f, g) = ∫ E F_1 G_1 dx for the Brownian martingales
// F_t = P_{1-t} f(x + A W_t), G_t = ∫ (K B^T ∇P_{1-v} g(x + B W_v), dW_v).
// One estimate per K on shared paths. Throws StepTooCoarse if halving the
// step changes any estimate by more than its standard error.
std::vector<BrownianEstimate> brownian_pairing(const SampledField& f, const SampledField& g, const Mat& A,
                                               const Mat& B, const std::vector<CMat>& Ks,
                                               const BrownianOptions& opts);

struct QvConvergence {
  std::vector<std::size_t> steps;
  std::vector<double> rms;  // rms over paths of [G,G]_1 minus its time quadrature
  bool decreasing = false;
};

// Discretized [G,G]_1 at x against the quadrature of |K B^T ∇P_{1-v} g(x + B W_v)|^2 2s dv.
QvConvergence brownian_qv_check(const SampledField& g, const Mat& B, const CMat& K, const Vec& x,
                                const std::vector<std::size_t>& steps, std::size_t paths, std::uint64_t seed,
                                double s = 0.5);

}  // namespace levymult
