#pragma once

#include <cstdint>
#include <string>

#include "grid.hpp"
#include "levy.hpp"
#include "symbol.hpp"

namespace levymult {

SampledField apply_multiplier(const SymbolGrid& m, const SampledField& f);

struct PairingResult {
  cplx spatial{0.0, 0.0};   // sum (Mf)(x_j) g(x_j) dx^d
  cplx spectral{0.0, 0.0};  // (2 pi)^{-d} sum m fhat(xi) ghat(-xi) dxi^d
  double relative_gap = 0.0;
};

// Both evaluations of the bilinear form; throws PlancherelMismatch when they
// differ by more than 1e-10 relative to max(|spatial|, |Mf|_2 |g|_2).
PairingResult pairing(const SymbolGrid& m, const SampledField& f, const SampledField& g);

double lp_norm(const SampledField& f, double p);

// Evaluates P_s^A f(x) = (2 pi)^{-d} sum_k fhat_k e^{s Psi(-A^T xi_k)} e^{-i(xi_k, x)} dxi^d
// off the grid. Frequencies with |fhat| below `prune` times the largest are dropped.
class SpectralEvaluator {
 public:
  SpectralEvaluator(const SampledField& f, const Mat& A, const LevyData& data, double prune = 1e-15);

  cplx eval(double s, const Vec& x) const;

  std::size_t size() const { return weights_.size(); }
  const Mat& frequencies() const { return xi_; }        // d x K
  const std::vector<cplx>& weights() const { return weights_; }  // (2 pi)^{-d} dxi^d fhat_k
  const std::vector<cplx>& exponents() const { return psi_; }    // Psi(-A^T xi_k)

 private:
  Mat xi_;
  std::vector<cplx> weights_;
  std::vector<cplx> psi_;
};

cplx semigroup_eval(const SampledField& f, const Mat& A, const LevyData& data, double s, const Vec& x);

struct ProbeOptions {
  int ascent_steps = 200;
  double tolerance = 5e-3;
};

struct ProbeReport {
  double p = 2.0;
  double bound = 1.0;
  double best_ratio = 0.0;
  std::string descriptor;
  int trials = 0;
  std::uint64_t seed = 0;
  bool pass = false;
};

// Lower-bound search for the L^p norm of the grid multiplier.
ProbeReport norm_probe(const SymbolGrid& m, double p, int trials, std::uint64_t seed, const ProbeOptions& opts = {});

}  // namespace levymult
