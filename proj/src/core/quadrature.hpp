#pragma once

#include <functional>
#include <span>
#include <vector>

#include "numeric.hpp"

namespace levymult {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule. Rules are computed once and cached.
const GaussRule& gauss_legendre(int n);

// Maps the cached rule onto [a, b].
void gauss_legendre_interval(int n, double a, double b, std::vector<double>& x, std::vector<double>& w);

struct QuadResult {
  cplx value{0.0, 0.0};
  double error = 0.0;  // estimated absolute error
  int panels = 0;
};

struct AdaptiveOptions {
  int order = 16;
  double rel_tol = 1e-9;
  double abs_tol = 1e-15;
  int max_depth = 40;
};

// Adaptive bisection with an n-point Gauss-Legendre rule compared against
// the two half-panel sums.
QuadResult integrate_adaptive(const std::function<cplx(double)>& f, double a, double b,
                              const AdaptiveOptions& opts = {});

}  // namespace levymult
