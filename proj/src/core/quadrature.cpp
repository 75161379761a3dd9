#include "quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "error.hpp"

namespace levymult {
namespace {

GaussRule compute_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    // One more evaluation at the converged root for the weight.
    double p1 = 1.0, p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    pp = n * (z * p1 - p2) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "Gauss-Legendre order must be positive");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(compute_rule(n));
  return *slot;
}

void gauss_legendre_interval(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
  const GaussRule& rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    x[i] = mid + half * rule.nodes[i];
    w[i] = half * rule.weights[i];
  }
}

namespace {

cplx panel_sum(const std::function<cplx(double)>& f, const GaussRule& rule, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * s;
}

void refine(const std::function<cplx(double)>& f, const GaussRule& rule, double a, double b, cplx whole,
            int depth, const AdaptiveOptions& opts, QuadResult& out) {
  const double m = 0.5 * (a + b);
  const cplx left = panel_sum(f, rule, a, m);
  const cplx right = panel_sum(f, rule, m, b);
  const cplx both = left + right;
  const double err = std::abs(both - whole);
  if (err <= std::max(opts.rel_tol * std::abs(both), opts.abs_tol) || depth >= opts.max_depth) {
    out.value += both;
    out.error += err;
    out.panels += 2;
    return;
  }
  refine(f, rule, a, m, left, depth + 1, opts, out);
  refine(f, rule, m, b, right, depth + 1, opts, out);
}

}  // namespace

QuadResult integrate_adaptive(const std::function<cplx(double)>& f, double a, double b,
                              const AdaptiveOptions& opts) {
  QuadResult out;
  if (b <= a) return out;
  const GaussRule& rule = gauss_legendre(opts.order);
  refine(f, rule, a, b, panel_sum(f, rule, a, b), 0, opts, out);
  return out;
}

}  // namespace levymult
