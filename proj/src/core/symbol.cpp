#include "symbol.hpp"

#include <Eigen/SVD>

#include "error.hpp"
#include "parallel.hpp"

namespace levymult {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_xi(const Vec& xi, int d) {
  if (xi.size() != d)
    fail(ErrorCode::ShapeMismatch, "xi has length " + std::to_string(xi.size()) + ", expected " + std::to_string(d));
}

cplx bilinear(const Vec& a, const CMat& K, const Vec& b) {
  return (a.cast<cplx>().transpose() * (K * b.cast<cplx>()))(0);
}

void require_shape(const Mat& M, Eigen::Index rows, Eigen::Index cols, const char* what) {
  if (M.rows() != rows || M.cols() != cols)
    fail(ErrorCode::ShapeMismatch, std::string(what) + " must be " + std::to_string(rows) + "x" +
                                       std::to_string(cols));
}

constexpr double kStableDispatch = 1e-6;
constexpr double kStableCrossCheck = 1e-3;

cplx stable_limit_form(double xi) { return kI * (4.0 * std::log(2.0) / kPi) * xi * std::exp(-2.0 * std::abs(xi)); }

cplx stable_tan_form(double alpha, double xi) {
  const double ax = std::abs(xi);
  return kI * std::tan(0.5 * kPi * alpha) * sgn(xi) *
         (std::exp(-std::pow(2.0 * ax, alpha)) - std::exp(-2.0 * std::pow(ax, alpha)));
}

}  // namespace

cplx q_func(cplx z) {
  if (std::abs(z) < 1e-3) return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0)));
  return expm1c(z) / z;
}

cplx symbol_q(const LevyData& data, const Modulator& mod, const Vec& xi, double u) {
  require_xi(xi, data.d);
  const Vec a = data.A.transpose() * xi;
  const Vec b = data.B.transpose() * xi;
  const Vec ma = -a;
  const Vec diff = b - a;
  const cplx psi_b = psi(data, b), psi_ma = psi(data, ma), psi_diff = psi(data, diff);
  const cplx bracket = psi_tilde(data, mod, diff) - psi_tilde(data, mod, b) - psi_tilde(data, mod, ma);
  if (bracket == 0.0) return 0.0;
  const cplx base = psi_b + psi_ma, w = psi_diff - base;
  if (std::abs(u * w) > 1.0) return bracket * (std::exp(u * psi_diff) - std::exp(u * base)) / w;
  return std::exp(u * base) * (u * bracket) * q_func(u * w);
}

cplx symbol_integral(const LevyData& data, const Modulator& mod, const Vec& xi) {
  require_xi(xi, data.d);
  const Vec a = data.A.transpose() * xi;
  const Vec b = data.B.transpose() * xi;
  const Vec ma = -a;
  const cplx num = cross_form(data, mod, b, ma, CrossRoute::Direct);
  const cplx den = cross_form(data, Modulator::identity(), b, ma, CrossRoute::Direct);
  const cplx base = psi(data, b) + psi(data, ma);
  if (den == 0.0 || std::abs(den) < 1e-12 * (1.0 + std::abs(num))) return std::exp(base) * num;
  return (std::exp(psi(data, b - a)) - std::exp(base)) * num / den;
}

cplx symbol_limit(const LevyData& data, const Modulator& mod, const Vec& xi) {
  require_xi(xi, data.d);
  if (data.A != data.B) fail(ErrorCode::RequiresEqualMatrices, "limit symbol needs A = B");
  const Vec a = data.A.transpose() * xi;
  const cplx pa = psi(data, a);
  if (!(pa.real() < 0.0)) fail(ErrorCode::DegenerateDenominator, "Re Psi(A^T xi) must be negative");
  const Vec ma = -a;
  return (psi_tilde(data, mod, a) + psi_tilde(data, mod, ma)) / (pa + psi(data, ma));
}

void check_k_norm(const CMat& K) {
  if (K.rows() != K.cols()) fail(ErrorCode::ShapeMismatch, "K must be square");
  if (K.size() == 0) return;
  const double top = Eigen::JacobiSVD<CMat>(K).singularValues()(0);
  if (top > 1.0 + 1e-12)
    fail(ErrorCode::KNormExceedsOne, "largest singular value of K is " + std::to_string(top));
}

cplx symbol_gaussian(const Mat& A, const Mat& B, const CMat& K, const Vec& xi, double s) {
  require_shape(B, A.rows(), A.cols(), "B");
  if (K.rows() != A.cols() || K.cols() != A.cols()) fail(ErrorCode::ShapeMismatch, "K must be n x n");
  require_xi(xi, static_cast<int>(A.rows()));
  const Vec a = A.transpose() * xi;
  const Vec b = B.transpose() * xi;
  const double na = a.norm(), nb = b.norm(), ab = a.dot(b);
  const cplx aKb = bilinear(a, K, b);
  const double e2 = std::exp(-s * (na * na + nb * nb));
  if (na == 0.0 || nb == 0.0 || std::abs(ab) < 1e-14 * na * nb) return e2 * (2.0 * s) * aKb;
  // e^{-s|a-b|^2} - e2, factored so that neither exponential overflows.
  const double x = 2.0 * s * ab;
  const double bracket = x > 0.0 ? -std::exp(-s * (a - b).squaredNorm()) * std::expm1(-x) : e2 * std::expm1(x);
  return bracket * aKb / ab;
}

cplx symbol_gaussian_limit(const Mat& A, const CMat& K, const Vec& xi) {
  if (K.rows() != A.cols() || K.cols() != A.cols()) fail(ErrorCode::ShapeMismatch, "K must be n x n");
  require_xi(xi, static_cast<int>(A.rows()));
  const Vec a = A.transpose() * xi;
  const double aa = a.squaredNorm();
  if (aa == 0.0) fail(ErrorCode::ZeroFrequencyVector, "A^T xi vanishes");
  return bilinear(a, K, a) / aa;
}

cplx symbol_stable(double alpha, double xi) {
  if (!(alpha > 0.0 && alpha < 2.0)) fail(ErrorCode::AlphaOutOfRange, "alpha must lie in (0, 2)");
  const double gap = std::abs(alpha - 1.0);
  if (gap < kStableDispatch) return stable_limit_form(xi);
  const cplx m = stable_tan_form(alpha, xi);
  if (gap <= kStableCrossCheck * (1.0 + 1e-9) && xi != 0.0) {
    const cplx lim = stable_limit_form(xi);
    const double rel = std::abs(m - lim) / std::abs(lim);
    if (rel > 1e-4)
      warn("stable symbol at alpha=" + std::to_string(alpha) + ", xi=" + std::to_string(xi) +
           " differs from the alpha=1 limit by relative " + std::to_string(rel));
  }
  return m;
}

double preset_log_symbol(int j, int d, const Vec& xi) {
  require_xi(xi, d);
  if (j < 0 || j >= d) fail(ErrorCode::InvalidArgument, "log preset axis out of range");
  double total = 0.0, own = 0.0;
  for (int k = 0; k < d; ++k) {
    if (xi[k] == 0.0) fail(ErrorCode::ZeroCoordinate, "log preset needs nonzero coordinates");
    const double v = std::log1p(1.0 / (xi[k] * xi[k]));
    total += v;
    if (k == j) own = v;
  }
  return own / total;
}

double preset_riesz_symbol(int j, int k, const Vec& xi) {
  const int d = static_cast<int>(xi.size());
  if (j < 0 || k < 0 || j >= d || k >= d || j == k)
    fail(ErrorCode::InvalidArgument, "Riesz preset needs distinct axes j, k < d");
  const double nn = xi.squaredNorm();
  if (nn == 0.0) fail(ErrorCode::ZeroFrequencyVector, "Riesz symbol undefined at xi = 0");
  return -2.0 * xi[j] * xi[k] / nn;
}

std::string variant_name(const SymbolSpec& spec) {
  return std::visit(overloaded{
                        [](const QForm&) { return std::string("q"); },
                        [](const IntegralForm&) { return std::string("integral"); },
                        [](const LimitForm&) { return std::string("limit"); },
                        [](const GaussianForm&) { return std::string("gaussian"); },
                        [](const GaussianLimitForm&) { return std::string("gaussian_limit"); },
                        [](const StableClosedForm&) { return std::string("stable"); },
                        [](const NamedPreset& p) {
                          return std::string(p.id == PresetId::Log ? "preset_log" : "preset_riesz");
                        },
                    },
                    spec);
}

int symbol_dimension(const SymbolSpec& spec) {
  return std::visit(overloaded{
                        [](const QForm& s) { return s.data.d; },
                        [](const IntegralForm& s) { return s.data.d; },
                        [](const LimitForm& s) { return s.data.d; },
                        [](const GaussianForm& s) { return static_cast<int>(s.A.rows()); },
                        [](const GaussianLimitForm& s) { return static_cast<int>(s.A.rows()); },
                        [](const StableClosedForm&) { return 1; },
                        [](const NamedPreset& p) { return p.d; },
                    },
                    spec);
}

void validate_symbol(const SymbolSpec& spec) {
  std::visit(overloaded{
                 [](const QForm& s) {
                   validate(s.data, s.mod);
                   if (!(s.u > 0.0)) fail(ErrorCode::ValidationError, "u must be positive");
                 },
                 [](const IntegralForm& s) { validate(s.data, s.mod); },
                 [](const LimitForm& s) {
                   validate(s.data, s.mod);
                   if (s.data.A != s.data.B) fail(ErrorCode::RequiresEqualMatrices, "limit symbol needs A = B");
                 },
                 [](const GaussianForm& s) {
                   require_shape(s.B, s.A.rows(), s.A.cols(), "B");
                   check_k_norm(s.K);
                   if (s.K.rows() != s.A.cols()) fail(ErrorCode::ShapeMismatch, "K must be n x n");
                   if (!(s.s > 0.0)) fail(ErrorCode::ValidationError, "variance scale must be positive");
                 },
                 [](const GaussianLimitForm& s) {
                   check_k_norm(s.K);
                   if (s.K.rows() != s.A.cols()) fail(ErrorCode::ShapeMismatch, "K must be n x n");
                 },
                 [](const StableClosedForm& s) {
                   if (!(s.alpha > 0.0 && s.alpha < 2.0))
                     fail(ErrorCode::AlphaOutOfRange, "alpha must lie in (0, 2)");
                 },
                 [](const NamedPreset& p) {
                   if (p.d < 1) fail(ErrorCode::ValidationError, "preset dimension must be positive");
                   if (p.j < 0 || p.j >= p.d) fail(ErrorCode::InvalidArgument, "preset axis j out of range");
                   if (p.id == PresetId::Riesz && (p.k < 0 || p.k >= p.d || p.k == p.j))
                     fail(ErrorCode::InvalidArgument, "Riesz preset needs distinct axes j, k < d");
                 },
             },
             spec);
}

cplx evaluate(const SymbolSpec& spec, const Vec& xi) {
  return std::visit(overloaded{
                        [&](const QForm& s) { return symbol_q(s.data, s.mod, xi, s.u); },
                        [&](const IntegralForm& s) { return symbol_integral(s.data, s.mod, xi); },
                        [&](const LimitForm& s) { return symbol_limit(s.data, s.mod, xi); },
                        [&](const GaussianForm& s) { return symbol_gaussian(s.A, s.B, s.K, xi, s.s); },
                        [&](const GaussianLimitForm& s) { return symbol_gaussian_limit(s.A, s.K, xi); },
                        [&](const StableClosedForm& s) {
                          require_xi(xi, 1);
                          return symbol_stable(s.alpha, xi[0]);
                        },
                        [&](const NamedPreset& p) {
                          return cplx(p.id == PresetId::Log ? preset_log_symbol(p.j, p.d, xi)
                                                            : preset_riesz_symbol(p.j, p.k, xi));
                        },
                    },
                    spec);
}

namespace {

// Grid value with the conventions for points where a formula is undefined.
cplx grid_value(const SymbolSpec& spec, const Vec& xi) {
  if (const auto* s = std::get_if<LimitForm>(&spec)) {
    if ((s->data.A.transpose() * xi).squaredNorm() == 0.0) return 0.0;
  } else if (const auto* s = std::get_if<GaussianLimitForm>(&spec)) {
    if ((s->A.transpose() * xi).squaredNorm() == 0.0) return 0.0;
  } else if (const auto* p = std::get_if<NamedPreset>(&spec)) {
    if (p->id == PresetId::Riesz && xi.squaredNorm() == 0.0) return 0.0;
    if (p->id == PresetId::Log) {
      int zeros = 0;
      for (Eigen::Index k = 0; k < xi.size(); ++k) zeros += xi[k] == 0.0;
      if (zeros > 0) return xi[p->j] == 0.0 ? 1.0 / zeros : 0.0;
    }
  }
  return evaluate(spec, xi);
}

}  // namespace

SymbolGrid evaluate_grid(const SymbolSpec& spec, const GridSpec& grid, bool enforce_bound) {
  grid.validate();
  validate_symbol(spec);
  if (symbol_dimension(spec) != grid.d)
    fail(ErrorCode::GridMismatch, "symbol dimension " + std::to_string(symbol_dimension(spec)) +
                                      " differs from grid dimension " + std::to_string(grid.d));
  SymbolGrid out{grid, std::vector<cplx>(grid.total()), 0.0, 0};
  parallel_for(out.values.size(), [&](std::size_t i) { out.values[i] = grid_value(spec, grid.frequency(i)); });
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double a = std::abs(out.values[i]);
    if (!std::isfinite(a)) fail(ErrorCode::SymbolBoundViolated, "non-finite symbol value");
    if (a > out.max_abs) {
      out.max_abs = a;
      out.argmax = i;
    }
  }
  if (enforce_bound && out.max_abs > 1.0 + kSymbolBoundSlack) {
    const Vec xi = grid.frequency(out.argmax);
    std::string where;
    for (Eigen::Index a = 0; a < xi.size(); ++a) where += (a ? "," : "") + std::to_string(xi[a]);
    fail(ErrorCode::SymbolBoundViolated, "|m| = " + std::to_string(out.max_abs) + " at xi = (" + where + ")");
  }
  return out;
}

SymbolGrid constant_symbol(const GridSpec& grid, cplx value) {
  grid.validate();
  return {grid, std::vector<cplx>(grid.total(), value), std::abs(value), 0};
}

}  // namespace levymult
