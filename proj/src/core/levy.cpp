#include "levy.hpp"

#include <algorithm>
#include <functional>

#include "error.hpp"
#include "quadrature.hpp"

namespace levymult {
namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kQuadAbsLimit = 1e-7;
constexpr double kQuadRelLimit = 1e-7;
constexpr double kEulerGamma = 0.57721566490153286061;

const AdaptiveOptions kRayOpts{16, 1e-10, 1e-16, 40};

struct Accum {
  cplx value{0.0, 0.0};
  double error = 0.0;
  void add(const QuadResult& r) {
    value += r.value;
    error += r.error;
  }
};

// ∫_R^∞ e^{iκr} r^{-β} dr by repeated integration by parts; needs |κ|R large.
cplx oscillatory_tail_series(double kappa, double R, double beta) {
  const cplx z{0.0, -1.0 / (kappa * R)};
  cplx term{1.0, 0.0}, sum{0.0, 0.0};
  double last = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 80; ++k) {
    const double mag = std::abs(term);
    if (mag > last) break;  // asymptotic series started to diverge
    sum += term;
    if (mag < 1e-17 * std::abs(sum)) break;
    last = mag;
    term *= (beta + k) * z;
  }
  return kI / kappa * std::polar(std::pow(R, -beta), kappa * R) * sum;
}

// ∫_R^∞ e^{iκr} r^{-β} dr for β > 1, any real κ.
cplx power_tail(double kappa, double R, double beta, double& error) {
  if (kappa == 0.0) return std::pow(R, 1.0 - beta) / (beta - 1.0);
  const double switch_x = 40.0;
  if (std::abs(kappa) * R >= switch_x) return oscillatory_tail_series(kappa, R, beta);
  const double R2 = switch_x / std::abs(kappa);
  // Substitute r = e^s so the slowly oscillating stretch is smooth.
  const QuadResult body = integrate_adaptive(
      [&](double s) {
        const double r = std::exp(s);
        return std::polar(std::exp((1.0 - beta) * s), kappa * r);
      },
      std::log(R), std::log(R2), kRayOpts);
  error += body.error;
  return body.value + oscillatory_tail_series(kappa, R2, beta);
}

enum class Kernel { Psi, Cross };

struct RayQuery {
  Kernel kernel = Kernel::Psi;
  double k1 = 0.0;
  double k2 = 0.0;
  bool compensated = true;
};

cplx kernel_value(const RayQuery& q, double r) {
  if (q.kernel == Kernel::Cross) return expm1i(q.k1 * r) * expm1i(q.k2 * r);
  if (q.compensated && r <= 1.0) return expm1i_minus_ix(q.k1 * r);
  return expm1i(q.k1 * r);
}

// ∫_0^∞ kernel(r) phi(r) rho(r) dr along one ray. phi must be constant beyond
// its breakpoint.
cplx ray_integral(const RadialProfile& rho, const RayQuery& q, const std::function<cplx(double)>& phi_at,
                  std::optional<double> breakpoint, double& error) {
  const double kmax = std::max(std::abs(q.k1), q.kernel == Kernel::Cross ? std::abs(q.k2) : 0.0);
  if (kmax == 0.0 || (q.kernel == Kernel::Cross && (q.k1 == 0.0 || q.k2 == 0.0))) return 0.0;

  auto integrand = [&](double r) { return kernel_value(q, r) * phi_at(r) * rho(r); };
  Accum acc;
  auto panel = [&](double a, double b) {
    if (breakpoint && *breakpoint > a && *breakpoint < b) {
      acc.add(integrate_adaptive(integrand, a, *breakpoint, kRayOpts));
      acc.add(integrate_adaptive(integrand, *breakpoint, b, kRayOpts));
    } else {
      acc.add(integrate_adaptive(integrand, a, b, kRayOpts));
    }
  };

  // Inner part: dyadic panels towards 0, closed by the leading Taylor terms.
  const double c = rho.c, beta = rho.beta;
  auto moment = [&](int p, double delta) { return std::pow(delta, p + 1 - beta) / (p + 1 - beta); };
  cplx lead{0.0, 0.0};
  double remainder = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 400; ++iter) {
    const double lo = 0.5 * hi;
    panel(lo, hi);
    if (q.kernel == Kernel::Cross) {
      lead = -q.k1 * q.k2 * c * moment(2, lo);
      remainder = std::abs(q.k1 * q.k2) * (std::abs(q.k1) + std::abs(q.k2)) * c * moment(3, lo);
    } else {
      lead = -0.5 * q.k1 * q.k1 * c * moment(2, lo);
      if (!q.compensated) lead += kI * q.k1 * c * moment(1, lo);
      remainder = std::pow(std::abs(q.k1), 3) / 6.0 * c * moment(3, lo);
    }
    if (rho.lambda > 0.0) remainder += rho.lambda * lo * std::abs(lead);
    const cplx phi0 = phi_at(0.5 * lo);
    lead *= phi0;
    remainder *= std::abs(phi0);
    hi = lo;
    if (lo * kmax <= 1e-3 && remainder <= 1e-13 * std::abs(acc.value + lead)) break;
    if (lo < 1e-280) break;
  }
  acc.value += lead;
  acc.error += remainder;

  // Outer part: dyadic panels then an analytic (power) or bounded (tempered) tail.
  double R = 1.0;
  double r_q = std::max(2.0, 64.0 / kmax);
  if (breakpoint && *breakpoint > 1.0) r_q = std::max(r_q, 2.0 * *breakpoint);
  if (rho.lambda > 0.0) {
    const double mass_bound = q.kernel == Kernel::Cross ? 4.0 : 2.0;
    for (int iter = 0; iter < 4000; ++iter) {
      const double next = R < 8.0 ? 2.0 * R : R + std::max(8.0, 0.25 * R);
      panel(R, next);
      R = next;
      const double tail = mass_bound * c * std::pow(R, -beta) * std::exp(-rho.lambda * R) / rho.lambda;
      if (R >= r_q && tail <= 1e-14 * std::abs(acc.value) + 1e-18) {
        acc.error += tail;
        break;
      }
      if (iter == 3999) acc.error += tail;
    }
  } else {
    while (R < r_q) {
      const double next = 2.0 * R;
      panel(R, next);
      R = next;
    }
    double tail_err = 0.0;
    cplx tail;
    if (q.kernel == Kernel::Cross) {
      tail = power_tail(q.k1 + q.k2, R, beta, tail_err) - power_tail(q.k1, R, beta, tail_err) -
             power_tail(q.k2, R, beta, tail_err) + power_tail(0.0, R, beta, tail_err);
    } else {
      tail = power_tail(q.k1, R, beta, tail_err) - power_tail(0.0, R, beta, tail_err);
    }
    acc.value += c * phi_at(2.0 * R) * tail;
    acc.error += c * tail_err;
  }
  error += acc.error;
  return acc.value;
}

void check_quadrature(cplx value, double error, const char* what) {
  if (!(error <= kQuadAbsLimit + kQuadRelLimit * std::abs(value)))
    fail(ErrorCode::QuadratureNotConverged,
         std::string(what) + ": estimated error " + std::to_string(error) + " for value magnitude " +
             std::to_string(std::abs(value)));
}

cplx one(double) { return {1.0, 0.0}; }

// Sum over the rays of a RadialProductMeasure.
cplx radial_sum(const RadialProductMeasure& m, const RayQuery& base, const Vec& zeta1, const Vec* zeta2,
                const JumpModulator* phi, const char* what) {
  double error = 0.0;
  cplx total{0.0, 0.0};
  const std::optional<double> bp = phi ? ray_breakpoint(*phi) : std::nullopt;
  for (Eigen::Index j = 0; j < m.dir_weights.size(); ++j) {
    if (m.dir_weights[j] == 0.0) continue;
    const Vec theta = m.directions.col(j);
    RayQuery q = base;
    q.k1 = zeta1.dot(theta);
    if (zeta2) q.k2 = zeta2->dot(theta);
    std::function<cplx(double)> phi_at = one;
    if (phi) phi_at = [&](double r) { return eval_phi(*phi, r * theta); };
    double err = 0.0;
    total += m.dir_weights[j] * ray_integral(m.profile, q, phi_at, bp, err);
    error += m.dir_weights[j] * err;
  }
  check_quadrature(total, error, what);
  return total;
}

cplx sphere_part(const SphericalMeasure& mu, const SphereModulator* psi, const Vec& z1, const Vec& z2) {
  cplx s{0.0, 0.0};
  for (Eigen::Index j = 0; j < mu.size(); ++j) {
    const auto theta = mu.thetas.col(j);
    const cplx w = psi ? eval_psi(*psi, theta, static_cast<std::size_t>(j)) : cplx(1.0);
    s += mu.weights[j] * w * (z1.dot(theta) * z2.dot(theta));
  }
  return s;
}

double stable_exponent(double alpha, const Vec& zeta) { return -std::pow(zeta.norm(), alpha); }

// Closed-form modulated exponent of the one-dimensional stable measure with
// phi = sgn(z); compensated at |z| <= 1 when requested.
cplx stable_sign_exponent(double alpha, double zeta, bool compensated) {
  if (zeta == 0.0) return 0.0;
  const double c = stable_constant(alpha, 1);
  if (std::abs(alpha - 1.0) < 1e-12) {
    if (!compensated) fail(ErrorCode::NonIntegrableMeasure, "uncompensated Cauchy measure");
    return kI * (2.0 / kPi) * zeta * (1.0 - kEulerGamma - std::log(std::abs(zeta)));
  }
  cplx v = kI * std::tan(0.5 * kPi * alpha) * sgn(zeta) * std::pow(std::abs(zeta), alpha);
  if (compensated) v += -2.0 * kI * c * zeta / (1.0 - alpha);
  return v;
}

RadialProductMeasure radial_equivalent(double alpha, int n, double r_max) {
  if (n != 1)
    fail(ErrorCode::Unsupported, "modulated stable exponent needs n = 1 unless phi is constant");
  return stable_radial_1d(alpha, r_max);
}

std::vector<cplx> phi_on_atoms(const JumpModulator& phi, const AtomsMeasure& atoms) {
  std::vector<cplx> out(atoms.size());
  cplx c;
  if (is_constant(phi, &c)) {
    std::fill(out.begin(), out.end(), c);
    return out;
  }
  for (Eigen::Index i = 0; i < atoms.size(); ++i)
    out[i] = eval_phi(phi, atoms.points.col(i), static_cast<std::size_t>(i));
  return out;
}

cplx atoms_psi(const AtomsMeasure& atoms, const std::vector<cplx>* phi, const Vec& zeta, bool compensated) {
  const Vec kappa = atoms.points.transpose() * zeta;
  double re = 0.0, im = 0.0;
  for (Eigen::Index i = 0; i < atoms.size(); ++i) {
    const bool comp = compensated && atoms.points.col(i).squaredNorm() <= 1.0;
    cplx v = comp ? expm1i_minus_ix(kappa[i]) : expm1i(kappa[i]);
    v *= atoms.weights[i];
    if (phi) v *= (*phi)[i];
    re += v.real();
    im += v.imag();
  }
  return {re, im};
}

cplx atoms_cross(const AtomsMeasure& atoms, const std::vector<cplx>& phi, const Vec& z1, const Vec& z2) {
  const Vec k1 = atoms.points.transpose() * z1;
  const Vec k2 = atoms.points.transpose() * z2;
  cplx s{0.0, 0.0};
  for (Eigen::Index i = 0; i < atoms.size(); ++i) s += atoms.weights[i] * phi[i] * expm1i(k1[i]) * expm1i(k2[i]);
  return s;
}

void require_size(const Vec& v, int n, const char* what) {
  if (v.size() != n)
    fail(ErrorCode::ShapeMismatch, std::string(what) + " has length " + std::to_string(v.size()) + ", expected " +
                                       std::to_string(n));
}

}  // namespace

LevyData make_data(int d, int n, LevyMeasure nu, Mat A, Mat B) {
  LevyData data;
  data.d = d;
  data.n = n;
  data.nu = std::move(nu);
  data.mu.thetas = Mat(n, 0);
  data.mu.weights = Vec(0);
  data.gamma = Vec::Zero(n);
  data.A = std::move(A);
  data.B = std::move(B);
  return data;
}

AtomsMeasure atoms_1d(std::initializer_list<std::pair<double, double>> atoms) {
  AtomsMeasure m;
  m.points.resize(1, static_cast<Eigen::Index>(atoms.size()));
  m.weights.resize(static_cast<Eigen::Index>(atoms.size()));
  Eigen::Index i = 0;
  for (const auto& [z, w] : atoms) {
    m.points(0, i) = z;
    m.weights[i] = w;
    ++i;
  }
  return m;
}

RadialProductMeasure stable_radial_1d(double alpha, double r_max) {
  RadialProductMeasure m;
  m.profile = RadialProfile{stable_constant(alpha, 1), 1.0 + alpha, 0.0};
  m.directions = Mat(1, 2);
  m.directions << 1.0, -1.0;
  m.dir_weights = Vec::Ones(2);
  m.r_max = r_max;
  return m;
}

double stable_constant(double alpha, int d) {
  if (!(alpha > 0.0 && alpha < 2.0)) fail(ErrorCode::AlphaOutOfRange, "alpha must lie in (0, 2)");
  return std::tgamma(0.5 * (d + alpha)) * std::pow(2.0, alpha) * std::pow(kPi, -0.5 * d) /
         std::abs(std::tgamma(-0.5 * alpha));
}

bool is_atoms(const LevyData& data) { return std::holds_alternative<AtomsMeasure>(data.nu); }

const AtomsMeasure& atoms_of(const LevyData& data) {
  if (const auto* a = std::get_if<AtomsMeasure>(&data.nu)) return *a;
  fail(ErrorCode::RequiresFiniteMeasure, "operation needs an Atoms measure");
}

double total_mass(const AtomsMeasure& atoms) { return atoms.weights.sum(); }

const LevyData& validate(const LevyData& data) {
  const int d = data.d, n = data.n;
  if (d < 1 || n < 1) fail(ErrorCode::ShapeMismatch, "d and n must be positive");
  if (data.A.rows() != d || data.A.cols() != n)
    fail(ErrorCode::ShapeMismatch, "A must be " + std::to_string(d) + "x" + std::to_string(n));
  if (data.B.rows() != d || data.B.cols() != n)
    fail(ErrorCode::ShapeMismatch, "B must be " + std::to_string(d) + "x" + std::to_string(n));
  require_size(data.gamma, n, "gamma");
  if (!data.A.allFinite() || !data.B.allFinite() || !data.gamma.allFinite())
    fail(ErrorCode::ValidationError, "A, B and gamma must be finite");

  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AtomsMeasure>) {
          if (m.points.rows() != n || m.points.cols() != m.weights.size())
            fail(ErrorCode::ShapeMismatch, "atom points must be n x M with M weights");
          for (Eigen::Index i = 0; i < m.size(); ++i) {
            if (!m.points.col(i).allFinite() || !std::isfinite(m.weights[i]))
              fail(ErrorCode::ValidationError, "atom " + std::to_string(i) + " is not finite");
            if (m.points.col(i).squaredNorm() == 0.0)
              fail(ErrorCode::AtomAtOrigin, "atom " + std::to_string(i) + " sits at the origin");
            if (m.weights[i] < 0.0) fail(ErrorCode::ValidationError, "atom masses must be nonnegative");
          }
        } else if constexpr (std::is_same_v<T, RadialProductMeasure>) {
          if (m.directions.rows() != n || m.directions.cols() != m.dir_weights.size())
            fail(ErrorCode::ShapeMismatch, "radial directions must be n x J with J weights");
          for (Eigen::Index j = 0; j < m.dir_weights.size(); ++j) {
            if (std::abs(m.directions.col(j).norm() - 1.0) > kUnitTol)
              fail(ErrorCode::ValidationError, "radial direction " + std::to_string(j) + " is not a unit vector");
            if (!(m.dir_weights[j] >= 0.0)) fail(ErrorCode::ValidationError, "direction weights must be nonnegative");
          }
          const RadialProfile& p = m.profile;
          if (!(p.c >= 0.0) || !std::isfinite(p.beta) || !(p.lambda >= 0.0))
            fail(ErrorCode::ValidationError, "radial profile needs c >= 0, finite beta, lambda >= 0");
          // ∫ min(r^2, 1) rho(r) dr: near zero needs beta < 3, at infinity beta > 1 or lambda > 0.
          if (p.beta >= 3.0)
            fail(ErrorCode::NonIntegrableMeasure, "∫_0^1 r^2 rho(r) dr diverges for beta >= 3");
          if (p.lambda == 0.0 && p.beta <= 1.0)
            fail(ErrorCode::NonIntegrableMeasure, "∫_1^∞ rho(r) dr diverges for beta <= 1");
          if (p.lambda > 0.0 && p.beta < 0.0)
            fail(ErrorCode::ValidationError, "tempered profile needs beta >= 0");
          if (!data.compensated && p.beta >= 2.0)
            fail(ErrorCode::NonIntegrableMeasure, "uncompensated jumps need ∫_0^1 r rho(r) dr < ∞ (beta < 2)");
          if (!(m.r_max > 1.0)) fail(ErrorCode::ValidationError, "r_max must exceed 1");
          if (m.nodes_per_panel < 1) fail(ErrorCode::ValidationError, "nodes_per_panel must be positive");
        } else {
          if (!(m.alpha > 0.0 && m.alpha < 2.0)) fail(ErrorCode::AlphaOutOfRange, "alpha must lie in (0, 2)");
          if (!data.compensated && m.alpha >= 1.0)
            fail(ErrorCode::NonIntegrableMeasure, "uncompensated stable jumps need alpha < 1");
        }
      },
      data.nu);

  if (data.mu.thetas.rows() != n && data.mu.size() > 0)
    fail(ErrorCode::ShapeMismatch, "sphere atoms must be n-vectors");
  if (data.mu.thetas.cols() != data.mu.weights.size())
    fail(ErrorCode::ShapeMismatch, "sphere atoms and weights differ in count");
  for (Eigen::Index j = 0; j < data.mu.size(); ++j) {
    if (std::abs(data.mu.thetas.col(j).norm() - 1.0) > kUnitTol)
      fail(ErrorCode::ValidationError, "sphere atom " + std::to_string(j) + " is not a unit vector");
    if (!(data.mu.weights[j] >= 0.0)) fail(ErrorCode::ValidationError, "sphere weights must be nonnegative");
  }
  return data;
}

void validate(const LevyData& data, const Modulator& mod) {
  validate(data);
  validate_modulator(mod, data.n);
  if (const auto* t = std::get_if<TableMod>(&mod.phi)) {
    const auto* atoms = std::get_if<AtomsMeasure>(&data.nu);
    if (!atoms)
      fail(ErrorCode::ModulatorUndefinedOnSupport, "phi table needs an Atoms measure");
    if (static_cast<Eigen::Index>(t->values.size()) != atoms->size())
      fail(ErrorCode::ModulatorUndefinedOnSupport, "phi table has " + std::to_string(t->values.size()) +
                                                       " values for " + std::to_string(atoms->size()) + " atoms");
  }
  if (const auto* t = std::get_if<TableMod>(&mod.psi)) {
    if (static_cast<Eigen::Index>(t->values.size()) != data.mu.size())
      fail(ErrorCode::ModulatorUndefinedOnSupport, "psi table has " + std::to_string(t->values.size()) +
                                                       " values for " + std::to_string(data.mu.size()) +
                                                       " sphere atoms");
  }
  int axis = 0;
  if (is_sign(mod.phi, &axis) && (axis < 0 || axis >= data.n))
    fail(ErrorCode::ModulatorUndefinedOnSupport, "phi sign axis out of range");
  if (const auto* s = std::get_if<SignMod>(&mod.psi); s && (s->axis < 0 || s->axis >= data.n))
    fail(ErrorCode::ModulatorUndefinedOnSupport, "psi sign axis out of range");
  if (const auto* h = std::get_if<HalfSpaceMod>(&mod.phi); h && h->normal.size() != data.n)
    fail(ErrorCode::ModulatorUndefinedOnSupport, "half-space normal must be an n-vector");
}

cplx psi(const LevyData& data, const Vec& zeta) {
  require_size(zeta, data.n, "zeta");
  cplx jump = std::visit(
      [&](const auto& m) -> cplx {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AtomsMeasure>) {
          return atoms_psi(m, nullptr, zeta, data.compensated);
        } else if constexpr (std::is_same_v<T, RadialProductMeasure>) {
          return radial_sum(m, RayQuery{Kernel::Psi, 0.0, 0.0, data.compensated}, zeta, nullptr, nullptr, "psi");
        } else {
          return stable_exponent(m.alpha, zeta);
        }
      },
      data.nu);
  return jump - 0.5 * sphere_part(data.mu, nullptr, zeta, zeta) + kI * zeta.dot(data.gamma);
}

cplx psi_tilde(const LevyData& data, const Modulator& mod, const Vec& zeta) {
  require_size(zeta, data.n, "zeta");
  cplx jump = std::visit(
      [&](const auto& m) -> cplx {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AtomsMeasure>) {
          const std::vector<cplx> phi = phi_on_atoms(mod.phi, m);
          return atoms_psi(m, &phi, zeta, data.compensated);
        } else if constexpr (std::is_same_v<T, RadialProductMeasure>) {
          return radial_sum(m, RayQuery{Kernel::Psi, 0.0, 0.0, data.compensated}, zeta, nullptr, &mod.phi,
                            "psi_tilde");
        } else {
          cplx c;
          int axis = 0;
          if (is_constant(mod.phi, &c)) return c * stable_exponent(m.alpha, zeta);
          if (data.n == 1 && is_sign(mod.phi, &axis) && axis == 0)
            return stable_sign_exponent(m.alpha, zeta[0], data.compensated);
          const RadialProductMeasure r = radial_equivalent(m.alpha, data.n, 1e5);
          return radial_sum(r, RayQuery{Kernel::Psi, 0.0, 0.0, data.compensated}, zeta, nullptr, &mod.phi,
                            "psi_tilde");
        }
      },
      data.nu);
  return jump - 0.5 * sphere_part(data.mu, &mod.psi, zeta, zeta);
}

cplx cross_form(const LevyData& data, const Modulator& mod, const Vec& zeta1, const Vec& zeta2, CrossRoute route) {
  require_size(zeta1, data.n, "zeta1");
  require_size(zeta2, data.n, "zeta2");
  if (route == CrossRoute::Difference)
    return psi_tilde(data, mod, zeta1 + zeta2) - psi_tilde(data, mod, zeta1) - psi_tilde(data, mod, zeta2);
  cplx jump = std::visit(
      [&](const auto& m) -> cplx {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AtomsMeasure>) {
          return atoms_cross(m, phi_on_atoms(mod.phi, m), zeta1, zeta2);
        } else if constexpr (std::is_same_v<T, RadialProductMeasure>) {
          return radial_sum(m, RayQuery{Kernel::Cross, 0.0, 0.0, true}, zeta1, &zeta2, &mod.phi, "cross_form");
        } else {
          cplx c;
          if (is_constant(mod.phi, &c))
            return c * (stable_exponent(m.alpha, zeta1 + zeta2) - stable_exponent(m.alpha, zeta1) -
                        stable_exponent(m.alpha, zeta2));
          const RadialProductMeasure r = radial_equivalent(m.alpha, data.n, 1e5);
          return radial_sum(r, RayQuery{Kernel::Cross, 0.0, 0.0, true}, zeta1, &zeta2, &mod.phi, "cross_form");
        }
      },
      data.nu);
  return jump - sphere_part(data.mu, &mod.psi, zeta1, zeta2);
}

namespace {

// Panel edges on (eps, r_max]: halving towards eps below 1, then lengths
// doubling up to max_len.
std::vector<double> approx_edges(double eps, double r_max, double max_len, std::optional<double> bp) {
  std::vector<double> edges;
  if (eps < 1.0) {
    double e = 1.0;
    while (0.5 * e > eps) e *= 0.5;
    edges.push_back(eps);
    for (; e < 1.0; e *= 2.0) edges.push_back(e);
  }
  double r = std::max(1.0, eps), len = 1.0;
  edges.push_back(r);
  while (r < r_max) {
    r = std::min(r_max, r + len);
    edges.push_back(r);
    len = std::min(2.0 * len, max_len);
  }
  if (bp && *bp > edges.front() && *bp < edges.back()) {
    edges.push_back(*bp);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
  return edges;
}

AtomsMeasure radial_to_atoms(const RadialProductMeasure& m, double eps, int nodes, double max_len,
                             std::optional<double> bp) {
  const std::vector<double> edges = approx_edges(eps, m.r_max, max_len, bp);
  std::vector<double> rs, ws, x, w;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    gauss_legendre_interval(nodes, edges[p], edges[p + 1], x, w);
    for (int i = 0; i < nodes; ++i) {
      rs.push_back(x[i]);
      ws.push_back(w[i] * m.profile(x[i]));
    }
  }
  Eigen::Index count = 0;
  for (Eigen::Index j = 0; j < m.dir_weights.size(); ++j)
    if (m.dir_weights[j] > 0.0) ++count;
  const auto per = static_cast<Eigen::Index>(rs.size());
  AtomsMeasure out;
  out.points.resize(m.directions.rows(), count * per);
  out.weights.resize(count * per);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < m.dir_weights.size(); ++j) {
    if (m.dir_weights[j] <= 0.0) continue;
    for (Eigen::Index i = 0; i < per; ++i, ++k) {
      out.points.col(k) = rs[i] * m.directions.col(j);
      out.weights[k] = m.dir_weights[j] * ws[i];
    }
  }
  return out;
}

}  // namespace

std::pair<LevyData, Modulator> approximate(const LevyData& data, const Modulator& mod, double eps,
                                           const ApproxOptions& opts) {
  if (!(eps > 0.0)) fail(ErrorCode::InvalidArgument, "eps must be positive");
  if (!data.compensated && data.mu.size() > 0)
    fail(ErrorCode::Unsupported, "approximating a Gaussian part needs compensated jump data");
  const std::optional<double> bp = ray_breakpoint(mod.phi);

  AtomsMeasure atoms;
  std::vector<cplx> phi_kept;
  const bool phi_table = is_table(mod.phi);
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AtomsMeasure>) {
          std::vector<Eigen::Index> keep;
          for (Eigen::Index i = 0; i < m.size(); ++i)
            if (m.points.col(i).norm() > eps) keep.push_back(i);
          atoms.points.resize(m.points.rows(), static_cast<Eigen::Index>(keep.size()));
          atoms.weights.resize(static_cast<Eigen::Index>(keep.size()));
          for (std::size_t k = 0; k < keep.size(); ++k) {
            atoms.points.col(k) = m.points.col(keep[k]);
            atoms.weights[k] = m.weights[keep[k]];
            if (phi_table) phi_kept.push_back(eval_phi(mod.phi, m.points.col(keep[k]), keep[k]));
          }
        } else if constexpr (std::is_same_v<T, RadialProductMeasure>) {
          if (eps >= m.r_max) fail(ErrorCode::EpsTooLarge, "eps must be below r_max");
          atoms = radial_to_atoms(m, eps, opts.nodes_per_panel, opts.max_panel_length, bp);
        } else {
          if (eps >= opts.stable_r_max) fail(ErrorCode::EpsTooLarge, "eps must be below the stable truncation radius");
          const RadialProductMeasure r = radial_equivalent(m.alpha, data.n, opts.stable_r_max);
          atoms = radial_to_atoms(r, eps, opts.nodes_per_panel, opts.max_panel_length, bp);
        }
      },
      data.nu);

  LevyData out = data;
  Modulator out_mod = mod;
  const Eigen::Index k_nu = atoms.size(), k_mu = data.mu.size();
  if (k_mu > 0) {
    // Each sphere atom becomes a jump atom at radius eps carrying b / eps^2;
    // phi there takes the sphere modulator's value.
    std::vector<cplx> table(static_cast<std::size_t>(k_nu + k_mu));
    for (Eigen::Index i = 0; i < k_nu; ++i)
      table[i] = phi_table ? phi_kept[i] : eval_phi(mod.phi, atoms.points.col(i));
    AtomsMeasure merged;
    merged.points.resize(data.n, k_nu + k_mu);
    merged.weights.resize(k_nu + k_mu);
    merged.points.leftCols(k_nu) = atoms.points;
    merged.weights.head(k_nu) = atoms.weights;
    for (Eigen::Index j = 0; j < k_mu; ++j) {
      merged.points.col(k_nu + j) = eps * data.mu.thetas.col(j);
      merged.weights[k_nu + j] = data.mu.weights[j] / (eps * eps);
      table[k_nu + j] = eval_psi(mod.psi, data.mu.thetas.col(j), static_cast<std::size_t>(j));
    }
    atoms = std::move(merged);
    out_mod.phi = TableMod{std::move(table)};
  } else if (phi_table) {
    out_mod.phi = TableMod{std::move(phi_kept)};
  }
  out_mod.psi = ConstantMod{};
  out.nu = std::move(atoms);
  out.mu.thetas = Mat(data.n, 0);
  out.mu.weights = Vec(0);
  return {std::move(out), std::move(out_mod)};
}

std::pair<LevyData, Vec> drift_reduce(const LevyData& data) {
  const AtomsMeasure& atoms = atoms_of(data);
  Vec h = data.gamma;
  if (data.compensated) {
    for (Eigen::Index i = 0; i < atoms.size(); ++i)
      if (atoms.points.col(i).squaredNorm() <= 1.0) h -= atoms.weights[i] * atoms.points.col(i);
  }
  LevyData pure = data;
  pure.gamma = Vec::Zero(data.n);
  pure.compensated = false;
  return {std::move(pure), std::move(h)};
}

}  // namespace levymult
