// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance            run every criterion
//   acceptance c3 c7 ...  run the listed criteria
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "brownian.hpp"
#include "error.hpp"
#include "mc.hpp"
#include "spectral.hpp"
#include "symbol.hpp"

using namespace levymult;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string sci(double v) { return fmt("%.3e", v); }

Mat m11(double v) { return Mat::Constant(1, 1, v); }

SampledField gaussian(const GridSpec& grid, double width, double shift = 0.0) {
  return sample(grid, [&](const Vec& x) {
    return cplx(std::exp(-(x.array() - shift).square().sum() / (2.0 * width * width)));
  });
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const GridSpec& grid1() {
  static const GridSpec g = GridSpec::uniform(1, 1024, 40.0);
  return g;
}
const GridSpec& grid2() {
  static const GridSpec g = GridSpec::uniform(2, 256, 20.0);
  return g;
}

Modulator table(std::vector<cplx> values) { return {TableMod{std::move(values)}, ConstantMod{}}; }

CMat riesz_k(int j, int k, int n) {
  CMat K = CMat::Zero(n, n);
  K(j, k) = K(k, j) = -1.0;
  return K;
}

// ---------------------------------------------------------------------------

Outcome c1_symbol_bound() {
  const LevyData one = make_data(1, 1, atoms_1d({{1.0, 1.0}}), m11(1.0), m11(1.0));
  LevyData skew = make_data(1, 1, atoms_1d({{1.0, 0.7}, {-2.0, 0.3}, {0.4, 1.5}}), m11(1.0), m11(-1.0));
  skew.gamma << 0.3;
  const Modulator skew_mod = table({0.5, cplx(0, -0.8), std::polar(0.9, 2.0)});
  const LevyData stable = make_data(1, 1, ClosedFormStable{0.5}, m11(-1.0), m11(1.0));
  AtomsMeasure nu2;
  nu2.points = Mat(2, 3);
  nu2.points << 0.8, -0.5, 1.2, 0.3, 1.1, -0.9;
  nu2.weights = Vec(3);
  nu2.weights << 0.9, 0.6, 0.4;
  Mat A2(2, 2), B2(2, 2);
  A2 << 1.0, 0.2, -0.3, 0.9;
  B2 << -0.7, 0.4, 0.5, 1.1;
  const LevyData two = make_data(2, 2, nu2, A2, B2);
  const LevyData two_eq = make_data(2, 2, nu2, A2, A2);
  const Modulator two_mod = table({cplx(0.6, 0.6), -1.0, cplx(0, 0.3)});
  LevyData gauss_part = make_data(2, 2, AtomsMeasure{Mat(2, 0), Vec(0)}, Mat::Identity(2, 2), Mat::Identity(2, 2));
  gauss_part.mu.thetas = Mat::Identity(2, 2);
  gauss_part.mu.weights = Vec::Ones(2);
  const Modulator gauss_mod{ConstantMod{}, TableMod{{1.0, -1.0}}};

  struct Case {
    std::string name;
    SymbolSpec spec;
    const GridSpec* grid;
  };
  std::vector<Case> cases{
      {"q/single-atom", QForm{one, Modulator::identity(), 1.0}, &grid1()},
      {"q/three-atom A!=B complex phi", QForm{skew, skew_mod, 1.0}, &grid1()},
      {"q/stable sign", QForm{stable, {SignMod{0}, ConstantMod{}}, 1.0}, &grid1()},
      {"q/2d A!=B table", QForm{two, two_mod, 1.0}, &grid2()},
      {"integral/three-atom", IntegralForm{skew, skew_mod}, &grid1()},
      {"integral/2d", IntegralForm{two, two_mod}, &grid2()},
      {"limit/2d table", LimitForm{two_eq, two_mod}, &grid2()},
      {"limit/gaussian part", LimitForm{gauss_part, gauss_mod}, &grid2()},
      {"gaussian/s=1", GaussianForm{A2, B2, CMat::Identity(2, 2), 1.0}, &grid2()},
      {"gaussian/s=1/2 riesz K", GaussianForm{A2, B2, riesz_k(0, 1, 2), 0.5}, &grid2()},
      {"gaussian_limit/riesz K", GaussianLimitForm{Mat::Identity(2, 2), riesz_k(0, 1, 2)}, &grid2()},
      {"stable/alpha=0.5", StableClosedForm{0.5}, &grid1()},
      {"stable/alpha=1", StableClosedForm{1.0}, &grid1()},
      {"stable/alpha=1.5", StableClosedForm{1.5}, &grid1()},
      {"preset/log", NamedPreset{PresetId::Log, 2, 0, 0}, &grid2()},
      {"preset/riesz", NamedPreset{PresetId::Riesz, 2, 0, 1}, &grid2()},
  };
  Outcome out{true, ""};
  double worst = 0.0, slowest = 0.0;
  for (const auto& c : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    const SymbolGrid m = evaluate_grid(c.spec, *c.grid, false);
    const double t = seconds_since(t0);
    const bool ok = m.max_abs <= 1.0 + kSymbolBoundSlack && t < 5.0;
    std::printf("  c1 %-32s max|m| %.12f  %.2fs %s\n", c.name.c_str(), m.max_abs, t, ok ? "ok" : "VIOLATION");
    out.pass = out.pass && ok;
    worst = std::max(worst, m.max_abs);
    slowest = std::max(slowest, t);
  }
  out.detail = std::to_string(cases.size()) + " symbols, max|m| " + fmt("%.12f", worst) + ", slowest " +
               fmt("%.2f", slowest) + "s";
  return out;
}

Outcome c2_formula_equivalence() {
  struct Case {
    std::string name;
    LevyData data;
    Modulator mod;
  };
  std::vector<Case> cases;
  {
    LevyData d = make_data(1, 1, atoms_1d({{1.0, 0.7}, {-2.0, 0.3}}), m11(1.0), m11(-1.0));
    cases.push_back({"1d A!=B table", d, table({0.5, cplx(0, -0.8)})});
  }
  {
    LevyData d = make_data(1, 1, atoms_1d({{0.5, 1.2}, {1.0, 0.4}, {-0.3, 2.0}}), m11(2.0), m11(0.5));
    d.gamma << -0.4;
    cases.push_back({"1d drift complex const", d, {ConstantMod{cplx(0.6, -0.7)}, ConstantMod{}}});
  }
  {
    AtomsMeasure nu;
    nu.points = Mat(2, 3);
    nu.points << 0.8, -0.5, 1.2, 0.3, 1.1, -0.9;
    nu.weights = Vec(3);
    nu.weights << 0.9, 0.6, 0.4;
    Mat A(2, 2), B(2, 2);
    A << 1.0, 0.2, -0.3, 0.9;
    B << -0.7, 0.4, 0.5, 1.1;
    cases.push_back({"2d A!=B table", make_data(2, 2, nu, A, B), table({cplx(0.6, 0.6), -1.0, cplx(0, 0.3)})});
  }
  {
    AtomsMeasure nu;
    nu.points = Mat(2, 2);
    nu.points << 0.6, -1.4, 0.9, 0.2;
    nu.weights = Vec(2);
    nu.weights << 1.1, 0.5;
    Mat A(1, 2), B(1, 2);
    A << 1.0, -0.5;
    B << 0.3, 0.8;
    LevyData d = make_data(1, 2, nu, A, B);
    d.mu.thetas = Mat(2, 1);
    d.mu.thetas << 0.6, 0.8;
    d.mu.weights = Vec::Constant(1, 0.7);
    cases.push_back({"d=1 n=2 phase + gaussian", d, {PhaseMod{1}, ConstantMod{cplx(0, 1)}}});
  }
  {
    LevyData d = make_data(1, 1, atoms_1d({{1.0, 1.0}}), m11(1.0), m11(1.0));
    cases.push_back({"1d A=B identity", d, Modulator::identity()});
  }
  std::mt19937_64 rng(20240601);
  std::normal_distribution<double> normal;
  Outcome out{true, ""};
  double worst = 0.0;
  for (const auto& c : cases) {
    double gap = 0.0;
    for (int i = 0; i < 200; ++i) {
      Vec xi(c.data.d);
      for (int a = 0; a < c.data.d; ++a) xi[a] = 3.0 * normal(rng);
      gap = std::max(gap, std::abs(symbol_q(c.data, c.mod, xi) - symbol_integral(c.data, c.mod, xi)));
    }
    std::printf("  c2 %-28s max |q - integral| %s\n", c.name.c_str(), sci(gap).c_str());
    out.pass = out.pass && gap <= 1e-10;
    worst = std::max(worst, gap);
  }
  out.detail = std::to_string(cases.size()) + " configurations x 200 xi, max gap " + sci(worst);
  return out;
}

Outcome c3_stable_closed_form() {
  const double alpha = 0.5;
  const LevyData stable = make_data(1, 1, ClosedFormStable{alpha}, m11(-1.0), m11(1.0));
  const Modulator sign{SignMod{0}, ConstantMod{}};
  const std::vector<double> xis{0.25, 0.5, 1.0, 2.0};
  const std::vector<double> epss{1e-1, 1e-2, 1e-3};
  std::vector<std::vector<double>> err(epss.size()), flipped(epss.size());
  for (std::size_t e = 0; e < epss.size(); ++e) {
    const auto [data, mod] = approximate(stable, sign, epss[e]);
    for (double xi : xis) {
      const cplx m_eps = symbol_q(data, mod, Vec::Constant(1, xi));
      const cplx target = symbol_stable(alpha, xi);
      err[e].push_back(std::abs(m_eps - target) / std::abs(target));
      flipped[e].push_back(std::abs(m_eps + target) / std::abs(target));
      std::printf("  c3 eps %.0e xi %.2f  m_eps %+.6f%+.6fi  closed form %+.6f%+.6fi  rel err %s (vs -closed form %s)\n",
                  epss[e], xi, m_eps.real(), m_eps.imag(), target.real(), target.imag(), sci(err[e].back()).c_str(),
                  sci(flipped[e].back()).c_str());
    }
  }
  bool pass = true, flipped_pass = true;
  double final_err = 0.0, final_flipped = 0.0;
  for (std::size_t i = 0; i < xis.size(); ++i) {
    pass = pass && err.back()[i] < 1e-2 && err[2][i] < err[1][i] && err[1][i] < err[0][i];
    flipped_pass = flipped_pass && flipped.back()[i] < 1e-2 && flipped[2][i] < flipped[1][i] && flipped[1][i] < flipped[0][i];
    final_err = std::max(final_err, err.back()[i]);
    final_flipped = std::max(final_flipped, flipped.back()[i]);
  }
  std::string detail = "max rel err at eps=1e-3 " + sci(final_err);
  detail += "; against the sign-flipped closed form " + sci(final_flipped) +
            (flipped_pass ? " (converges, decreasing in eps)" : " (does not converge)");
  return {pass, detail};
}

Outcome c4_alpha_one_limit() {
  Outcome out{true, ""};
  double worst = 0.0;
  for (double alpha : {1.0 - 1e-3, 1.0 + 1e-3}) {
    for (double xi : {0.5, 1.0, 2.0}) {
      const cplx limit = cplx(0.0, 4.0 * std::log(2.0) / kPi * xi * std::exp(-2.0 * std::abs(xi)));
      const double rel = std::abs(symbol_stable(alpha, xi) - limit) / std::abs(limit);
      std::printf("  c4 alpha %.3f xi %.1f  rel gap %s\n", alpha, xi, sci(rel).c_str());
      out.pass = out.pass && rel < 5e-3;
      worst = std::max(worst, rel);
    }
  }
  out.detail = "max relative gap " + sci(worst);
  return out;
}

Outcome c5_norm_probe() {
  const LevyData one = make_data(1, 1, atoms_1d({{1.0, 1.0}}), m11(1.0), m11(1.0));
  struct Case {
    std::string name;
    SymbolGrid m;
  };
  std::vector<Case> cases{
      {"single atom phi=1", evaluate_grid(QForm{one, Modulator::identity(), 1.0}, grid1())},
      {"stable alpha=1/2", evaluate_grid(StableClosedForm{0.5}, grid1())},
      {"gaussian K=I", evaluate_grid(GaussianForm{m11(1.0), m11(1.0), CMat::Identity(1, 1), 1.0}, grid1())},
      {"riesz", evaluate_grid(NamedPreset{PresetId::Riesz, 2, 0, 1}, grid2())},
  };
  Outcome out{true, ""};
  double worst = 0.0;
  for (const auto& c : cases) {
    for (double p : {1.25, 1.5, 2.0, 3.0, 4.0}) {
      const ProbeReport r = norm_probe(c.m, p, 500, 7);
      std::printf("  c5 %-18s p %.2f  best ratio %.6f  bound %.4f  %s  (%s)\n", c.name.c_str(), p, r.best_ratio,
                  r.bound, r.pass ? "ok" : "EXCEEDS", r.descriptor.c_str());
      out.pass = out.pass && r.pass;
      worst = std::max(worst, r.best_ratio / r.bound);
    }
  }
  out.detail = "20 probes x 500 trials, max ratio/bound " + fmt("%.4f", worst);
  return out;
}

Outcome c6_mc_pairing() {
  struct Case {
    std::string name;
    LevyData data;
    Modulator mod;
    GridSpec grid;
    double fw, gw, gshift;
  };
  const GridSpec g1 = GridSpec::uniform(1, 256, 20.0);
  std::vector<Case> cases;
  cases.push_back({"single atom, A=B, phi=1", make_data(1, 1, atoms_1d({{1.0, 1.0}}), m11(1.0), m11(1.0)),
                   Modulator::identity(), g1, 1.0, 1.0, 0.0});
  cases.push_back({"two atoms, B=-A, table", make_data(1, 1, atoms_1d({{1.0, 0.7}, {-2.0, 0.3}}), m11(1.0), m11(-1.0)),
                   table({0.5, cplx(0, -0.8)}), g1, 1.0, 1.0, 0.0});
  {
    LevyData d = make_data(1, 1, atoms_1d({{0.5, 1.2}, {1.5, 0.4}, {-0.3, 0.9}}), m11(1.5), m11(0.5));
    d.gamma << 0.4;
    cases.push_back({"three atoms, drift, complex const", d, {ConstantMod{cplx(0.6, 0.6)}, ConstantMod{}}, g1, 0.8,
                     1.2, 0.5});
  }
  cases.push_back({"A=B, sign phi", make_data(1, 1, atoms_1d({{0.8, 1.0}, {-1.3, 0.6}}), m11(1.0), m11(1.0)),
                   {SignMod{0}, ConstantMod{}}, g1, 1.0, 1.3, -0.4});
  {
    AtomsMeasure nu;
    nu.points = Mat(2, 3);
    nu.points << 0.6, -1.2, 0.4, 0.7, 0.3, -0.9;
    nu.weights = Vec(3);
    nu.weights << 0.8, 0.5, 0.6;
    Mat A(1, 2), B(1, 2);
    A << 1.0, 0.5;
    B << -0.3, 1.0;
    cases.push_back({"d=1 n=2, A!=B, table", make_data(1, 2, nu, A, B),
                     table({std::polar(0.9, 0.4), cplx(0, 1), -0.7}), g1, 1.0, 1.0, 0.3});
  }
  {
    AtomsMeasure nu;
    nu.points = Mat(2, 2);
    nu.points << 1.0, -0.4, 0.2, 0.9;
    nu.weights = Vec(2);
    nu.weights << 0.7, 0.8;
    Mat A(2, 2), B(2, 2);
    A << 1.0, 0.0, 0.3, 1.0;
    B << 0.0, -1.0, 1.0, 0.2;
    cases.push_back({"d=n=2, A!=B, phase", make_data(2, 2, nu, A, B), {PhaseMod{1}, ConstantMod{}},
                     GridSpec::uniform(2, 32, 16.0), 1.0, 1.2, 0.0});
  }
  Outcome out{true, ""};
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::uint64_t seed = 101;
  for (const auto& c : cases) {
    const SampledField f = gaussian(c.grid, c.fw);
    const SampledField g = gaussian(c.grid, c.gw, c.gshift);
    const cplx ref = pairing(evaluate_grid(QForm{c.data, c.mod, 1.0}, c.grid, false), f, g).spectral;
    McOptions opts;
    opts.paths = 200000;
    opts.seed = seed++;
    const auto t1 = std::chrono::steady_clock::now();
    const PairingEstimate e = estimate_pairing(f, g, c.data, c.mod, opts);
    const double joint = std::abs(e.standard_error);
    const double z = std::abs(e.estimate - ref) / joint;
    const bool ok = z <= 3.0 && e.routes_agree;
    std::printf("  c6 %-34s spectral %+.6f%+.6fi  mc %+.6f%+.6fi  se %.1e  gap/se %.2f  routes %s  %.1fs\n",
                c.name.c_str(), ref.real(), ref.imag(), e.estimate.real(), e.estimate.imag(), joint, z,
                e.routes_agree ? "agree" : "DISAGREE", seconds_since(t1));
    out.pass = out.pass && ok;
    worst = std::max(worst, z);
  }
  const double total = seconds_since(t0);
  out.pass = out.pass && total <= 600.0;
  out.detail = std::to_string(cases.size()) + " configurations, 2e5 paths each, max gap/se " + fmt("%.2f", worst) +
               ", " + fmt("%.0f", total) + "s";
  return out;
}

Outcome c7_subordination() {
  const GridSpec grid = GridSpec::uniform(1, 256, 20.0);
  const SampledField g = gaussian(grid, 1.0, 0.3);
  std::vector<Vec> points;
  for (double x : {-2.0, -0.5, 0.0, 0.7, 1.5}) points.push_back(Vec::Constant(1, x));
  struct Case {
    std::string name;
    LevyData data;
    Modulator mod;
  };
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> random_phi;
  for (int i = 0; i < 4; ++i) random_phi.push_back(std::polar(u(rng), 2.0 * kPi * u(rng)));
  const LevyData four =
      make_data(1, 1, atoms_1d({{0.5, 1.0}, {-1.0, 0.8}, {2.0, 0.4}, {-0.3, 1.5}}), m11(1.0), m11(1.0));
  std::vector<Case> cases{
      {"random complex table", four, table(random_phi)},
      {"unimodular table", four, table({1.0, cplx(0, 1), -1.0, std::polar(1.0, 0.7)})},
      {"sign", four, {SignMod{0}, ConstantMod{}}},
      {"constant 0.5", four, Modulator::constant(0.5)},
      {"identity", four, Modulator::identity()},
  };
  Outcome out{true, ""};
  std::size_t jumps = 0, violations = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& c : cases) {
    McOptions opts;
    opts.paths = 10000;
    opts.seed = 5;
    const SubordinationReport r = subordination_run(g, c.data, c.mod, points, opts);
    std::printf("  c7 %-22s paths %zu jumps %zu violations %zu max excess %s\n", c.name.c_str(), r.paths, r.jumps,
                r.violations, sci(r.max_violation).c_str());
    jumps += r.jumps;
    violations += r.violations;
    out.pass = out.pass && r.holds;
  }
  const double t = seconds_since(t0);
  out.pass = out.pass && t < 60.0;
  out.detail = std::to_string(violations) + " violations over " + std::to_string(jumps) + " jumps x " +
               std::to_string(points.size()) + " points, " + fmt("%.1f", t) + "s";
  return out;
}

Outcome c8_isometry() {
  const GridSpec grid = GridSpec::uniform(1, 256, 20.0);
  const SampledField f = sample(grid, [](const Vec& x) {
    return cplx(std::exp(-x[0] * x[0] / 2.0), 0.5 * x[0] * std::exp(-(x[0] - 1.0) * (x[0] - 1.0)));
  });
  LevyData data = make_data(1, 1, atoms_1d({{0.7, 1.0}, {-1.5, 0.5}}), m11(1.0), m11(1.0));
  data.gamma << 0.2;
  Outcome out{true, ""};
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (double p : {1.5, 2.0, 3.0}) {
    const IsometryReport r = isometry_check(f, data, p, 2000, 4, 11);
    const double z = std::abs(r.estimate - r.target) / r.standard_error;
    std::printf("  c8 p %.1f  E|F_1|^p %.8f  |f|_p^p %.8f  se %s  gap/se %.2f\n", p, r.estimate, r.target,
                sci(r.standard_error).c_str(), z);
    out.pass = out.pass && r.pass;
    worst = std::max(worst, z);
  }
  const double t = seconds_since(t0);
  out.pass = out.pass && t < 120.0;
  out.detail = "p in {1.5, 2, 3}, max gap/se " + fmt("%.2f", worst) + ", " + fmt("%.1f", t) + "s";
  return out;
}

Outcome c9_gaussian_branch() {
  const GridSpec grid = GridSpec::uniform(1, 256, 20.0);
  const SampledField f = gaussian(grid, 1.0);
  const SampledField g = gaussian(grid, 1.0, 0.5);
  BrownianOptions opts;
  opts.paths = 10000;
  opts.steps = 2000;
  opts.seed = 3;
  opts.s = 0.5;
  const std::vector<CMat> Ks{CMat::Identity(1, 1), CMat::Constant(1, 1, cplx(0.0, 0.7))};
  Outcome out{true, ""};
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::vector<BrownianEstimate> est;
  try {
    est = brownian_pairing(f, g, m11(1.0), m11(1.0), Ks, opts);
  } catch (const Error& e) {
    return {false, e.what()};
  }
  for (std::size_t i = 0; i < Ks.size(); ++i) {
    const cplx ref = pairing(evaluate_grid(GaussianForm{m11(1.0), m11(1.0), Ks[i], 0.5}, grid, false), f, g).spectral;
    const double joint = std::abs(est[i].standard_error);
    const double z = std::abs(est[i].estimate - ref) / joint;
    std::printf("  c9 K %+.1f%+.1fi  spectral %+.6f%+.6fi  mc %+.6f%+.6fi  se %.1e  gap/se %.2f  step-halving gap %s\n",
                Ks[i](0, 0).real(), Ks[i](0, 0).imag(), ref.real(), ref.imag(), est[i].estimate.real(),
                est[i].estimate.imag(), joint, z, sci(std::abs(est[i].step_gap)).c_str());
    out.pass = out.pass && z <= 3.0;
    worst = std::max(worst, z);
  }
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal;
  double riesz_gap = 0.0;
  for (int d : {2, 3})
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        if (j == k) continue;
        for (int i = 0; i < 200; ++i) {
          Vec xi(d);
          for (int a = 0; a < d; ++a) xi[a] = normal(rng);
          const double exact = -2.0 * xi[j] * xi[k] / xi.squaredNorm();
          riesz_gap = std::max(riesz_gap, std::abs(symbol_gaussian_limit(Mat::Identity(d, d), riesz_k(j, k, d), xi) - exact));
        }
      }
  std::printf("  c9 gaussian limit vs -2 xi_j xi_k / |xi|^2: max gap %s\n", sci(riesz_gap).c_str());
  out.pass = out.pass && riesz_gap <= 4.0 * std::numeric_limits<double>::epsilon();
  const double t = seconds_since(t0);
  out.pass = out.pass && t < 300.0;
  out.detail = "pairing max gap/se " + fmt("%.2f", worst) + ", limit symbol gap " + sci(riesz_gap) + ", " +
               fmt("%.0f", t) + "s";
  return out;
}

Outcome c10_limits() {
  Outcome out{true, ""};
  // m_eps -> m on the stable example (closed-form modulated exponent as the limit).
  const LevyData stable = make_data(1, 1, ClosedFormStable{0.5}, m11(-1.0), m11(1.0));
  const Modulator sign{SignMod{0}, ConstantMod{}};
  const std::vector<double> xis{0.25, 0.5, 1.0, 2.0};
  std::vector<std::vector<double>> err;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    const auto [data, mod] = approximate(stable, sign, eps);
    err.emplace_back();
    for (double xi : xis) {
      const Vec v = Vec::Constant(1, xi);
      err.back().push_back(std::abs(symbol_q(data, mod, v) - symbol_q(stable, sign, v)));
    }
  }
  bool eps_ok = true;
  for (std::size_t i = 0; i < xis.size(); ++i) {
    std::printf("  c10 xi %.2f  |m_eps - m| at eps 1e-1, 1e-2, 1e-3: %s %s %s\n", xis[i], sci(err[0][i]).c_str(),
                sci(err[1][i]).c_str(), sci(err[2][i]).c_str());
    eps_ok = eps_ok && err[2][i] < err[1][i] && err[1][i] < err[0][i] && err[2][i] < 1e-2;
  }
  // u-scaling towards the limit symbol with A = B.
  LevyData data = make_data(1, 1, atoms_1d({{0.4, 0.05}, {-1.1, 0.03}, {0.7, 0.02}}), m11(1.0), m11(1.0));
  const Modulator mod = table({cplx(0.3, 0.9), -0.6, cplx(0, -1)});
  bool u_ok = true;
  for (double xi : {0.5, 1.0, 2.0, 4.0}) {
    const Vec v = Vec::Constant(1, xi);
    const cplx limit = symbol_limit(data, mod, v);
    std::vector<double> e;
    for (double u : {1.0, 10.0, 100.0, 1000.0}) e.push_back(std::abs(symbol_q(data, mod, v, u) - limit));
    std::printf("  c10 xi %.1f  |m_u - m_limit| at u 1, 10, 100, 1000: %s %s %s %s\n", xi, sci(e[0]).c_str(),
                sci(e[1]).c_str(), sci(e[2]).c_str(), sci(e[3]).c_str());
    for (std::size_t i = 1; i < e.size(); ++i) u_ok = u_ok && (e[i] < e[i - 1] || (e[i] < 1e-14 && e[i - 1] < 1e-14));
    u_ok = u_ok && e.back() < 1e-6;
  }
  out.pass = eps_ok && u_ok;
  out.detail = std::string("eps limit ") + (eps_ok ? "converges" : "FAILS") + ", u limit " +
               (u_ok ? "monotone" : "NOT monotone");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"c1", c1_symbol_bound},     {"c2", c2_formula_equivalence}, {"c3", c3_stable_closed_form},
      {"c4", c4_alpha_one_limit},  {"c5", c5_norm_probe},          {"c6", c6_mc_pairing},
      {"c7", c7_subordination},    {"c8", c8_isometry},            {"c9", c9_gaussian_branch},
      {"c10", c10_limits},
  };
  const std::map<std::string, std::string> titles{
      {"c1", "symbol bound |m| <= 1"},        {"c2", "q-form equals integral form"},
      {"c3", "stable closed form"},           {"c4", "alpha -> 1 limit"},
      {"c5", "L^p norm probe"},               {"c6", "Monte-Carlo pairing"},
      {"c7", "differential subordination"},   {"c8", "L^p isometry"},
      {"c9", "Gaussian branch"},              {"c10", "eps and u limits"},
  };
  std::vector<std::string> wanted(argv + 1, argv + argc);
  for (const auto& w : wanted)
    if (!titles.count(w)) {
      std::fprintf(stderr, "unknown criterion %s\n", w.c_str());
      return 2;
    }
  int failed = 0;
  for (const auto& [id, run] : criteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), id) == wanted.end()) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("%s %-4s %-30s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id.c_str(), titles.at(id).c_str(),
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
