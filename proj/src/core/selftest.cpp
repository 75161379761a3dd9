#include <functional>
#include <random>
#include <sstream>

#include "brownian.hpp"
#include "commands.hpp"
#include "error.hpp"
#include "io.hpp"
#include "mc.hpp"
#include "quadrature.hpp"
#include "spectral.hpp"

namespace levymult {
namespace {

using Check = std::function<std::pair<bool, std::string>()>;

std::string num(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

LevyData two_atom_model(bool equal_matrices) {
  AtomsMeasure nu;
  nu.points = Mat(2, 3);
  nu.points << 0.6, -0.4, 1.3, 0.2, 0.9, -0.7;
  nu.weights = Vec(3);
  nu.weights << 0.8, 0.5, 0.3;
  Mat A(2, 2), B(2, 2);
  A << 1.0, 0.3, -0.2, 0.8;
  B = equal_matrices ? A : Mat(Mat::Identity(2, 2) * -1.0);
  LevyData data = make_data(2, 2, nu, A, B);
  data.gamma << 0.1, -0.2;
  return data;
}

Modulator complex_table(std::size_t atoms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  TableMod t;
  for (std::size_t i = 0; i < atoms; ++i) t.values.push_back(std::polar(u(rng), 2.0 * kPi * u(rng)));
  return {t, ConstantMod{}};
}

Vec random_vec(std::mt19937_64& rng, int n, double scale) {
  std::normal_distribution<double> normal;
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = scale * normal(rng);
  return v;
}

}  // namespace

std::vector<SelftestItem> run_selftest(std::uint64_t seed) {
  std::vector<std::pair<std::string, Check>> checks;

  checks.emplace_back("quadrature.polynomial_exactness", [] {
    double worst = 0.0;
    for (int deg = 0; deg < 32; ++deg) {
      const auto r = integrate_adaptive([&](double x) { return cplx(std::pow(x, deg)); }, 0.0, 1.0);
      worst = std::max(worst, std::abs(r.value.real() - 1.0 / (deg + 1)));
    }
    return std::pair{worst < 1e-13, "max error " + num(worst)};
  });

  checks.emplace_back("levy.exponent_nonpositive_real_part", [seed] {
    std::mt19937_64 rng(seed);
    const LevyData data = two_atom_model(false);
    double worst = -1.0;
    for (int i = 0; i < 200; ++i) worst = std::max(worst, psi(data, random_vec(rng, 2, 3.0)).real());
    return std::pair{worst <= 1e-14 && std::abs(psi(data, Vec::Zero(2))) < 1e-15, "max Re psi " + num(worst)};
  });

  checks.emplace_back("levy.cross_form_routes_agree", [seed] {
    std::mt19937_64 rng(seed + 1);
    const LevyData data = two_atom_model(false);
    const Modulator mod = complex_table(3, seed);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Vec a = random_vec(rng, 2, 2.0), b = random_vec(rng, 2, 2.0);
      worst = std::max(worst, std::abs(cross_form(data, mod, a, b, CrossRoute::Direct) -
                                       cross_form(data, mod, a, b, CrossRoute::Difference)));
    }
    return std::pair{worst < 1e-12, "max gap " + num(worst)};
  });

  checks.emplace_back("symbol.q_matches_integral", [seed] {
    std::mt19937_64 rng(seed + 2);
    const LevyData data = two_atom_model(false);
    const Modulator mod = complex_table(3, seed + 3);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Vec xi = random_vec(rng, 2, 2.0);
      worst = std::max(worst, std::abs(symbol_q(data, mod, xi) - symbol_integral(data, mod, xi)));
    }
    return std::pair{worst < 1e-10, "max gap " + num(worst)};
  });

  checks.emplace_back("symbol.bound_on_grids", [] {
    const GridSpec g1 = GridSpec::uniform(1, 128, 16.0);
    const GridSpec g2 = GridSpec::uniform(2, 32, 16.0);
    double worst = 0.0;
    const LevyData one = make_data(1, 1, atoms_1d({{1.0, 1.0}}), Mat::Constant(1, 1, -1.0), Mat::Constant(1, 1, 1.0));
    worst = std::max(worst, evaluate_grid(QForm{one, Modulator::identity(), 1.0}, g1).max_abs);
    worst = std::max(worst, evaluate_grid(StableClosedForm{0.5}, g1).max_abs);
    worst = std::max(worst, evaluate_grid(NamedPreset{PresetId::Riesz, 2, 0, 1}, g2).max_abs);
    worst = std::max(worst, evaluate_grid(GaussianForm{Mat::Identity(2, 2), Mat::Identity(2, 2),
                                                       CMat::Identity(2, 2), 1.0},
                                          g2).max_abs);
    worst = std::max(worst, evaluate_grid(QForm{two_atom_model(true), complex_table(3, 7), 1.0}, g2).max_abs);
    return std::pair{worst <= 1.0 + kSymbolBoundSlack, "max |m| " + num(worst)};
  });

  checks.emplace_back("symbol.gaussian_limit_is_riesz", [seed] {
    std::mt19937_64 rng(seed + 4);
    CMat K = CMat::Zero(2, 2);
    K(0, 1) = K(1, 0) = -1.0;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Vec xi = random_vec(rng, 2, 1.0);
      worst = std::max(worst, std::abs(symbol_gaussian_limit(Mat::Identity(2, 2), K, xi) -
                                       preset_riesz_symbol(0, 1, xi)));
    }
    return std::pair{worst < 1e-14, "max gap " + num(worst)};
  });

  checks.emplace_back("spectral.transform_round_trip", [] {
    const GridSpec grid = GridSpec::uniform(2, 32, 12.0);
    const SampledField f = sample(grid, [](const Vec& x) { return cplx(std::exp(-x.squaredNorm()), x[0]); });
    const SampledField back = transform_inverse(grid, transform_forward(f));
    double worst = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) worst = std::max(worst, std::abs(back.values[i] - f.values[i]));
    return std::pair{worst < 1e-12, "max error " + num(worst)};
  });

  checks.emplace_back("spectral.pairing_routes_agree", [] {
    const GridSpec grid = GridSpec::uniform(1, 256, 16.0);
    const SampledField f = sample(grid, [](const Vec& x) { return cplx(std::exp(-x[0] * x[0])); });
    const SampledField g = sample(grid, [](const Vec& x) { return cplx(std::exp(-0.5 * (x[0] - 1) * (x[0] - 1))); });
    const PairingResult r = pairing(evaluate_grid(StableClosedForm{0.7}, grid), f, g);
    return std::pair{r.relative_gap < 1e-10, "relative gap " + num(r.relative_gap)};
  });

  checks.emplace_back("spectral.probe_p2_plancherel", [seed] {
    const GridSpec grid = GridSpec::uniform(1, 128, 16.0);
    const ProbeReport r = norm_probe(evaluate_grid(StableClosedForm{0.5}, grid), 2.0, 20, seed);
    return std::pair{r.pass, "best ratio " + num(r.best_ratio)};
  });

  checks.emplace_back("mc.pairing_matches_spectral", [seed] {
    const GridSpec grid = GridSpec::uniform(1, 128, 16.0);
    const LevyData data = make_data(1, 1, atoms_1d({{0.7, 0.9}, {-1.2, 0.4}}), Mat::Constant(1, 1, -1.0),
                                    Mat::Constant(1, 1, 1.0));
    const Modulator mod{ConstantMod{cplx(0.3, 0.8)}, ConstantMod{}};
    const SampledField f = sample(grid, [](const Vec& x) { return cplx(std::exp(-x[0] * x[0] / 2)); });
    const SampledField g = sample(grid, [](const Vec& x) { return cplx(std::exp(-(x[0] - 0.5) * (x[0] - 0.5))); });
    const cplx ref = pairing(evaluate_grid(QForm{data, mod, 1.0}, grid, false), f, g).spectral;
    McOptions opts;
    opts.paths = 20000;
    opts.seed = seed;
    const PairingEstimate e = estimate_pairing(f, g, data, mod, opts);
    const double joint = std::abs(e.standard_error);
    const double z = std::abs(e.estimate - ref) / joint;
    return std::pair{z <= 3.0 && e.routes_agree, "gap / joint SE " + num(z)};
  });

  checks.emplace_back("mc.differential_subordination", [seed] {
    const GridSpec grid = GridSpec::uniform(1, 128, 16.0);
    const LevyData data = make_data(1, 1, atoms_1d({{0.7, 1.5}, {-1.2, 0.8}}), Mat::Constant(1, 1, 1.0),
                                    Mat::Constant(1, 1, 1.0));
    const SampledField g = sample(grid, [](const Vec& x) { return cplx(std::exp(-x[0] * x[0])); });
    McOptions opts;
    opts.paths = 2000;
    opts.seed = seed;
    const SubordinationReport r =
        subordination_run(g, data, {SignMod{0}, ConstantMod{}}, {Vec::Zero(1), Vec::Ones(1)}, opts);
    return std::pair{r.holds, std::to_string(r.violations) + " violations in " + std::to_string(r.jumps) + " jumps"};
  });

  checks.emplace_back("io.binary_round_trip", [] {
    const GridSpec grid = GridSpec::uniform(2, 8, 4.0);
    const SymbolGrid m = evaluate_grid(NamedPreset{PresetId::Riesz, 2, 0, 1}, grid);
    const SymbolGrid back = decode_grid(encode_grid(m));
    return std::pair{back.grid == m.grid && back.values == m.values, std::string()};
  });

  checks.emplace_back("config.round_trip", [] {
    const RunConfig c = parse_config(
        R"({"d":1,"n":1,"A":[[-1]],"B":[[1]],"measure":{"type":"stable","alpha":0.5},"symbol":"q"})");
    return std::pair{parse_config(emit_config(c)) == c, std::string()};
  });

  std::vector<SelftestItem> out;
  for (auto& [name, check] : checks) {
    SelftestItem item{name, false, {}};
    try {
      auto [ok, detail] = check();
      item.pass = ok;
      item.detail = detail;
    } catch (const std::exception& e) {
      item.detail = e.what();
    }
    out.push_back(item);
  }
  return out;
}

}  // namespace levymult
