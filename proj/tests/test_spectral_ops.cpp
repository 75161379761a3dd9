#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "error.hpp"
#include "spectral.hpp"

using namespace levymult;

namespace {

Mat m11(double v) { return Mat::Constant(1, 1, v); }

SampledField gaussian(const GridSpec& grid, double width = 1.0, const Vec& center = Vec()) {
  return sample(grid, [&](const Vec& x) {
    const Vec y = center.size() ? Vec(x - center) : x;
    return cplx(std::exp(-0.5 * y.squaredNorm() / (width * width)));
  });
}

double max_gap(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Finite-variation single-atom data: Psi(zeta) = w (e^{i zeta z} - 1).
LevyData poisson_atom(double z, double w) {
  LevyData data = make_data(1, 1, atoms_1d({{z, w}}), m11(1.0), m11(1.0));
  data.compensated = false;
  return data;
}

}  // namespace

TEST_CASE("forward transform of a Gaussian") {
  const GridSpec grid = GridSpec::uniform(1, 1024, 40.0);
  const std::vector<cplx> fhat = transform_forward(gaussian(grid));
  double gap = 0.0;
  for (std::size_t k = 0; k < grid.total(); ++k) {
    const double xi = grid.frequency(k)[0];
    gap = std::max(gap, std::abs(fhat[k] - std::sqrt(2.0 * kPi) * std::exp(-0.5 * xi * xi)));
  }
  CHECK(gap < 1e-8);

  // Shifted bump picks up the phase e^{i xi c}.
  const SampledField shifted = gaussian(grid, 1.0, Vec::Constant(1, 1.5));
  const std::vector<cplx> shat = transform_forward(shifted);
  for (std::size_t k = 0; k < grid.total(); k += 37) {
    const double xi = grid.frequency(k)[0];
    CHECK(std::abs(shat[k] - std::polar(std::sqrt(2.0 * kPi) * std::exp(-0.5 * xi * xi), 1.5 * xi)) < 1e-8);
  }
}

TEST_CASE("transform round trip") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (int d = 1; d <= 3; ++d) {
    const GridSpec grid = GridSpec::uniform(d, d == 3 ? 8 : 32, 7.0);
    SampledField f{grid, std::vector<cplx>(grid.total())};
    for (auto& v : f.values) v = cplx(normal(rng), normal(rng));
    const SampledField back = transform_inverse(grid, transform_forward(f));
    CHECK(max_gap(back.values, f.values) < 1e-12);
  }
}

TEST_CASE("identity and zero multipliers") {
  const GridSpec grid = GridSpec::uniform(2, 64, 16.0);
  const SampledField f = gaussian(grid, 1.3, Vec{{0.5, -1.0}});
  CHECK(max_gap(apply_multiplier(constant_symbol(grid, 1.0), f).values, f.values) < 1e-13);
  for (cplx v : apply_multiplier(constant_symbol(grid, 0.0), f).values) CHECK(v == 0.0);
  const SampledField half = apply_multiplier(constant_symbol(grid, cplx(0, 0.5)), f);
  for (std::size_t j = 0; j < f.values.size(); ++j) CHECK(std::abs(half.values[j] - cplx(0, 0.5) * f.values[j]) < 1e-13);
}

TEST_CASE("Riesz multiplier maps (2 - |x|^2) G to 2 x1 x2 G") {
  const GridSpec grid = GridSpec::uniform(2, 256, 20.0);
  const SampledField f = sample(grid, [](const Vec& x) { return cplx((2.0 - x.squaredNorm()) * std::exp(-0.5 * x.squaredNorm())); });
  const SampledField out = apply_multiplier(evaluate_grid(NamedPreset{PresetId::Riesz, 2, 0, 1}, grid), f);
  double gap = 0.0;
  for (std::size_t j = 0; j < grid.total(); ++j) {
    const Vec x = grid.position(j);
    gap = std::max(gap, std::abs(out.values[j] - 2.0 * x[0] * x[1] * std::exp(-0.5 * x.squaredNorm())));
  }
  CHECK(gap < 1e-8);
}

TEST_CASE("pairing") {
  const GridSpec grid = GridSpec::uniform(1, 1024, 40.0);
  const SampledField f = gaussian(grid);
  const PairingResult id = pairing(constant_symbol(grid, 1.0), f, f);
  CHECK(std::abs(id.spatial - std::sqrt(kPi)) < 1e-12);
  CHECK(std::abs(id.spectral - std::sqrt(kPi)) < 1e-12);
  CHECK(id.relative_gap < 1e-12);

  // Odd symbol against real even inputs.
  const PairingResult odd = pairing(evaluate_grid(StableClosedForm{0.5}, grid), f, f);
  CHECK(std::abs(odd.spectral) < 1e-12);
  CHECK(std::abs(odd.spatial) < 1e-12);

  const SampledField g = gaussian(grid, 0.7, Vec::Constant(1, 1.0));
  for (double alpha : {0.5, 1.0, 1.5}) {
    const PairingResult r = pairing(evaluate_grid(StableClosedForm{alpha}, grid), f, g);
    CHECK(std::abs(r.spatial - r.spectral) <= 1e-10 * std::max(1.0, std::abs(r.spatial)));
  }

  const GridSpec other = GridSpec::uniform(1, 512, 40.0);
  CHECK_THROWS_AS(pairing(constant_symbol(other, 1.0), f, f), Error);
}

TEST_CASE("lp_norm") {
  const GridSpec grid = GridSpec::uniform(1, 1024, 40.0);
  const SampledField f = gaussian(grid);
  CHECK(lp_norm(f, 2.0) == doctest::Approx(std::pow(kPi, 0.25)).epsilon(1e-12));
  CHECK(lp_norm(f, 1.5) == doctest::Approx(std::pow(std::sqrt(2.0 * kPi / 1.5), 1.0 / 1.5)).epsilon(1e-12));
  CHECK_THROWS_AS(lp_norm(f, 1.0), Error);
  CHECK(lp_norm(f, 4.0) == doctest::Approx(std::pow(std::sqrt(kPi / 2.0), 0.25)).epsilon(1e-12));
  SampledField twice = f;
  for (auto& v : twice.values) v *= cplx(0.0, 2.0);
  for (double p : {1.5, 2.0, 3.0}) CHECK(lp_norm(twice, p) == doctest::Approx(2.0 * lp_norm(f, p)).epsilon(1e-13));
}

TEST_CASE("norm probe") {
  const GridSpec grid = GridSpec::uniform(1, 256, 20.0);
  const ProbeReport id = norm_probe(constant_symbol(grid, 1.0), 2.0, 20, 5);
  CHECK(id.bound == 1.0);
  CHECK(id.best_ratio == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(id.pass);
  const ProbeReport p4 = norm_probe(constant_symbol(grid, 1.0), 4.0, 20, 5);
  CHECK(p4.bound == doctest::Approx(3.0));
  CHECK(p4.pass);
  const ProbeReport p43 = norm_probe(constant_symbol(grid, 1.0), 4.0 / 3.0, 20, 5);
  CHECK(p43.bound == doctest::Approx(3.0));

  const ProbeReport big = norm_probe(constant_symbol(grid, 2.0), 2.0, 20, 5);
  CHECK(big.best_ratio == doctest::Approx(2.0).epsilon(1e-9));
  CHECK_FALSE(big.pass);

  const SymbolGrid stable = evaluate_grid(StableClosedForm{0.5}, grid);
  const ProbeReport a = norm_probe(stable, 3.0, 30, 11);
  const ProbeReport b = norm_probe(stable, 3.0, 30, 11);
  CHECK(a.best_ratio == b.best_ratio);
  CHECK(a.descriptor == b.descriptor);
  CHECK(a.best_ratio > 0.0);
  CHECK(a.best_ratio <= a.bound * 1.005);

  CHECK_THROWS_AS(norm_probe(stable, 1.0, 10, 1), Error);
  CHECK_THROWS_AS(norm_probe(stable, 2.0, 0, 1), Error);
}

TEST_CASE("semigroup at s = 0 interpolates the input") {
  const GridSpec grid = GridSpec::uniform(1, 512, 30.0);
  const SampledField f = gaussian(grid, 1.2);
  const LevyData data = poisson_atom(0.7, 1.0);
  for (double x : {-2.013, 0.0, 0.31, 1.777}) {
    const cplx v = semigroup_eval(f, m11(1.0), data, 0.0, Vec::Constant(1, x));
    CHECK(std::abs(v - std::exp(-0.5 * x * x / 1.44)) < 1e-10);
  }
}

TEST_CASE("semigroup of a single atom is a Poisson average") {
  const GridSpec grid = GridSpec::uniform(1, 1024, 60.0);
  const SampledField f = gaussian(grid);
  for (double A : {1.0, -0.6}) {
    const double z = 1.3, w = 2.0, s = 0.8;
    const LevyData data = poisson_atom(z, w);
    for (double x : {-1.1, 0.0, 0.45, 2.5}) {
      double expected = 0.0, weight = std::exp(-w * s);
      for (int k = 0; k <= 30; ++k) {
        const double y = x + A * k * z;
        expected += weight * std::exp(-0.5 * y * y);
        weight *= w * s / (k + 1);
      }
      CHECK(std::abs(semigroup_eval(f, m11(A), data, s, Vec::Constant(1, x)) - expected) < 1e-10);
    }
  }
}

TEST_CASE("semigroup contraction, reality and composition") {
  const GridSpec grid = GridSpec::uniform(2, 64, 24.0);
  const SampledField f = gaussian(grid, 1.5, Vec{{0.3, -0.2}});
  AtomsMeasure nu;
  nu.points = Mat(2, 3);
  nu.points << 0.8, -0.5, 1.2, 0.3, 1.1, -0.9;
  nu.weights = Vec(3);
  nu.weights << 0.9, 0.6, 0.4;
  Mat A(2, 2);
  A << 1.0, 0.2, -0.3, 0.9;
  LevyData data = make_data(2, 2, nu, A, A);
  data.gamma << 0.2, -0.1;

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int i = 0; i < 40; ++i) {
    const Vec x{{u(rng), u(rng)}};
    for (double s : {0.1, 0.5, 1.0}) {
      const cplx v = semigroup_eval(f, A, data, s, x);
      CHECK(std::abs(v) <= 1.0 + 1e-10);
      CHECK(std::abs(v.imag()) < 1e-12);
    }
  }

  const double s = 0.3, t = 0.45;
  const SampledField pt = sample(grid, [&](const Vec& x) { return semigroup_eval(f, A, data, t, x); });
  for (int i = 0; i < 20; ++i) {
    const Vec x{{u(rng), u(rng)}};
    CHECK(std::abs(semigroup_eval(pt, A, data, s, x) - semigroup_eval(f, A, data, s + t, x)) < 1e-10);
  }
}
