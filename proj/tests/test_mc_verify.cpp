#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brownian.hpp"
#include "error.hpp"
#include "mc.hpp"

using namespace levymult;

namespace {

Mat m11(double v) { return Mat::Constant(1, 1, v); }

SampledField bump(const GridSpec& grid, double center, double width) {
  return sample(grid, [&](const Vec& x) { return cplx(std::exp(-0.5 * (x[0] - center) * (x[0] - center) / (width * width))); });
}

LevyData two_atoms(double A, double B) {
  LevyData data = make_data(1, 1, atoms_1d({{0.8, 1.2}, {-1.5, 0.5}}), m11(A), m11(B));
  data.gamma << 0.1;
  return data;
}

const GridSpec& grid1() {
  static const GridSpec g = GridSpec::uniform(1, 256, 32.0);
  return g;
}

}  // namespace

TEST_CASE("compound Poisson sampler") {
  const AtomsMeasure nu = atoms_1d({{0.8, 1.2}, {-1.5, 0.5}});
  RealStats count, left;
  for (std::uint64_t s = 0; s < 20000; ++s) {
    const JumpPath p = simulate_cpp(nu, s);
    CHECK(p.intensity == doctest::Approx(1.7));
    for (std::size_t i = 1; i < p.jumps(); ++i) CHECK(p.times[i] > p.times[i - 1]);
    if (p.jumps()) {
      CHECK(p.times.front() > 0.0);
      CHECK(p.times.back() <= 1.0);
    }
    count.add(static_cast<double>(p.jumps()));
    for (std::size_t i = 0; i < p.jumps(); ++i) {
      CHECK(p.marks(0, static_cast<Eigen::Index>(i)) == nu.points(0, p.atoms[i]));
      left.add(p.atoms[i] == 0 ? 1.0 : 0.0);
    }
  }
  CHECK(std::abs(count.mean() - 1.7) < 4.0 * count.standard_error());
  CHECK(std::abs(left.mean() - 1.2 / 1.7) < 4.0 * left.standard_error());

  const JumpPath a = simulate_cpp(nu, 99), b = simulate_cpp(nu, 99);
  CHECK(a.times == b.times);
  CHECK(a.atoms == b.atoms);
}

TEST_CASE("paths without jumps") {
  const LevyData data = two_atoms(1.0, 1.0);
  const SampledField f = bump(grid1(), 0.0, 1.0);
  const MartingaleModel model(data, Modulator::identity(), f, f);
  JumpPath empty;
  empty.marks = Mat(1, 0);
  empty.intensity = 1.7;
  const Vec x = Vec::Constant(1, 0.4);
  const MartingaleTrace F = model.F(empty, x);
  const Vec h = model.drift();
  CHECK(std::abs(F.end - std::exp(-0.5 * (0.4 + h[0]) * (0.4 + h[0]))) < 1e-10);
  CHECK(F.qv_increments.empty());
  CHECK(model.G(empty, x).qv_increments.empty());
}

TEST_CASE("martingale means") {
  const LevyData data = two_atoms(1.0, -0.7);
  const SampledField f = bump(grid1(), 0.3, 1.0), g = bump(grid1(), -0.5, 1.4);
  const MartingaleModel model(data, {TableMod{{cplx(0, 1), -0.5}}, ConstantMod{}}, f, g);
  McOptions opts;
  opts.paths = 20000;
  for (double x : {-1.0, 0.5}) {
    CHECK(martingale_check_F(model, Vec::Constant(1, x), opts).pass);
    CHECK(martingale_check_G(model, Vec::Constant(1, x), opts).pass);
  }
}

TEST_CASE("G with phi = 1 reproduces F - F_0; phi = 0 gives zero") {
  const LevyData data = two_atoms(0.9, 0.9);
  const SampledField g = bump(grid1(), 0.2, 1.1);
  const MartingaleModel one(data, Modulator::identity(), g, g);
  const MartingaleModel zero(data, Modulator::constant(0.0), g, g);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const JumpPath path = simulate_cpp(one.atoms(), s);
    const Vec x = Vec::Constant(1, -0.3 + 0.02 * s);
    const MartingaleTrace F = one.F(path, x), G = one.G(path, x);
    CHECK(std::abs(G.end - (F.end - F.start)) < 1e-8);
    for (std::size_t i = 0; i < path.jumps(); ++i) CHECK(std::abs(G.jump(i) - F.jump(i)) < 1e-12);
    CHECK(std::abs(zero.G(path, x).end) == 0.0);
  }
}

TEST_CASE("differential subordination") {
  const LevyData data = two_atoms(1.0, 1.0);
  const SampledField g = bump(grid1(), 0.0, 1.0);
  const MartingaleModel id(data, Modulator::identity(), g, g);
  const MartingaleModel half(data, Modulator::constant(0.5), g, g);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const JumpPath path = simulate_cpp(id.atoms(), s);
    const Vec x = Vec::Constant(1, 0.7);
    const MartingaleTrace F = id.F(path, x);
    CHECK(check_subordination(F, id.G(path, x)).holds);
    const MartingaleTrace H = half.G(path, x);
    CHECK(check_subordination(F, H).holds);
    for (std::size_t i = 0; i < path.jumps(); ++i)
      CHECK(H.qv_increments[i] == doctest::Approx(0.25 * F.qv_increments[i]).epsilon(1e-12));
  }
  MartingaleTrace F, G;
  F.qv_increments = {1.0};
  G.qv_increments = {1.5};
  F.times = G.times = {0.5};
  const SubordinationResult bad = check_subordination(F, G);
  CHECK_FALSE(bad.holds);
  CHECK(bad.max_violation == doctest::Approx(0.5));
  G.times = {0.6};
  CHECK_THROWS_AS(check_subordination(F, G), Error);

  McOptions opts;
  opts.paths = 2000;
  const Modulator phase{TableMod{{cplx(0.6, 0.8), cplx(0, -1)}}, ConstantMod{}};
  const SubordinationReport rep = subordination_run(g, data, phase, {Vec::Constant(1, 0.0), Vec::Constant(1, 1.2)}, opts);
  CHECK(rep.holds);
  CHECK(rep.jumps > 0);
}

TEST_CASE("pairing estimate matches the spectral pairing") {
  const SampledField f = bump(grid1(), 0.3, 1.0), g = bump(grid1(), -0.4, 1.3);
  McOptions opts;
  opts.paths = 20000;
  opts.quadrature_checks = 8;
  struct Case {
    LevyData data;
    Modulator mod;
  };
  std::vector<Case> cases{
      {two_atoms(1.0, 1.0), Modulator::identity()},
      {two_atoms(1.0, -0.6), {TableMod{{cplx(0, 1), 0.5}}, ConstantMod{}}},
  };
  for (auto& c : cases) {
    const cplx ref = pairing(evaluate_grid(QForm{c.data, c.mod, 1.0}, grid1(), false), f, g).spectral;
    const PairingEstimate est = estimate_pairing(f, g, c.data, c.mod, opts);
    CHECK(est.paths == opts.paths);
    CHECK(est.routes_agree);
    CHECK(std::abs(est.estimate.real() - ref.real()) <= 4.0 * est.standard_error.real() + 1e-12);
    CHECK(std::abs(est.estimate.imag() - ref.imag()) <= 4.0 * est.standard_error.imag() + 1e-12);
    CHECK(est.quadrature_max_change < 1e-8);
  }
  LevyData gauss = two_atoms(1.0, 1.0);
  gauss.mu.thetas = Mat::Ones(1, 1);
  gauss.mu.weights = Vec::Ones(1);
  CHECK_THROWS_AS(estimate_pairing(f, g, gauss, Modulator::identity(), opts), Error);
}

TEST_CASE("isometry") {
  const SampledField f = bump(grid1(), 0.0, 1.2);
  for (double p : {2.0, 3.0}) {
    const IsometryReport r = isometry_check(f, two_atoms(1.0, 1.0), p, 400, 4, 3);
    CHECK(r.target == doctest::Approx(std::pow(lp_norm(f, p), p)).epsilon(1e-12));
    CHECK(r.pass);
  }
}

TEST_CASE("Burkholder inequality") {
  const SampledField g = bump(grid1(), 0.0, 1.0);
  const MartingaleModel model(two_atoms(1.0, 1.0), {TableMod{{-1.0, cplx(0, 1)}}, ConstantMod{}}, g, g);
  McOptions opts;
  opts.paths = 5000;
  for (double q : {1.5, 2.0, 4.0}) {
    const BurkholderCheck r = burkholder_check(model, Vec::Constant(1, 0.2), q, opts);
    CHECK(r.pass);
    CHECK(r.lhs <= r.rhs * 1.05);
  }
}

TEST_CASE("Brownian pairing with K = 0 vanishes") {
  const SampledField f = bump(grid1(), 0.0, 1.0), g = bump(grid1(), 0.5, 1.2);
  BrownianOptions opts;
  opts.paths = 200;
  opts.steps = 100;
  const std::vector<BrownianEstimate> est = brownian_pairing(f, g, m11(1.0), m11(1.0), {CMat::Zero(1, 1)}, opts);
  REQUIRE(est.size() == 1);
  CHECK(est[0].estimate == cplx(0.0));
  CHECK(est[0].fine_estimate == cplx(0.0));
}

TEST_CASE("Brownian increments") {
  const BrownianPath p = simulate_brownian(2, 4000, 12, 0.5);
  CHECK(p.steps() == 4000);
  CHECK(p.h == doctest::Approx(1.0 / 4000));
  const double var = p.increments.squaredNorm() / (2.0 * 4000.0);
  CHECK(var == doctest::Approx(2.0 * 0.5 * p.h).epsilon(0.1));
  CHECK(simulate_brownian(2, 10, 12).increments == simulate_brownian(2, 10, 12).increments);
}

TEST_CASE("quadratic variation of the Brownian martingale converges under refinement") {
  const SampledField g = bump(grid1(), 0.0, 1.0);
  const QvConvergence qv =
      brownian_qv_check(g, m11(1.0), CMat::Constant(1, 1, cplx(0.6, 0.3)), Vec::Constant(1, 0.4), {50, 100, 200, 400}, 300, 5);
  CHECK(qv.decreasing);
  REQUIRE(qv.rms.size() == 4);
  const double ratio = std::pow(qv.rms.front() / qv.rms.back(), 1.0 / 3.0);
  CHECK(ratio == doctest::Approx(std::sqrt(2.0)).epsilon(0.25));
}
