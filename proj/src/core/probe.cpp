#include <random>
#include <sstream>

#include "error.hpp"
#include "parallel.hpp"
#include "spectral.hpp"

namespace levymult {
namespace {

constexpr std::uint64_t kTrialStream = 0x7072'6f62'6501ULL;
constexpr std::uint64_t kAscentStream = 0x7072'6f62'6502ULL;

cplx complex_normal(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng)};
}

bool in_band(const GridSpec& g, std::size_t flat) {
  const auto k = g.wavenumber(flat);
  for (int a = 0; a < g.d; ++a)
    if (std::abs(k[a]) > g.N[a] / 8) return false;
  return true;
}

// A few random frequencies |k_a| <= N_a/8 with complex normal coefficients.
std::vector<cplx> random_trig(const GridSpec& g, std::mt19937_64& rng, std::string& desc) {
  std::uniform_int_distribution<int> count_dist(1, 8);
  const int count = count_dist(rng);
  std::vector<cplx> spec(g.total(), 0.0);
  for (int c = 0; c < count; ++c) {
    std::size_t flat = 0;
    for (int a = 0; a < g.d; ++a) {
      std::uniform_int_distribution<std::int64_t> kd(-g.N[a] / 8, g.N[a] / 8);
      flat = flat * static_cast<std::size_t>(g.N[a]) + static_cast<std::size_t>(kd(rng) + g.N[a] / 2);
    }
    spec[flat] += complex_normal(rng);
  }
  desc = "trig(terms=" + std::to_string(count) + ")";
  return spec;
}

// Sum of Gaussian bumps with random centres, widths and complex amplitudes.
std::vector<cplx> random_bumps(const GridSpec& g, std::mt19937_64& rng, std::string& desc) {
  std::uniform_int_distribution<int> count_dist(1, 4);
  const int count = count_dist(rng);
  std::vector<Vec> centres;
  std::vector<Vec> widths;
  std::vector<cplx> amps;
  for (int c = 0; c < count; ++c) {
    Vec centre(g.d), width(g.d);
    for (int a = 0; a < g.d; ++a) {
      std::uniform_real_distribution<double> cd(-g.L[a] / 8.0, g.L[a] / 8.0);
      std::uniform_real_distribution<double> wd(std::log(4.0 * g.dx(a)), std::log(g.L[a] / 24.0));
      centre[a] = cd(rng);
      width[a] = std::exp(wd(rng));
    }
    centres.push_back(centre);
    widths.push_back(width);
    amps.push_back(complex_normal(rng));
  }
  const SampledField f = sample(g, [&](const Vec& x) {
    cplx v{0.0, 0.0};
    for (int c = 0; c < count; ++c) {
      const double r2 = ((x - centres[c]).array() / widths[c].array()).square().sum();
      v += amps[c] * std::exp(-0.5 * r2);
    }
    return v;
  });
  desc = "bumps(count=" + std::to_string(count) + ")";
  return transform_forward(f);
}

double ratio(const SymbolGrid& m, const std::vector<cplx>& spec, double p) {
  std::vector<cplx> mspec(spec.size());
  for (std::size_t k = 0; k < spec.size(); ++k) mspec[k] = m.values[k] * spec[k];
  const double base = lp_norm(transform_inverse(m.grid, spec), p);
  if (base == 0.0) return 0.0;
  return lp_norm(transform_inverse(m.grid, mspec), p) / base;
}

}  // namespace

ProbeReport norm_probe(const SymbolGrid& m, double p, int trials, std::uint64_t seed, const ProbeOptions& opts) {
  if (!(p > 1.0) || !std::isfinite(p)) fail(ErrorCode::InvalidArgument, "p must lie in (1, inf)");
  if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be at least 1");
  const GridSpec& g = m.grid;
  g.validate();

  std::vector<double> ratios(static_cast<std::size_t>(trials));
  std::vector<std::string> descs(static_cast<std::size_t>(trials));
  auto make = [&](std::size_t t, std::string& desc) {
    std::mt19937_64 rng(stream_seed(seed, kTrialStream, t));
    return t % 2 == 0 ? random_trig(g, rng, desc) : random_bumps(g, rng, desc);
  };
  parallel_for(ratios.size(), [&](std::size_t t) {
    const std::vector<cplx> spec = make(t, descs[t]);
    ratios[t] = ratio(m, spec, p);
  });
  std::size_t best = 0;
  for (std::size_t t = 1; t < ratios.size(); ++t)
    if (ratios[t] > ratios[best]) best = t;

  // Coordinate ascent on the in-band coefficients of the best candidate.
  std::string desc;
  std::vector<cplx> spec = make(best, desc);
  double best_ratio = ratios[best];
  std::vector<std::size_t> band;
  double top = 0.0;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    if (!in_band(g, k)) continue;
    band.push_back(k);
    top = std::max(top, std::abs(spec[k]));
  }
  int accepted = 0;
  if (top > 0.0 && !band.empty()) {
    std::mt19937_64 rng(stream_seed(seed, kAscentStream, best));
    std::uniform_int_distribution<std::size_t> pick(0, band.size() - 1);
    for (int step = 0; step < opts.ascent_steps; ++step) {
      const std::size_t k = band[pick(rng)];
      const cplx old = spec[k];
      spec[k] += (0.5 * std::abs(old) + 0.05 * top) * complex_normal(rng);
      const double r = ratio(m, spec, p);
      if (r > best_ratio) {
        best_ratio = r;
        ++accepted;
      } else {
        spec[k] = old;
      }
    }
  }

  ProbeReport rep;
  rep.p = p;
  rep.bound = burkholder_constant(p);
  rep.best_ratio = best_ratio;
  std::ostringstream os;
  os << "trial " << best << " " << desc << " + ascent(" << opts.ascent_steps << " steps, " << accepted
     << " accepted)";
  rep.descriptor = os.str();
  rep.trials = trials;
  rep.seed = seed;
  rep.pass = best_ratio <= rep.bound * (1.0 + opts.tolerance);
  return rep;
}

}  // namespace levymult
