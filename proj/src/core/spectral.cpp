#include "spectral.hpp"

#include "error.hpp"

namespace levymult {

SampledField apply_multiplier(const SymbolGrid& m, const SampledField& f) {
  require_same_grid(m.grid, f.grid);
  std::vector<cplx> spec = transform_forward(f);
  for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= m.values[k];
  return transform_inverse(f.grid, spec);
}

PairingResult pairing(const SymbolGrid& m, const SampledField& f, const SampledField& g) {
  require_same_grid(m.grid, f.grid);
  require_same_grid(f.grid, g.grid);
  const GridSpec& grid = f.grid;
  const std::vector<cplx> fh = transform_forward(f);
  const std::vector<cplx> gh = transform_forward(g);
  std::vector<cplx> mf_hat(fh.size());
  for (std::size_t k = 0; k < fh.size(); ++k) mf_hat[k] = m.values[k] * fh[k];
  const SampledField mf = transform_inverse(grid, mf_hat);

  PairingResult r;
  const double dx = grid.cell_volume();
  double mf2 = 0.0, g2 = 0.0;
  for (std::size_t j = 0; j < mf.values.size(); ++j) {
    r.spatial += mf.values[j] * g.values[j];
    mf2 += std::norm(mf.values[j]);
    g2 += std::norm(g.values[j]);
  }
  r.spatial *= dx;
  for (std::size_t k = 0; k < fh.size(); ++k) r.spectral += mf_hat[k] * gh[grid.negate_frequency(k)];
  r.spectral *= grid.freq_cell_volume() / std::pow(2.0 * kPi, grid.d);

  const double scale = std::max(std::abs(r.spatial), std::sqrt(mf2 * dx) * std::sqrt(g2 * dx));
  r.relative_gap = scale > 0.0 ? std::abs(r.spatial - r.spectral) / scale : 0.0;
  if (r.relative_gap > 1e-10)
    fail(ErrorCode::PlancherelMismatch, "pairing evaluations differ by relative " + std::to_string(r.relative_gap));
  return r;
}

double lp_norm(const SampledField& f, double p) {
  if (!(p > 1.0) || !std::isfinite(p)) fail(ErrorCode::InvalidArgument, "p must lie in (1, inf)");
  double s = 0.0;
  for (cplx v : f.values) s += std::pow(std::abs(v), p);
  return std::pow(s * f.grid.cell_volume(), 1.0 / p);
}

SpectralEvaluator::SpectralEvaluator(const SampledField& f, const Mat& A, const LevyData& data, double prune) {
  const GridSpec& grid = f.grid;
  if (A.rows() != grid.d) fail(ErrorCode::ShapeMismatch, "A must have d rows");
  const std::vector<cplx> fh = transform_forward(f);
  double top = 0.0;
  for (cplx v : fh) top = std::max(top, std::abs(v));
  const double norm = grid.freq_cell_volume() / std::pow(2.0 * kPi, grid.d);
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < fh.size(); ++k)
    if (std::abs(fh[k]) > prune * top) keep.push_back(k);
  xi_.resize(grid.d, static_cast<Eigen::Index>(keep.size()));
  weights_.resize(keep.size());
  psi_.resize(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const Vec xi = grid.frequency(keep[i]);
    xi_.col(static_cast<Eigen::Index>(i)) = xi;
    weights_[i] = norm * fh[keep[i]];
    psi_[i] = psi(data, Vec(-(A.transpose() * xi)));
  }
}

cplx SpectralEvaluator::eval(double s, const Vec& x) const {
  const Vec phase = xi_.transpose() * x;
  cplx sum{0.0, 0.0};
  for (std::size_t i = 0; i < weights_.size(); ++i)
    sum += weights_[i] * std::exp(s * psi_[i] - kI * phase[static_cast<Eigen::Index>(i)]);
  return sum;
}

cplx semigroup_eval(const SampledField& f, const Mat& A, const LevyData& data, double s, const Vec& x) {
  return SpectralEvaluator(f, A, data).eval(s, x);
}

}  // namespace levymult
