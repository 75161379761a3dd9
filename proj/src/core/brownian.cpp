#include "brownian.hpp"

#include <random>

#include "error.hpp"
#include "mc.hpp"

namespace levymult {
namespace {

constexpr std::uint64_t kBrownStream = 0x6272'6f77'6e01ULL;
constexpr std::uint64_t kQvStream = 0x6272'6f77'6e02ULL;

// e^{i (xi_k, y)} for all kept frequencies from per-axis power tables.
class PhaseTable {
 public:
  PhaseTable(const GridSpec& grid, const std::vector<std::vector<std::int64_t>>& ks) : grid_(grid), ks_(ks) {
    lo_.assign(grid.d, 0);
    hi_.assign(grid.d, 0);
    for (int a = 0; a < grid.d; ++a) {
      lo_[a] = hi_[a] = ks.empty() ? 0 : ks[0][a];
      for (const auto& k : ks) {
        lo_[a] = std::min(lo_[a], k[a]);
        hi_[a] = std::max(hi_[a], k[a]);
      }
    }
    powers_.resize(grid.d);
    for (int a = 0; a < grid.d; ++a) powers_[a].resize(static_cast<std::size_t>(hi_[a] - lo_[a] + 1));
  }

  // Fills out[k] = e^{i sign (xi_k, y)}.
  void fill(const Vec& y, double sign, std::vector<cplx>& out) {
    for (int a = 0; a < grid_.d; ++a) {
      const double theta = sign * grid_.dxi(a) * y[a];
      const cplx z = std::polar(1.0, theta);
      cplx p = std::polar(1.0, theta * static_cast<double>(lo_[a]));
      for (auto& v : powers_[a]) {
        v = p;
        p *= z;
      }
    }
    out.resize(ks_.size());
    for (std::size_t k = 0; k < ks_.size(); ++k) {
      cplx v = powers_[0][static_cast<std::size_t>(ks_[k][0] - lo_[0])];
      for (int a = 1; a < grid_.d; ++a) v *= powers_[a][static_cast<std::size_t>(ks_[k][a] - lo_[a])];
      out[k] = v;
    }
  }

 private:
  GridSpec grid_;
  std::vector<std::vector<std::int64_t>> ks_;
  std::vector<std::int64_t> lo_, hi_;
  std::vector<std::vector<cplx>> powers_;
};

struct BrownStats {
  std::vector<ComplexStats> coarse, fine, diff;
  void merge(const BrownStats& o) {
    if (coarse.empty()) {
      coarse.resize(o.coarse.size());
      fine.resize(o.fine.size());
      diff.resize(o.diff.size());
    }
    for (std::size_t i = 0; i < o.coarse.size(); ++i) {
      coarse[i].merge(o.coarse[i]);
      fine[i].merge(o.fine[i]);
      diff[i].merge(o.diff[i]);
    }
  }
};

}  // namespace

BrownianPath simulate_brownian(int n, std::size_t steps, std::uint64_t seed, double s) {
  if (steps == 0) fail(ErrorCode::InvalidArgument, "steps must be positive");
  BrownianPath path;
  path.h = 1.0 / static_cast<double>(steps);
  path.s = s;
  path.increments.resize(n, static_cast<Eigen::Index>(steps));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(2.0 * s * path.h));
  for (Eigen::Index j = 0; j < path.increments.cols(); ++j)
    for (int i = 0; i < n; ++i) path.increments(i, j) = normal(rng);
  return path;
}

std::vector<BrownianEstimate> brownian_pairing(const SampledField& f, const SampledField& g, const Mat& A,
                                               const Mat& B, const std::vector<CMat>& Ks,
                                               const BrownianOptions& opts) {
  require_same_grid(f.grid, g.grid);
  const GridSpec& grid = f.grid;
  const int d = grid.d;
  const auto n = static_cast<int>(A.cols());
  if (A.rows() != d || B.rows() != d || B.cols() != n) fail(ErrorCode::ShapeMismatch, "A and B must be d x n");
  if (opts.steps < 100) fail(ErrorCode::InvalidArgument, "Brownian branch needs at least 100 steps");
  if (!(opts.s > 0.0)) fail(ErrorCode::InvalidArgument, "variance scale must be positive");
  for (const CMat& K : Ks) {
    check_k_norm(K);
    if (K.rows() != n) fail(ErrorCode::ShapeMismatch, "K must be n x n");
  }

  const std::vector<cplx> fh = transform_forward(f);
  const std::vector<cplx> gh = transform_forward(g);
  const double norm = grid.freq_cell_volume() / std::pow(2.0 * kPi, d);
  std::vector<cplx> w_all(fh.size());
  double top = 0.0;
  for (std::size_t k = 0; k < fh.size(); ++k) {
    w_all[k] = norm * fh[k] * gh[grid.negate_frequency(k)];
    top = std::max(top, std::abs(w_all[k]));
  }
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < fh.size(); ++k)
    if (std::abs(w_all[k]) > 1e-15 * top) keep.push_back(k);
  const std::size_t P = keep.size();
  std::vector<std::vector<std::int64_t>> ks(P);
  std::vector<cplx> w(P);
  Mat a_xi(n, static_cast<Eigen::Index>(P)), b_xi(n, static_cast<Eigen::Index>(P));
  std::vector<double> psi_b(P);
  for (std::size_t i = 0; i < P; ++i) {
    ks[i] = grid.wavenumber(keep[i]);
    w[i] = w_all[keep[i]];
    const Vec xi = grid.frequency(keep[i]);
    a_xi.col(static_cast<Eigen::Index>(i)) = A.transpose() * xi;
    b_xi.col(static_cast<Eigen::Index>(i)) = B.transpose() * xi;
    psi_b[i] = -opts.s * b_xi.col(static_cast<Eigen::Index>(i)).squaredNorm();
  }
  // i (K b_k) per K, used as S_k(K) = sum_m (i K b_k)_m V_{k,m}.
  std::vector<CMat> kb;
  for (const CMat& K : Ks) kb.push_back(kI * (K * b_xi.cast<cplx>()));

  const std::size_t fine_steps = 2 * opts.steps;
  const double h = 1.0 / static_cast<double>(fine_steps);
  // Decay table e^{(1 - v_i) Psi(b_k)} at fine left points.
  Mat decay(static_cast<Eigen::Index>(P), static_cast<Eigen::Index>(fine_steps));
  for (std::size_t i = 0; i < fine_steps; ++i)
    for (std::size_t k = 0; k < P; ++k)
      decay(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) =
          std::exp((1.0 - static_cast<double>(i) * h) * psi_b[k]);

  const BrownStats st = run_paths<BrownStats>(opts.paths, opts.chunk, [&](std::size_t p, BrownStats& s) {
    if (s.coarse.empty()) {
      s.coarse.resize(Ks.size());
      s.fine.resize(Ks.size());
      s.diff.resize(Ks.size());
    }
    thread_local std::vector<cplx> phase;
    PhaseTable table(grid, ks);
    const BrownianPath path = simulate_brownian(n, fine_steps, stream_seed(opts.seed, kBrownStream, p), opts.s);
    CMat v_fine = CMat::Zero(n, static_cast<Eigen::Index>(P));
    CMat v_coarse = CMat::Zero(n, static_cast<Eigen::Index>(P));
    Vec W = Vec::Zero(n);
    for (std::size_t i = 0; i < fine_steps; ++i) {
      const auto col = static_cast<Eigen::Index>(i);
      table.fill(B * W, 1.0, phase);
      const Vec dw = path.increments.col(col);
      const bool even = i % 2 == 0;
      Vec dw2;
      if (even) dw2 = dw + path.increments.col(col + 1);
      for (std::size_t k = 0; k < P; ++k) {
        const cplx tp = decay(static_cast<Eigen::Index>(k), col) * phase[k];
        for (int m = 0; m < n; ++m) {
          v_fine(m, static_cast<Eigen::Index>(k)) += tp * dw[m];
          if (even) v_coarse(m, static_cast<Eigen::Index>(k)) += tp * dw2[m];
        }
      }
      W += dw;
    }
    const Eigen::ArrayXd end_phase = (a_xi.transpose() * W).array();
    for (std::size_t j = 0; j < Ks.size(); ++j) {
      cplx coarse{0.0, 0.0}, fine{0.0, 0.0};
      for (std::size_t k = 0; k < P; ++k) {
        const auto c = static_cast<Eigen::Index>(k);
        const cplx wk = w[k] * std::polar(1.0, -end_phase[c]);
        coarse += wk * (kb[j].col(c).transpose() * v_coarse.col(c))(0);
        fine += wk * (kb[j].col(c).transpose() * v_fine.col(c))(0);
      }
      s.coarse[j].add(coarse);
      s.fine[j].add(fine);
      s.diff[j].add(coarse - fine);
    }
  });

  std::vector<BrownianEstimate> out;
  std::string coarse_msg;
  for (std::size_t j = 0; j < Ks.size(); ++j) {
    BrownianEstimate e;
    e.K = Ks[j];
    if (st.coarse.empty()) {
      out.push_back(e);
      continue;
    }
    e.estimate = st.coarse[j].mean();
    e.standard_error = st.coarse[j].standard_error();
    e.fine_estimate = st.fine[j].mean();
    e.step_gap = st.diff[j].mean();
    e.step_gap_error = st.diff[j].joint_error();
    e.step_ok = std::abs(e.step_gap) <= st.coarse[j].joint_error();
    if (!e.step_ok)
      coarse_msg += " K#" + std::to_string(j) + ": gap " + std::to_string(std::abs(e.step_gap)) + " > SE " +
                    std::to_string(st.coarse[j].joint_error());
    out.push_back(e);
  }
  if (!coarse_msg.empty()) fail(ErrorCode::StepTooCoarse, "halving the step moved the estimate:" + coarse_msg);
  return out;
}

QvConvergence brownian_qv_check(const SampledField& g, const Mat& B, const CMat& K, const Vec& x,
                                const std::vector<std::size_t>& steps, std::size_t paths, std::uint64_t seed,
                                double s) {
  const GridSpec& grid = g.grid;
  const auto n = static_cast<int>(B.cols());
  if (B.rows() != grid.d) fail(ErrorCode::ShapeMismatch, "B must be d x n");
  check_k_norm(K);
  const std::vector<cplx> gh = transform_forward(g);
  const double norm = grid.freq_cell_volume() / std::pow(2.0 * kPi, grid.d);
  double top = 0.0;
  for (cplx v : gh) top = std::max(top, std::abs(v));
  std::vector<Vec> xis;
  std::vector<cplx> wg;
  std::vector<double> psi;
  std::vector<CMat> grad;  // K (-i B^T xi)
  for (std::size_t k = 0; k < gh.size(); ++k) {
    if (std::abs(gh[k]) <= 1e-15 * top) continue;
    const Vec xi = grid.frequency(k);
    const Vec bxi = B.transpose() * xi;
    xis.push_back(xi);
    wg.push_back(norm * gh[k]);
    psi.push_back(-s * bxi.squaredNorm());
    grad.push_back(-kI * (K * bxi.cast<cplx>()));
  }

  QvConvergence out;
  out.steps = steps;
  for (std::size_t si = 0; si < steps.size(); ++si) {
    const std::size_t S = steps[si];
    RealStats sq;
    for (std::size_t p = 0; p < paths; ++p) {
      const BrownianPath path = simulate_brownian(n, S, stream_seed(seed, kQvStream + si, p), s);
      Vec W = Vec::Zero(n);
      double qv = 0.0, quad = 0.0;
      for (std::size_t i = 0; i < S; ++i) {
        const double v = static_cast<double>(i) * path.h;
        const Vec y = x + B * W;
        Eigen::VectorXcd H = Eigen::VectorXcd::Zero(n);
        for (std::size_t k = 0; k < xis.size(); ++k)
          H += wg[k] * std::exp((1.0 - v) * psi[k] - kI * xis[k].dot(y)) * grad[k].col(0);
        const Vec dw = path.increments.col(static_cast<Eigen::Index>(i));
        qv += std::norm((H.transpose() * dw.cast<cplx>())(0));
        quad += H.squaredNorm() * 2.0 * s * path.h;
        W += dw;
      }
      sq.add((qv - quad) * (qv - quad));
    }
    out.rms.push_back(std::sqrt(sq.mean()));
  }
  out.decreasing = true;
  for (std::size_t i = 1; i < out.rms.size(); ++i) out.decreasing = out.decreasing && out.rms[i] < out.rms[i - 1];
  return out;
}

}  // namespace levymult
