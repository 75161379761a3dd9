#include "mc.hpp"

#include <algorithm>
#include <random>

#include "error.hpp"
#include "quadrature.hpp"

namespace levymult {
namespace {

constexpr std::uint64_t kPairStream = 0x6d63'7061'6972ULL;
constexpr std::uint64_t kSubStream = 0x6d63'7375'6262ULL;
constexpr std::uint64_t kMartStream = 0x6d63'6d61'7274ULL;
constexpr std::uint64_t kBurkStream = 0x6d63'6275'726bULL;

using CArray = Eigen::ArrayXcd;

MartingaleTrace trace_F(const SpectralEvaluator& ev, const Mat& A, const Vec& h, const JumpPath& path,
                        const Vec& x) {
  MartingaleTrace tr;
  tr.times = path.times;
  tr.start = ev.eval(1.0, x);
  tr.qv_head = std::norm(tr.start);
  Vec y = Vec::Zero(A.cols());
  double prev = 0.0;
  for (std::size_t i = 0; i < path.jumps(); ++i) {
    const double t = path.times[i];
    y += h * (t - prev);
    tr.before.push_back(ev.eval(1.0 - t, x + A * y));
    y += path.marks.col(static_cast<Eigen::Index>(i));
    tr.after.push_back(ev.eval(1.0 - t, x + A * y));
    tr.qv_increments.push_back(std::norm(tr.after.back() - tr.before.back()));
    prev = t;
  }
  y += h * (1.0 - prev);
  tr.end = ev.eval(0.0, x + A * y);
  return tr;
}

void require_pure_jump(const LevyData& data) {
  atoms_of(data);
  if (data.mu.size() > 0)
    fail(ErrorCode::Unsupported, "path simulation needs data without a Gaussian part; use approximate() first");
}

}  // namespace

CompoundPoissonSampler::CompoundPoissonSampler(const AtomsMeasure& nu) : nu_(&nu) {
  cumulative_.resize(static_cast<std::size_t>(nu.size()));
  double s = 0.0;
  for (Eigen::Index i = 0; i < nu.size(); ++i) {
    s += nu.weights[i];
    cumulative_[static_cast<std::size_t>(i)] = s;
  }
  total_ = s;
  if (!(total_ > 0.0) || !std::isfinite(total_))
    fail(ErrorCode::RequiresFiniteMeasure, "compound Poisson simulation needs 0 < |nu| < inf");
}

JumpPath CompoundPoissonSampler::sample(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::poisson_distribution<int> count(total_);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  JumpPath path;
  path.intensity = total_;
  const int J = count(rng);
  path.times.resize(static_cast<std::size_t>(J));
  for (double& t : path.times) {
    do t = unit(rng);
    while (t == 0.0);
  }
  std::sort(path.times.begin(), path.times.end());
  path.marks.resize(nu_->points.rows(), J);
  path.atoms.resize(static_cast<std::size_t>(J));
  for (int i = 0; i < J; ++i) {
    const double u = unit(rng) * total_;
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    const auto idx = static_cast<Eigen::Index>(it - cumulative_.begin());
    path.atoms[static_cast<std::size_t>(i)] = idx;
    path.marks.col(i) = nu_->points.col(idx);
  }
  return path;
}

JumpPath simulate_cpp(const AtomsMeasure& nu, std::uint64_t seed) { return CompoundPoissonSampler(nu).sample(seed); }

double MartingaleTrace::qv() const {
  double s = qv_head;
  for (double v : qv_increments) s += v;
  return s;
}

cplx covariation(const MartingaleTrace& a, const MartingaleTrace& b) {
  if (a.times != b.times) fail(ErrorCode::TraceMismatch, "traces come from different paths");
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.times.size(); ++i) s += a.jump(i) * b.jump(i);
  return s;
}

MartingaleModel::MartingaleModel(const LevyData& data, const Modulator& mod, const SampledField& f,
                                 const SampledField& g, const CompensatorOptions& opts)
    : data_(data),
      opts_(opts),
      f_eval_((validate(data, mod), require_pure_jump(data), f), data.A, data),
      g_eval_(g, data.B, data) {
  require_same_grid(f.grid, g.grid);
  if (f.grid.d != data.d) fail(ErrorCode::GridMismatch, "field dimension differs from d");
  if (opts_.nodes < 1) fail(ErrorCode::InvalidArgument, "compensator nodes must be positive");
  h_ = drift_reduce(data).second;
  const AtomsMeasure& nu = atoms();
  phi_.resize(static_cast<std::size_t>(nu.size()));
  for (Eigen::Index i = 0; i < nu.size(); ++i)
    phi_[static_cast<std::size_t>(i)] = eval_phi(mod.phi, nu.points.col(i), static_cast<std::size_t>(i));

  // Compensator factors: sum_z w_z phi_z (e^{∓i(B^T xi, z)} - 1).
  auto comp_factor = [&](const Vec& bxi, double sign) {
    cplx c{0.0, 0.0};
    const Vec kappa = nu.points.transpose() * bxi;
    for (Eigen::Index i = 0; i < nu.size(); ++i)
      c += nu.weights[i] * phi_[static_cast<std::size_t>(i)] * expm1i(sign * kappa[i]);
    return c;
  };
  const Mat& gxi = g_eval_.frequencies();
  g_comp_.resize(g_eval_.size());
  for (std::size_t k = 0; k < g_eval_.size(); ++k) {
    const Vec bxi = data.B.transpose() * gxi.col(static_cast<Eigen::Index>(k));
    g_comp_[k] = comp_factor(bxi, -1.0);
    g_rate_ = std::max(g_rate_, std::abs(g_eval_.exponents()[k]) + std::abs(bxi.dot(h_)));
  }

  const GridSpec& grid = f.grid;
  const std::vector<cplx> fh = transform_forward(f);
  const std::vector<cplx> gh = transform_forward(g);
  const double norm = grid.freq_cell_volume() / std::pow(2.0 * kPi, grid.d);
  std::vector<cplx> w(fh.size());
  double top = 0.0;
  for (std::size_t k = 0; k < fh.size(); ++k) {
    w[k] = norm * fh[k] * gh[grid.negate_frequency(k)];
    top = std::max(top, std::abs(w[k]));
  }
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < w.size(); ++k)
    if (std::abs(w[k]) > 1e-15 * top) keep.push_back(k);
  pair_xi_.resize(grid.d, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const Vec xi = grid.frequency(keep[i]);
    pair_xi_.col(static_cast<Eigen::Index>(i)) = xi;
    const Vec axi = data.A.transpose() * xi;
    const Vec bxi = data.B.transpose() * xi;
    pair_w_.push_back(w[keep[i]]);
    pair_psi_a_.push_back(psi(data, Vec(-axi)));
    pair_psi_b_.push_back(psi(data, bxi));
    pair_comp_.push_back(comp_factor(bxi, 1.0));
    pair_rate_ = std::max(pair_rate_, std::abs(pair_psi_b_.back()) + std::abs(bxi.dot(h_)));
  }
}

void MartingaleModel::positions(const JumpPath& path, Mat& before, Mat& after, Vec& y1) const {
  const auto J = static_cast<Eigen::Index>(path.jumps());
  before.resize(data_.n, J);
  after.resize(data_.n, J);
  Vec y = Vec::Zero(data_.n);
  double prev = 0.0;
  for (Eigen::Index i = 0; i < J; ++i) {
    const double t = path.times[static_cast<std::size_t>(i)];
    y += h_ * (t - prev);
    before.col(i) = y;
    y += path.marks.col(i);
    after.col(i) = y;
    prev = t;
  }
  y1 = y + h_ * (1.0 - prev);
}

int MartingaleModel::panels_for(double length) const {
  const double rate = std::max(g_rate_, pair_rate_);
  return std::max(1, static_cast<int>(std::ceil(rate * length / opts_.max_phase_per_panel)));
}

MartingaleTrace MartingaleModel::F(const JumpPath& path, const Vec& x) const {
  return trace_F(f_eval_, data_.A, h_, path, x);
}

cplx MartingaleModel::F1(const JumpPath& path, const Vec& x) const {
  Mat before, after;
  Vec y1;
  positions(path, before, after, y1);
  return f_eval_.eval(0.0, x + data_.A * y1);
}

cplx MartingaleModel::g_terminal(const JumpPath& path, const Vec& x) const {
  Mat before, after;
  Vec y1;
  positions(path, before, after, y1);
  return g_eval_.eval(0.0, x + data_.B * y1);
}

cplx MartingaleModel::g_compensator(const Vec& x, double a, double b, const Vec& y_a, int nodes) const {
  if (b <= a) return 0.0;
  const int panels = panels_for(b - a);
  const Mat& xi = g_eval_.frequencies();
  const auto& w = g_eval_.weights();
  const auto& ps = g_eval_.exponents();
  std::vector<double> vs, ws;
  cplx total{0.0, 0.0};
  for (int p = 0; p < panels; ++p) {
    const double lo = a + (b - a) * p / panels, hi = a + (b - a) * (p + 1) / panels;
    gauss_legendre_interval(nodes, lo, hi, vs, ws);
    for (int j = 0; j < nodes; ++j) {
      const double v = vs[static_cast<std::size_t>(j)];
      const Vec pos = x + data_.B * (y_a + h_ * (v - a));
      const Vec phase = xi.transpose() * pos;
      cplx s{0.0, 0.0};
      for (std::size_t k = 0; k < w.size(); ++k)
        s += w[k] * g_comp_[k] * std::exp((1.0 - v) * ps[k] - kI * phase[static_cast<Eigen::Index>(k)]);
      total += ws[static_cast<std::size_t>(j)] * s;
    }
  }
  return total;
}

MartingaleTrace MartingaleModel::G(const JumpPath& path, const Vec& x) const {
  MartingaleTrace tr;
  tr.times = path.times;
  Mat before, after;
  Vec y1;
  positions(path, before, after, y1);
  cplx value{0.0, 0.0};
  double prev = 0.0;
  Vec y_prev = Vec::Zero(data_.n);
  for (std::size_t i = 0; i < path.jumps(); ++i) {
    const double t = path.times[i];
    const auto col = static_cast<Eigen::Index>(i);
    value -= g_compensator(x, prev, t, y_prev, opts_.nodes);
    tr.before.push_back(value);
    const cplx jump = phi_[static_cast<std::size_t>(path.atoms[i])] *
                      (g_eval_.eval(1.0 - t, x + data_.B * after.col(col)) -
                       g_eval_.eval(1.0 - t, x + data_.B * before.col(col)));
    value += jump;
    tr.after.push_back(value);
    tr.qv_increments.push_back(std::norm(jump));
    prev = t;
    y_prev = after.col(col);
  }
  value -= g_compensator(x, prev, 1.0, y_prev, opts_.nodes);
  tr.end = value;
  return tr;
}

cplx MartingaleModel::pairing_product(const JumpPath& path, int nodes_override) const {
  const int nodes = nodes_override > 0 ? nodes_override : opts_.nodes;
  const auto P = static_cast<Eigen::Index>(pair_w_.size());
  const Mat bt = data_.B.transpose() * pair_xi_;  // n x P
  const Mat at = data_.A.transpose() * pair_xi_;
  const CArray psi_b = Eigen::Map<const CArray>(pair_psi_b_.data(), P);
  const CArray comp = Eigen::Map<const CArray>(pair_comp_.data(), P);
  Mat before, after;
  Vec y1;
  positions(path, before, after, y1);

  CArray S = CArray::Zero(P);
  std::vector<double> vs, ws;
  auto compensate = [&](double a, double b, const Vec& y_a) {
    if (b <= a) return;
    const int panels = panels_for(b - a);
    for (int p = 0; p < panels; ++p) {
      const double lo = a + (b - a) * p / panels, hi = a + (b - a) * (p + 1) / panels;
      gauss_legendre_interval(nodes, lo, hi, vs, ws);
      for (int j = 0; j < nodes; ++j) {
        const double v = vs[static_cast<std::size_t>(j)];
        const Eigen::ArrayXd phase = (bt.transpose() * (y_a + h_ * (v - a))).array();
        S -= ws[static_cast<std::size_t>(j)] * ((1.0 - v) * psi_b + kI * phase.cast<cplx>()).exp() * comp;
      }
    }
  };
  double prev = 0.0;
  Vec y_prev = Vec::Zero(data_.n);
  for (std::size_t i = 0; i < path.jumps(); ++i) {
    const double t = path.times[i];
    const auto col = static_cast<Eigen::Index>(i);
    compensate(prev, t, y_prev);
    const Eigen::ArrayXd pa = (bt.transpose() * after.col(col)).array();
    const Eigen::ArrayXd pb = (bt.transpose() * before.col(col)).array();
    const CArray decay = ((1.0 - t) * psi_b).exp();
    S += phi_[static_cast<std::size_t>(path.atoms[i])] * decay *
         ((kI * pa.cast<cplx>()).exp() - (kI * pb.cast<cplx>()).exp());
    prev = t;
    y_prev = after.col(col);
  }
  compensate(prev, 1.0, y_prev);
  const Eigen::ArrayXd p1 = (at.transpose() * y1).array();
  const CArray w = Eigen::Map<const CArray>(pair_w_.data(), P);
  return (w * (-kI * p1.cast<cplx>()).exp() * S).sum();
}

cplx MartingaleModel::pairing_covariation(const JumpPath& path) const {
  const auto P = static_cast<Eigen::Index>(pair_w_.size());
  const Mat bt = data_.B.transpose() * pair_xi_;
  const Mat at = data_.A.transpose() * pair_xi_;
  const CArray rate = Eigen::Map<const CArray>(pair_psi_a_.data(), P) + Eigen::Map<const CArray>(pair_psi_b_.data(), P);
  const CArray w = Eigen::Map<const CArray>(pair_w_.data(), P);
  Mat before, after;
  Vec y1;
  positions(path, before, after, y1);
  cplx total{0.0, 0.0};
  for (std::size_t i = 0; i < path.jumps(); ++i) {
    const double t = path.times[i];
    const auto col = static_cast<Eigen::Index>(i);
    const Eigen::ArrayXd aa = (at.transpose() * after.col(col)).array();
    const Eigen::ArrayXd ab = (at.transpose() * before.col(col)).array();
    const Eigen::ArrayXd ba = (bt.transpose() * after.col(col)).array();
    const Eigen::ArrayXd bb = (bt.transpose() * before.col(col)).array();
    const CArray dF = (-kI * aa.cast<cplx>()).exp() - (-kI * ab.cast<cplx>()).exp();
    const CArray dG = (kI * ba.cast<cplx>()).exp() - (kI * bb.cast<cplx>()).exp();
    total += phi_[static_cast<std::size_t>(path.atoms[i])] * (w * ((1.0 - t) * rate).exp() * dF * dG).sum();
  }
  return total;
}

MartingaleTrace parabolic_F(const JumpPath& path, const SampledField& f, const Mat& A, const LevyData& data,
                            const Vec& x) {
  validate(data);
  require_pure_jump(data);
  const SpectralEvaluator ev(f, A, data);
  return trace_F(ev, A, drift_reduce(data).second, path, x);
}

MartingaleTrace general_G(const JumpPath& path, const SampledField& g, const Mat& B, const Modulator& mod,
                          const LevyData& data, const Vec& x) {
  LevyData copy = data;
  copy.A = B;
  copy.B = B;
  const MartingaleModel model(copy, mod, g, g);
  return model.G(path, x);
}

SubordinationResult check_subordination(const MartingaleTrace& F, const MartingaleTrace& G) {
  if (F.times != G.times || F.qv_increments.size() != G.qv_increments.size())
    fail(ErrorCode::TraceMismatch, "traces come from different paths");
  SubordinationResult r;
  constexpr double slack = 8.0 * std::numeric_limits<double>::epsilon();
  for (std::size_t i = 0; i < F.qv_increments.size(); ++i) {
    const double excess = G.qv_increments[i] - F.qv_increments[i];
    if (excess > slack * F.qv_increments[i]) {
      r.holds = false;
      ++r.violations;
    }
    r.max_violation = std::max(r.max_violation, excess);
  }
  const double head_gap = G.qv() - F.qv();
  if (head_gap > slack * F.qv()) {
    r.holds = false;
    ++r.violations;
  }
  return r;
}

void ComplexStats::add(cplx v) {
  n += 1.0;
  sum_re += v.real();
  sum_im += v.imag();
  sq_re += v.real() * v.real();
  sq_im += v.imag() * v.imag();
}

void ComplexStats::merge(const ComplexStats& o) {
  n += o.n;
  sum_re += o.sum_re;
  sum_im += o.sum_im;
  sq_re += o.sq_re;
  sq_im += o.sq_im;
}

cplx ComplexStats::mean() const { return n > 0 ? cplx(sum_re / n, sum_im / n) : cplx(0.0); }

cplx ComplexStats::standard_error() const {
  if (n < 2) return {0.0, 0.0};
  const double mr = sum_re / n, mi = sum_im / n;
  const double vr = std::max(0.0, (sq_re - n * mr * mr) / (n - 1.0));
  const double vi = std::max(0.0, (sq_im - n * mi * mi) / (n - 1.0));
  return {std::sqrt(vr / n), std::sqrt(vi / n)};
}

double ComplexStats::joint_error() const { return std::abs(standard_error()); }

void RealStats::add(double v) {
  n += 1.0;
  sum += v;
  sq += v * v;
}

void RealStats::merge(const RealStats& o) {
  n += o.n;
  sum += o.sum;
  sq += o.sq;
}

double RealStats::mean() const { return n > 0 ? sum / n : 0.0; }

double RealStats::standard_error() const {
  if (n < 2) return 0.0;
  const double m = sum / n;
  return std::sqrt(std::max(0.0, (sq - n * m * m) / (n - 1.0)) / n);
}

namespace {

struct PairStats {
  ComplexStats product, cov, diff;
  std::size_t checks = 0;
  double max_change = 0.0;
  void merge(const PairStats& o) {
    product.merge(o.product);
    cov.merge(o.cov);
    diff.merge(o.diff);
    checks += o.checks;
    max_change = std::max(max_change, o.max_change);
  }
};

}  // namespace

PairingEstimate estimate_pairing(const SampledField& f, const SampledField& g, const LevyData& data,
                                 const Modulator& mod, const McOptions& opts) {
  const MartingaleModel model(data, mod, f, g);
  const CompoundPoissonSampler sampler(model.atoms());
  const PairStats st = run_paths<PairStats>(opts.paths, opts.chunk, [&](std::size_t i, PairStats& s) {
    const JumpPath path = sampler.sample(stream_seed(opts.seed, kPairStream, i));
    const cplx prod = model.pairing_product(path);
    const cplx cov = model.pairing_covariation(path);
    s.product.add(prod);
    s.cov.add(cov);
    s.diff.add(prod - cov);
    if (i < opts.quadrature_checks) {
      ++s.checks;
      s.max_change = std::max(s.max_change, std::abs(model.pairing_product(path, 16) - prod));
    }
  });
  if (st.max_change > 1e-8)
    warn("compensator quadrature: doubling the nodes changed a path value by " + std::to_string(st.max_change));
  PairingEstimate e;
  e.estimate = st.product.mean();
  e.standard_error = st.product.standard_error();
  e.covariation_estimate = st.cov.mean();
  e.covariation_error = st.cov.standard_error();
  e.route_gap = st.diff.mean();
  e.route_gap_error = st.diff.joint_error();
  e.routes_agree = std::abs(e.route_gap) <= opts.sigma_multiplier * e.route_gap_error;
  e.paths = opts.paths;
  e.quadrature_checks = st.checks;
  e.quadrature_max_change = st.max_change;
  return e;
}

namespace {

struct SubStats {
  std::size_t paths = 0, jumps = 0, violations = 0;
  double max_violation = 0.0;
  void merge(const SubStats& o) {
    paths += o.paths;
    jumps += o.jumps;
    violations += o.violations;
    max_violation = std::max(max_violation, o.max_violation);
  }
};

}  // namespace

SubordinationReport subordination_run(const SampledField& g, const LevyData& data, const Modulator& mod,
                                      const std::vector<Vec>& points, const McOptions& opts) {
  LevyData copy = data;
  copy.A = data.B;
  const MartingaleModel model(copy, mod, g, g);
  const CompoundPoissonSampler sampler(model.atoms());
  const SubStats st = run_paths<SubStats>(opts.paths, opts.chunk, [&](std::size_t i, SubStats& s) {
    const JumpPath path = sampler.sample(stream_seed(opts.seed, kSubStream, i));
    ++s.paths;
    s.jumps += path.jumps();
    for (const Vec& x : points) {
      const SubordinationResult r = check_subordination(model.F(path, x), model.G(path, x));
      s.violations += r.violations;
      s.max_violation = std::max(s.max_violation, r.max_violation);
    }
  });
  return {st.paths, st.jumps, st.violations, st.max_violation, st.violations == 0};
}

IsometryReport isometry_check(const SampledField& f, const LevyData& data, double p, std::size_t paths_per_point,
                              std::size_t stride, std::uint64_t seed) {
  validate(data);
  require_pure_jump(data);
  if (stride == 0) fail(ErrorCode::InvalidArgument, "stride must be positive");
  const SpectralEvaluator ev(f, data.A, data);
  const Vec h = drift_reduce(data).second;
  const CompoundPoissonSampler sampler(atoms_of(data));
  const GridSpec& grid = f.grid;

  std::vector<std::size_t> points;
  for (std::size_t j = 0; j < grid.total(); ++j) {
    const auto idx = grid.unflatten(j);
    bool on = true;
    for (int a = 0; a < grid.d; ++a) on = on && (idx[a] % static_cast<std::int64_t>(stride) == 0);
    if (on) points.push_back(j);
  }
  const double cell = grid.cell_volume() * std::pow(static_cast<double>(stride), grid.d);

  std::vector<RealStats> per_point(points.size());
  parallel_for(points.size(), [&](std::size_t k) {
    const Vec x = grid.position(points[k]);
    for (std::size_t i = 0; i < paths_per_point; ++i) {
      const JumpPath path = sampler.sample(stream_seed(seed, points[k], i));
      Vec y = h;
      for (std::size_t jmp = 0; jmp < path.jumps(); ++jmp) y += path.marks.col(static_cast<Eigen::Index>(jmp));
      per_point[k].add(std::pow(std::abs(ev.eval(0.0, x + data.A * y)), p));
    }
  });
  IsometryReport r;
  r.p = p;
  double var = 0.0;
  for (const RealStats& s : per_point) {
    r.estimate += cell * s.mean();
    var += std::pow(cell * s.standard_error(), 2);
  }
  r.standard_error = std::sqrt(var);
  r.target = std::pow(lp_norm(f, p), p);
  r.pass = std::abs(r.estimate - r.target) <= 3.0 * r.standard_error;
  return r;
}

MartingaleCheck martingale_check_F(const MartingaleModel& model, const Vec& x, const McOptions& opts) {
  const CompoundPoissonSampler sampler(model.atoms());
  const cplx f0 = model.f_eval().eval(1.0, x);
  const ComplexStats st = run_paths<ComplexStats>(opts.paths, opts.chunk, [&](std::size_t i, ComplexStats& s) {
    s.add(model.F1(sampler.sample(stream_seed(opts.seed, kMartStream, i)), x) - f0);
  });
  return {st.mean(), st.standard_error(), std::abs(st.mean()) <= opts.sigma_multiplier * st.joint_error()};
}

MartingaleCheck martingale_check_G(const MartingaleModel& model, const Vec& x, const McOptions& opts) {
  const CompoundPoissonSampler sampler(model.atoms());
  const ComplexStats st = run_paths<ComplexStats>(opts.paths, opts.chunk, [&](std::size_t i, ComplexStats& s) {
    s.add(model.G(sampler.sample(stream_seed(opts.seed, kMartStream + 1, i)), x).end);
  });
  return {st.mean(), st.standard_error(), std::abs(st.mean()) <= opts.sigma_multiplier * st.joint_error()};
}

namespace {

struct BurkStats {
  RealStats g, f, slack;
  void merge(const BurkStats& o) {
    g.merge(o.g);
    f.merge(o.f);
    slack.merge(o.slack);
  }
};

}  // namespace

BurkholderCheck burkholder_check(const MartingaleModel& model, const Vec& x, double q, const McOptions& opts) {
  const CompoundPoissonSampler sampler(model.atoms());
  const double c = burkholder_constant(q);
  const double cq = std::pow(c, q);
  const BurkStats st = run_paths<BurkStats>(opts.paths, opts.chunk, [&](std::size_t i, BurkStats& s) {
    const JumpPath path = sampler.sample(stream_seed(opts.seed, kBurkStream, i));
    const double gq = std::pow(std::abs(model.G(path, x).end), q);
    const double fq = std::pow(std::abs(model.g_terminal(path, x)), q);
    s.g.add(gq);
    s.f.add(fq);
    s.slack.add(gq - cq * fq);
  });
  BurkholderCheck r;
  r.q = q;
  r.lhs = std::pow(st.g.mean(), 1.0 / q);
  r.rhs = c * std::pow(st.f.mean(), 1.0 / q);
  r.slack_mean = st.slack.mean();
  r.slack_error = st.slack.standard_error();
  r.pass = r.slack_mean <= opts.sigma_multiplier * r.slack_error;
  return r;
}

}  // namespace levymult
