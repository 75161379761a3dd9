#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grid.hpp"
#include "levy.hpp"
#include "spectral.hpp"

namespace levymult {

struct JumpPath {
  std::vector<double> times;      // strictly increasing in (0, 1]
  Mat marks;                      // n x J
  std::vector<Eigen::Index> atoms;  // atom index of each mark
  double intensity = 0.0;         // |nu|

  std::size_t jumps() const { return times.size(); }
};

// Draws compound Poisson paths on [0, 1] from a fixed Atoms measure.
class CompoundPoissonSampler {
 public:
  explicit CompoundPoissonSampler(const AtomsMeasure& nu);
  JumpPath sample(std::uint64_t seed) const;
  double intensity() const { return total_; }

 private:
  const AtomsMeasure* nu_;
  std::vector<double> cumulative_;
  double total_ = 0.0;
};

JumpPath simulate_cpp(const AtomsMeasure& nu, std::uint64_t seed);

// Values of a martingale along one path: at 0, either side of each jump, and at 1.
struct MartingaleTrace {
  std::vector<double> times;
  cplx start{0.0, 0.0};
  std::vector<cplx> before;
  std::vector<cplx> after;
  cplx end{0.0, 0.0};
  double qv_head = 0.0;               // |F_0|^2 for F, 0 for G
  std::vector<double> qv_increments;  // |jump|^2

  double qv() const;
  cplx jump(std::size_t i) const { return after[i] - before[i]; }
};

// Sum over jumps of (jump of a)(jump of b), no conjugation.
cplx covariation(const MartingaleTrace& a, const MartingaleTrace& b);

struct CompensatorOptions {
  int nodes = 8;
  // Sub-panels per inter-jump interval keep |exponent rate| * panel length below this.
  double max_phase_per_panel = 4.0;
};

// Precomputed spectral data for F(x; f, A) and G(x; g, B, phi) over one Atoms model.
class MartingaleModel {
 public:
  MartingaleModel(const LevyData& data, const Modulator& mod, const SampledField& f, const SampledField& g,
                  const CompensatorOptions& opts = {});

  const LevyData& data() const { return data_; }
  const Vec& drift() const { return h_; }
  const AtomsMeasure& atoms() const { return atoms_of(data_); }
  const std::vector<cplx>& phi() const { return phi_; }

  // Y_t along the path: positions just before and after every jump, and Y_1.
  void positions(const JumpPath& path, Mat& before, Mat& after, Vec& y1) const;

  MartingaleTrace F(const JumpPath& path, const Vec& x) const;
  MartingaleTrace G(const JumpPath& path, const Vec& x) const;
  cplx F1(const JumpPath& path, const Vec& x) const;
  // g(x + B Y_1), the terminal value of the parabolic martingale built from g.
  cplx g_terminal(const JumpPath& path, const Vec& x) const;

  // x-integrated products for one path: ∫ F_1 G_1 dx and ∫ sum_jumps ΔF ΔG dx.
  cplx pairing_product(const JumpPath& path, int nodes_override = 0) const;
  cplx pairing_covariation(const JumpPath& path) const;

  const SpectralEvaluator& f_eval() const { return f_eval_; }
  const SpectralEvaluator& g_eval() const { return g_eval_; }

 private:
  cplx g_compensator(const Vec& x, double a, double b, const Vec& y_a, int nodes) const;
  int panels_for(double length) const;

  LevyData data_;
  Vec h_;
  std::vector<cplx> phi_;
  CompensatorOptions opts_;
  SpectralEvaluator f_eval_;
  SpectralEvaluator g_eval_;
  std::vector<cplx> g_comp_;  // sum_z w_z phi_z (e^{-i(B^T xi, z)} - 1) per g frequency
  double g_rate_ = 0.0;       // max |exponent rate| over g frequencies

  // Parseval tables over frequencies shared by f and g (k and -k).
  Mat pair_xi_;                 // d x P
  std::vector<cplx> pair_w_;    // (2 pi)^{-d} dxi^d fhat(xi) ghat(-xi)
  std::vector<cplx> pair_psi_a_;  // Psi(-A^T xi)
  std::vector<cplx> pair_psi_b_;  // Psi(B^T xi)
  std::vector<cplx> pair_comp_;   // sum_z w_z phi_z (e^{i(B^T xi, z)} - 1)
  double pair_rate_ = 0.0;
};

MartingaleTrace parabolic_F(const JumpPath& path, const SampledField& f, const Mat& A, const LevyData& data,
                            const Vec& x);
MartingaleTrace general_G(const JumpPath& path, const SampledField& g, const Mat& B, const Modulator& mod,
                          const LevyData& data, const Vec& x);

struct SubordinationResult {
  bool holds = true;
  std::size_t violations = 0;
  double max_violation = 0.0;  // largest excess of a G increment over the F increment
};

SubordinationResult check_subordination(const MartingaleTrace& F, const MartingaleTrace& G);

// Running mean and variance of complex samples, merged in a fixed order.
struct ComplexStats {
  double n = 0.0;
  double sum_re = 0.0, sum_im = 0.0, sq_re = 0.0, sq_im = 0.0;

  void add(cplx v);
  void merge(const ComplexStats& o);
  cplx mean() const;
  // Standard error of the mean per component.
  cplx standard_error() const;
  double joint_error() const;  // sqrt(se_re^2 + se_im^2)
};

struct RealStats {
  double n = 0.0, sum = 0.0, sq = 0.0;
  void add(double v);
  void merge(const RealStats& o);
  double mean() const;
  double standard_error() const;
};

struct PairingEstimate {
  cplx estimate{0.0, 0.0};
  cplx standard_error{0.0, 0.0};
  cplx covariation_estimate{0.0, 0.0};
  cplx covariation_error{0.0, 0.0};
  cplx route_gap{0.0, 0.0};  // mean of the per-path difference of the two routes
  double route_gap_error = 0.0;
  bool routes_agree = true;
  std::size_t paths = 0;
  std::size_t quadrature_checks = 0;
  double quadrature_max_change = 0.0;
};

struct McOptions {
  std::size_t paths = 200000;
  std::uint64_t seed = 1;
  std::size_t chunk = 4096;
  std::size_t quadrature_checks = 64;  // paths re-run with doubled compensator nodes
  double sigma_multiplier = 3.0;
};

// Λ(f, g) = ∫ E F_1(x; f, A) G_1(x; g, B, phi) dx; the x-integral is taken
// exactly on the grid by Parseval for each path.
PairingEstimate estimate_pairing(const SampledField& f, const SampledField& g, const LevyData& data,
                                 const Modulator& mod, const McOptions& opts);

struct SubordinationReport {
  std::size_t paths = 0;
  std::size_t jumps = 0;
  std::size_t violations = 0;
  double max_violation = 0.0;
  bool holds = true;
};

// F(x; g, B) and G(x; g, B, phi) on shared paths at the given points (A is replaced by B).
SubordinationReport subordination_run(const SampledField& g, const LevyData& data, const Modulator& mod,
                                      const std::vector<Vec>& points, const McOptions& opts);

struct IsometryReport {
  double p = 2.0;
  double estimate = 0.0;
  double standard_error = 0.0;
  double target = 0.0;  // |f|_p^p on the grid
  bool pass = false;
};

// Coarse x sub-grid (every `stride`-th point), independent paths per point.
IsometryReport isometry_check(const SampledField& f, const LevyData& data, double p, std::size_t paths_per_point,
                              std::size_t stride, std::uint64_t seed);

struct MartingaleCheck {
  cplx mean{0.0, 0.0};
  cplx standard_error{0.0, 0.0};
  bool pass = false;
};

// Sample means of F_1 - F_0 and G_1 at x.
MartingaleCheck martingale_check_F(const MartingaleModel& model, const Vec& x, const McOptions& opts);
MartingaleCheck martingale_check_G(const MartingaleModel& model, const Vec& x, const McOptions& opts);

struct BurkholderCheck {
  double q = 2.0;
  double lhs = 0.0;  // (E|G_1|^q)^{1/q}
  double rhs = 0.0;  // (q*-1) (E|g(x+BY_1)|^q)^{1/q}
  double slack_mean = 0.0;   // mean of |G|^q - (q*-1)^q |g(x+BY_1)|^q
  double slack_error = 0.0;
  bool pass = false;
};

BurkholderCheck burkholder_check(const MartingaleModel& model, const Vec& x, double q, const McOptions& opts);

// Run `per_path(path_index, rng_seed)` over chunks of paths in parallel and
// merge chunk results in index order.
template <class Stats, class PerPath>
Stats run_paths(std::size_t paths, std::size_t chunk, PerPath&& per_path);

}  // namespace levymult

#include "mc_impl.hpp"
