#include "grid.hpp"

#include <fftw3.h>

#include <mutex>

#include "error.hpp"

namespace levymult {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Natural index n_a = k_a + N/2 maps to FFT slot (n_a + N/2) mod N; both
// directions are the same permutation since N is even.
std::size_t shift_index(const GridSpec& g, std::size_t flat) {
  std::size_t out = 0;
  std::size_t rem = flat;
  std::size_t stride = g.total();
  for (int a = 0; a < g.d; ++a) {
    const auto n = static_cast<std::size_t>(g.N[a]);
    stride /= n;
    const std::size_t idx = rem / stride;
    rem %= stride;
    out += ((idx + n / 2) % n) * stride;
  }
  return out;
}

// (-1)^{sum_a k_a} for FFT slot `slot`; since N is even this equals (-1)^{sum m_a}.
double checker_sign(const GridSpec& g, std::size_t slot) {
  std::size_t rem = slot, stride = g.total();
  std::size_t parity = 0;
  for (int a = 0; a < g.d; ++a) {
    stride /= static_cast<std::size_t>(g.N[a]);
    parity += rem / stride;
    rem %= stride;
  }
  return (parity & 1U) ? -1.0 : 1.0;
}

void run_fft(const GridSpec& g, std::vector<cplx>& data, int sign) {
  std::vector<int> dims(g.N.begin(), g.N.end());
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft(g.d, dims.data(), buf, buf, sign, FFTW_ESTIMATE);
  }
  if (!plan) fail(ErrorCode::InvalidArgument, "FFT planning failed");
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace

GridSpec GridSpec::uniform(int d, std::int64_t n, double l) {
  GridSpec g;
  g.d = d;
  g.N.assign(d, n);
  g.L.assign(d, l);
  return g;
}

std::size_t GridSpec::total() const {
  std::size_t t = 1;
  for (auto n : N) t *= static_cast<std::size_t>(n);
  return t;
}

double GridSpec::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < d; ++a) v *= dx(a);
  return v;
}

double GridSpec::freq_cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < d; ++a) v *= dxi(a);
  return v;
}

void GridSpec::validate() const {
  if (d < 1 || d > 3) fail(ErrorCode::ValidationError, "grid dimension must be 1, 2 or 3");
  if (static_cast<int>(N.size()) != d || static_cast<int>(L.size()) != d)
    fail(ErrorCode::ShapeMismatch, "grid needs one N and one L per axis");
  for (int a = 0; a < d; ++a) {
    if (N[a] < 2 || (N[a] & (N[a] - 1)) != 0)
      fail(ErrorCode::ValidationError, "grid N must be a power of two >= 2");
    if (!(L[a] > 0.0) || !std::isfinite(L[a])) fail(ErrorCode::ValidationError, "grid L must be positive");
  }
}

std::vector<std::int64_t> GridSpec::unflatten(std::size_t flat) const {
  std::vector<std::int64_t> idx(d);
  for (int a = d - 1; a >= 0; --a) {
    const auto n = static_cast<std::size_t>(N[a]);
    idx[a] = static_cast<std::int64_t>(flat % n);
    flat /= n;
  }
  return idx;
}

Vec GridSpec::position(std::size_t flat) const {
  const auto idx = unflatten(flat);
  Vec x(d);
  for (int a = 0; a < d; ++a) x[a] = -0.5 * L[a] + static_cast<double>(idx[a]) * dx(a);
  return x;
}

std::vector<std::int64_t> GridSpec::wavenumber(std::size_t flat) const {
  auto idx = unflatten(flat);
  for (int a = 0; a < d; ++a) idx[a] -= N[a] / 2;
  return idx;
}

Vec GridSpec::frequency(std::size_t flat) const {
  const auto k = wavenumber(flat);
  Vec xi(d);
  for (int a = 0; a < d; ++a) xi[a] = static_cast<double>(k[a]) * dxi(a);
  return xi;
}

std::size_t GridSpec::negate_frequency(std::size_t flat) const {
  const auto idx = unflatten(flat);
  std::size_t out = 0;
  for (int a = 0; a < d; ++a) {
    const std::int64_t n = N[a];
    // natural index i <-> k = i - n/2; -k maps to natural (n - i) mod n
    out = out * static_cast<std::size_t>(n) + static_cast<std::size_t>((n - idx[a]) % n);
  }
  return out;
}

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) fail(ErrorCode::GridMismatch, "fields live on different grids");
}

std::vector<cplx> transform_forward(const SampledField& f) {
  const GridSpec& g = f.grid;
  g.validate();
  if (f.values.size() != g.total()) fail(ErrorCode::ShapeMismatch, "field size does not match its grid");
  std::vector<cplx> work = f.values;
  run_fft(g, work, FFTW_BACKWARD);
  const double vol = g.cell_volume();
  std::vector<cplx> out(work.size());
  for (std::size_t n = 0; n < out.size(); ++n) {
    const std::size_t slot = shift_index(g, n);
    out[n] = vol * checker_sign(g, slot) * work[slot];
  }
  return out;
}

SampledField transform_inverse(const GridSpec& g, const std::vector<cplx>& spectrum) {
  g.validate();
  if (spectrum.size() != g.total()) fail(ErrorCode::ShapeMismatch, "spectrum size does not match its grid");
  std::vector<cplx> work(spectrum.size());
  for (std::size_t n = 0; n < spectrum.size(); ++n) {
    const std::size_t slot = shift_index(g, n);
    work[slot] = checker_sign(g, slot) * spectrum[n];
  }
  run_fft(g, work, FFTW_FORWARD);
  double box = 1.0;
  for (double l : g.L) box *= l;
  for (auto& v : work) v /= box;
  return {g, std::move(work)};
}

}  // namespace levymult
