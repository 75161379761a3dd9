#pragma once

#include <cstdint>
#include <vector>

#include "numeric.hpp"

namespace levymult {

// Uniform periodic grid: x_j = -L/2 + j L/N per axis, xi_k = 2 pi k / L with
// k in [-N/2, N/2). Multi-indices are flattened row-major (axis 0 slowest).
struct GridSpec {
  int d = 1;
  std::vector<std::int64_t> N;
  std::vector<double> L;

  static GridSpec uniform(int d, std::int64_t n, double l);

  std::size_t total() const;
  double dx(int axis) const { return L[axis] / static_cast<double>(N[axis]); }
  double dxi(int axis) const { return 2.0 * kPi / L[axis]; }
  double cell_volume() const;       // prod dx
  double freq_cell_volume() const;  // prod dxi

  // Throws on d outside 1..3, N not a power of two, or L not positive.
  void validate() const;

  std::vector<std::int64_t> unflatten(std::size_t flat) const;
  Vec position(std::size_t flat) const;
  Vec frequency(std::size_t flat) const;             // natural order
  std::vector<std::int64_t> wavenumber(std::size_t flat) const;  // k per axis
  std::size_t negate_frequency(std::size_t flat) const;          // index of -k (mod N)

  bool operator==(const GridSpec& o) const { return d == o.d && N == o.N && L == o.L; }
};

struct SampledField {
  GridSpec grid;
  std::vector<cplx> values;  // spatial samples, row-major
};

template <class F>
SampledField sample(const GridSpec& grid, F&& f) {
  SampledField out{grid, std::vector<cplx>(grid.total())};
  for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] = f(grid.position(j));
  return out;
}

// fhat(xi_k) = dx^d sum_j f(x_j) e^{i(xi_k, x_j)}, returned in natural k order.
std::vector<cplx> transform_forward(const SampledField& f);
// Inverse of transform_forward.
SampledField transform_inverse(const GridSpec& grid, const std::vector<cplx>& spectrum);

void require_same_grid(const GridSpec& a, const GridSpec& b);

}  // namespace levymult
