#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

#include <Eigen/Dense>

namespace levymult {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

// e^{ix} - 1 without cancellation for small x.
inline cplx expm1i(double x) {
  const double s = std::sin(0.5 * x);
  return {-2.0 * s * s, std::sin(x)};
}

// e^{ix} - 1 - ix, the compensated jump kernel. Series below |x| = 1/2.
inline cplx expm1i_minus_ix(double x) {
  if (std::abs(x) < 0.5) {
    // sum_{k>=2} (ix)^k / k!
    double re = 0.0, im = 0.0;
    double term = x * x / 2.0;  // |x|^k / k! for k = 2
    for (int k = 2; k <= 18; ++k) {
      switch (k % 4) {
        case 0: re += term; break;
        case 1: im += term; break;
        case 2: re -= term; break;
        case 3: im -= term; break;
      }
      term *= x / (k + 1);
    }
    return {re, im};
  }
  const double s = std::sin(0.5 * x);
  return {-2.0 * s * s, std::sin(x) - x};
}

// e^z - 1 for complex z, accurate near the origin.
inline cplx expm1c(cplx z) {
  const double x = z.real(), y = z.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

inline double sgn(double x) { return (x > 0.0) - (x < 0.0); }

// p* - 1 = max(p - 1, 1/(p - 1)).
inline double burkholder_constant(double p) { return std::max(p - 1.0, 1.0 / (p - 1.0)); }

// SplitMix64 finalizer; used to derive independent per-stream seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  return mix_seed(mix_seed(mix_seed(master) ^ stream) ^ index);
}

}  // namespace levymult
