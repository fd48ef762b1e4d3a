#pragma once

// In-place iterative radix-2 FFT for power-of-two lengths, plus a row-column
// 2D transform. Forward uses exp(-2*pi*i*k*n/N); inverse is normalized by 1/N.

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "fracgn/error.hpp"

namespace fracgn::fft {

using cplx = std::complex<double>;

inline void transform(std::span<cplx> a, bool inverse) {
  const std::size_t n = a.size();
  require(std::has_single_bit(n), ErrorCode::invalid_argument, "fft length must be a power of two");
  if (n == 1) return;

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    // twiddles computed directly per index rather than by recurrence; keeps
    // the error at O(eps log n)
    std::vector<cplx> w(half);
    for (std::size_t k = 0; k < half; ++k) {
      const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(len);
      w[k] = cplx(std::cos(ang), std::sin(ang));
    }
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + half] * w[k];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& x : a) x *= scale;
  }
}

/// Transform of a dim-dimensional cube of side n stored row-major.
inline void transform_nd(std::vector<cplx>& a, int dim, std::size_t n, bool inverse) {
  if (dim == 1) {
    transform(a, inverse);
    return;
  }
  std::vector<cplx> col(n);
  for (std::size_t r = 0; r < n; ++r) transform(std::span<cplx>(a.data() + r * n, n), inverse);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) col[r] = a[r * n + c];
    transform(col, inverse);
    for (std::size_t r = 0; r < n; ++r) a[r * n + c] = col[r];
  }
}

inline std::vector<cplx> forward_real(std::span<const double> x, int dim, std::size_t n) {
  std::vector<cplx> a(x.begin(), x.end());
  transform_nd(a, dim, n, false);
  return a;
}

inline std::vector<double> inverse_real(std::vector<cplx> a, int dim, std::size_t n) {
  transform_nd(a, dim, n, true);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i].real();
  return out;
}

}  // namespace fracgn::fft
