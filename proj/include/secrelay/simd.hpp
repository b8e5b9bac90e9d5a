// Copyright 2026 The secrelay Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>

namespace secrelay::simd {

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa);

// Function table for the data-parallel inner loops. Every entry has a
// portable scalar reference implementation; the AVX2/FMA variant is
// selected at runtime when the host supports it.
struct KernelTable {
  Isa isa;

  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);

  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);

  // Lower-triangular rank-1 update of a column-major matrix restricted to
  // the index window [lo, hi):  A(i, j) += w * g[i] * g[j]  for lo <= j <= i < hi.
  void (*syr_lower)(double* a, std::size_t lda, const double* g, double w,
                    std::size_t lo, std::size_t hi);

  // out[i] = scale / (h2 + (xs[i] - px)^2 + (ys[i] - py)^2)
  void (*inv_sq_dist)(const double* xs, const double* ys, std::size_t n,
                      double px, double py, double h2, double scale,
                      double* out);
};

const KernelTable& scalar_kernels();

// nullptr when the AVX2 translation unit was not built or the CPU lacks
// AVX2+FMA.
const KernelTable* avx2_kernels();

// Table used by the library. Chosen once per process: AVX2 when available,
// unless the environment variable SECRELAY_SIMD=scalar forces the reference
// path.
const KernelTable& active();

// Span conveniences over active().
inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace secrelay::simd
