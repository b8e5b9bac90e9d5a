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

#include "secrelay/simd.hpp"

namespace secrelay::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void syr_lower_scalar(double* a, std::size_t lda, const double* g, double w,
                      std::size_t lo, std::size_t hi) {
  for (std::size_t j = lo; j < hi; ++j) {
    const double s = w * g[j];
    if (s == 0.0) continue;
    double* col = a + j * lda;
    for (std::size_t i = j; i < hi; ++i) col[i] += s * g[i];
  }
}

void inv_sq_dist_scalar(const double* xs, const double* ys, std::size_t n,
                        double px, double py, double h2, double scale,
                        double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - px;
    const double dy = ys[i] - py;
    out[i] = scale / (h2 + dx * dx + dy * dy);
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::scalar, dot_scalar, axpy_scalar,
                                 syr_lower_scalar, inv_sq_dist_scalar};
  return table;
}

}  // namespace secrelay::simd
