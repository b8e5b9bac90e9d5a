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

#include "secrelay/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace secrelay {

void SymMatrix::add_diagonal(double v) {
  for (std::size_t i = 0; i < n_; ++i) data_[i * n_ + i] += v;
}

void SymMatrix::set_zero() { std::fill(data_.begin(), data_.end(), 0.0); }

double SymMatrix::max_abs_diagonal() const {
  double m = 0.0;
  for (std::size_t i = 0; i < n_; ++i) m = std::max(m, std::abs(data_[i * n_ + i]));
  return m;
}

std::vector<double> SymMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(n_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    const double* col = data_.data() + j * n_;
    y[j] += col[j] * x[j];
    for (std::size_t i = j + 1; i < n_; ++i) {
      y[i] += col[i] * x[j];
      y[j] += col[i] * x[i];
    }
  }
  return y;
}

bool cholesky_factor(SymMatrix& a, double pivot_floor, const simd::KernelTable& k) {
  const std::size_t n = a.size();
  double* base = a.data();
  for (std::size_t c = 0; c < n; ++c) {
    double* col = base + c * n;
    const double pivot = col[c];
    if (!(pivot > pivot_floor) || !std::isfinite(pivot)) return false;
    const double d = std::sqrt(pivot);
    col[c] = d;
    const double inv = 1.0 / d;
    for (std::size_t i = c + 1; i < n; ++i) col[i] *= inv;
    // Right-looking trailing update, one column at a time.
    for (std::size_t j = c + 1; j < n; ++j) {
      const double ljc = col[j];
      if (ljc == 0.0) continue;
      k.axpy(-ljc, col + j, base + j * n + j, n - j);
    }
  }
  return true;
}

void cholesky_solve(const SymMatrix& l, std::span<double> b, const simd::KernelTable& k) {
  const std::size_t n = l.size();
  const double* base = l.data();
  for (std::size_t c = 0; c < n; ++c) {
    const double* col = base + c * n;
    b[c] /= col[c];
    if (b[c] != 0.0) k.axpy(-b[c], col + c + 1, b.data() + c + 1, n - c - 1);
  }
  for (std::size_t c = n; c-- > 0;) {
    const double* col = base + c * n;
    const double s = k.dot(col + c + 1, b.data() + c + 1, n - c - 1);
    b[c] = (b[c] - s) / col[c];
  }
}

}  // namespace secrelay
