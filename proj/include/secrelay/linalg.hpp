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
#include <vector>

#include "secrelay/simd.hpp"

namespace secrelay {

// Dense symmetric matrix, column-major, of which only the lower triangle
// (i >= j) is referenced.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  std::size_t ld() const { return n_; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  // (i, j) and (j, i) address the same lower-triangle slot.
  double& operator()(std::size_t i, std::size_t j) {
    return i >= j ? data_[j * n_ + i] : data_[i * n_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return i >= j ? data_[j * n_ + i] : data_[i * n_ + j];
  }

  void add(std::size_t i, std::size_t j, double v) { (*this)(i, j) += v; }
  void add_diagonal(double v);
  void set_zero();
  double max_abs_diagonal() const;

  // y = A x using the symmetric lower triangle.
  std::vector<double> multiply(std::span<const double> x) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// In-place lower Cholesky factorization A = L L^T. Returns false (leaving A
// partially overwritten) when a pivot falls below pivot_floor.
bool cholesky_factor(SymMatrix& a, double pivot_floor,
                     const simd::KernelTable& k = simd::active());

// Solves L L^T x = b in place, where L is the output of cholesky_factor.
void cholesky_solve(const SymMatrix& l, std::span<double> b,
                    const simd::KernelTable& k = simd::active());

}  // namespace secrelay
