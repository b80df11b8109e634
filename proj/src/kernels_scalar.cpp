// Copyright 2026 The sentibench Authors.
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

#include "sentibench/kernels.hpp"

#include <cmath>

namespace sentibench::kernels::scalar {

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(double alpha, std::span<double> x) noexcept {
    for (double& v : x) v *= alpha;
}

double max_abs(std::span<const double> x) noexcept {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::fabs(v));
    return m;
}

double sparse_dot(std::span<const std::uint32_t> indices, std::span<const double> values,
                  std::span<const double> dense) noexcept {
    double sum = 0.0;
    for (std::size_t k = 0; k < indices.size(); ++k) sum += values[k] * dense[indices[k]];
    return sum;
}

void sparse_axpy(double alpha, std::span<const std::uint32_t> indices,
                 std::span<const double> values, std::span<double> dense) noexcept {
    for (std::size_t k = 0; k < indices.size(); ++k) dense[indices[k]] += alpha * values[k];
}

}  // namespace sentibench::kernels::scalar
