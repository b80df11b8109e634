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

// Compiled with -mavx2 -mfma. Only reached after a CPUID check.

#include "sentibench/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace sentibench::kernels::avx2 {

namespace {

inline double hsum(__m256d v) noexcept {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    const std::size_t n = a.size();
    const double* pa = a.data();
    const double* pb = b.data();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i + 4), _mm256_loadu_pd(pb + i + 4), acc1);
    }
    if (i + 4 <= n) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i), acc0);
        i += 4;
    }
    double sum = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) sum += pa[i] * pb[i];
    return sum;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept {
    const std::size_t n = x.size();
    const double* px = x.data();
    double* py = y.data();
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(py + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i)));
    }
    for (; i < n; ++i) py[i] += alpha * px[i];
}

void scale(double alpha, std::span<double> x) noexcept {
    const std::size_t n = x.size();
    double* p = x.data();
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(p + i, _mm256_mul_pd(va, _mm256_loadu_pd(p + i)));
    for (; i < n; ++i) p[i] *= alpha;
}

double max_abs(std::span<const double> x) noexcept {
    const std::size_t n = x.size();
    const double* p = x.data();
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, _mm256_andnot_pd(sign, _mm256_loadu_pd(p + i)));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, m);
    double result = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) result = std::max(result, std::fabs(p[i]));
    return result;
}

double sparse_dot(std::span<const std::uint32_t> indices, std::span<const double> values,
                  std::span<const double> dense) noexcept {
    const std::size_t n = indices.size();
    const auto* idx = reinterpret_cast<const int*>(indices.data());
    const double* pv = values.data();
    const double* base = dense.data();
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    // Column indices fit in int32: vocabularies are capped well below 2^31.
    for (; k + 4 <= n; k += 4) {
        const __m128i vi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + k));
        const __m256d gathered = _mm256_i32gather_pd(base, vi, 8);
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(pv + k), gathered, acc);
    }
    double sum = hsum(acc);
    for (; k < n; ++k) sum += pv[k] * base[indices[k]];
    return sum;
}

}  // namespace sentibench::kernels::avx2
