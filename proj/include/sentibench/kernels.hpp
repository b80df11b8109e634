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

#pragma once

// Dense and sparse-dense arithmetic used by the model fitters.
//
// Each kernel has a portable scalar reference and, on x86-64, an AVX2+FMA
// variant. The variant is picked once at startup from CPUID; setting
// SENTIBENCH_ISA=scalar in the environment (or calling force_isa) pins the
// scalar path. Results from the two paths agree to rounding, not bitwise:
// vector reductions accumulate in a different order.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace sentibench::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Best ISA this CPU supports, ignoring any override.
Isa detected_isa() noexcept;

/// ISA currently used by the dispatching entry points.
Isa active_isa() noexcept;

/// Overrides dispatch. Requesting an ISA the CPU lacks falls back to scalar.
/// Not thread-safe with respect to concurrent kernel calls.
void force_isa(Isa isa) noexcept;

double dot(std::span<const double> a, std::span<const double> b) noexcept;

/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept;

/// x *= alpha
void scale(double alpha, std::span<double> x) noexcept;

/// max_i |x_i|, 0 for an empty span.
double max_abs(std::span<const double> x) noexcept;

/// sum_k values[k] * dense[indices[k]]
double sparse_dot(std::span<const std::uint32_t> indices, std::span<const double> values,
                  std::span<const double> dense) noexcept;

/// dense[indices[k]] += alpha * values[k]
void sparse_axpy(double alpha, std::span<const std::uint32_t> indices,
                 std::span<const double> values, std::span<double> dense) noexcept;

// Direct access to each implementation for equivalence testing.
namespace scalar {
double dot(std::span<const double> a, std::span<const double> b) noexcept;
void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept;
void scale(double alpha, std::span<double> x) noexcept;
double max_abs(std::span<const double> x) noexcept;
double sparse_dot(std::span<const std::uint32_t> indices, std::span<const double> values,
                  std::span<const double> dense) noexcept;
void sparse_axpy(double alpha, std::span<const std::uint32_t> indices,
                 std::span<const double> values, std::span<double> dense) noexcept;
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define SENTIBENCH_HAVE_AVX2_KERNELS 1
namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b) noexcept;
void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept;
void scale(double alpha, std::span<double> x) noexcept;
double max_abs(std::span<const double> x) noexcept;
double sparse_dot(std::span<const std::uint32_t> indices, std::span<const double> values,
                  std::span<const double> dense) noexcept;
}  // namespace avx2
#endif

}  // namespace sentibench::kernels
