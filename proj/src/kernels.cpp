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

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace sentibench::kernels {

namespace {

Isa initial_isa() noexcept {
    const char* env = std::getenv("SENTIBENCH_ISA");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::scalar;
    return detected_isa();
}

std::atomic<Isa>& current() noexcept {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::avx2:
            return "avx2";
        case Isa::scalar:
            break;
    }
    return "scalar";
}

Isa detected_isa() noexcept {
#if defined(SENTIBENCH_HAVE_AVX2_KERNELS)
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::avx2;
#endif
    return Isa::scalar;
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) noexcept {
    if (isa == Isa::avx2 && detected_isa() != Isa::avx2) isa = Isa::scalar;
    current().store(isa, std::memory_order_relaxed);
}

#if defined(SENTIBENCH_HAVE_AVX2_KERNELS)
#define SENTIBENCH_DISPATCH(fn, ...) \
    (active_isa() == Isa::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define SENTIBENCH_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    return SENTIBENCH_DISPATCH(dot, a, b);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept {
    SENTIBENCH_DISPATCH(axpy, alpha, x, y);
}

void scale(double alpha, std::span<double> x) noexcept { SENTIBENCH_DISPATCH(scale, alpha, x); }

double max_abs(std::span<const double> x) noexcept { return SENTIBENCH_DISPATCH(max_abs, x); }

double sparse_dot(std::span<const std::uint32_t> indices, std::span<const double> values,
                  std::span<const double> dense) noexcept {
    return SENTIBENCH_DISPATCH(sparse_dot, indices, values, dense);
}

// Scatter has no profitable AVX2 form; both ISAs share the scalar loop.
void sparse_axpy(double alpha, std::span<const std::uint32_t> indices,
                 std::span<const double> values, std::span<double> dense) noexcept {
    scalar::sparse_axpy(alpha, indices, values, dense);
}

#undef SENTIBENCH_DISPATCH

}  // namespace sentibench::kernels
