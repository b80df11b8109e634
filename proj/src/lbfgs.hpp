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

// Limited-memory BFGS with Armijo backtracking, used by the linear models.

#include <functional>
#include <span>
#include <vector>

namespace sentibench::detail {

/// Returns f(x) and writes the gradient into g.
using Objective = std::function<double(std::span<const double> x, std::span<double> g)>;

struct LbfgsOptions {
    int max_iter = 500;
    double tol = 1e-6;  // stop when max_i |g_i| <= tol
    int memory = 10;
};

struct LbfgsResult {
    bool converged = false;
    int iterations = 0;
    double grad_inf_norm = 0.0;
    std::vector<double> objective_trace;  // f at the start and after every iteration
};

/// Minimizes in place. Throws TrainingError if the objective is non-finite
/// at an accepted point or the line search cannot make progress from a
/// non-finite trial.
LbfgsResult minimize_lbfgs(const Objective& f, std::span<double> x, const LbfgsOptions& options);

}  // namespace sentibench::detail
