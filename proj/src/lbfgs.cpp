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

#include "lbfgs.hpp"

#include <cmath>
#include <deque>

#include "sentibench/error.hpp"
#include "sentibench/kernels.hpp"

namespace sentibench::detail {

namespace {

struct Pair {
    std::vector<double> s;
    std::vector<double> y;
    double rho = 0.0;
};

// Two-loop recursion: d = -H g.
void search_direction(const std::deque<Pair>& history, std::span<const double> g, std::span<double> d) {
    std::copy(g.begin(), g.end(), d.begin());
    std::vector<double> alpha(history.size());
    for (std::size_t k = history.size(); k-- > 0;) {
        const auto& p = history[k];
        alpha[k] = p.rho * kernels::dot(p.s, d);
        kernels::axpy(-alpha[k], p.y, d);
    }
    if (!history.empty()) {
        const auto& last = history.back();
        const double gamma = kernels::dot(last.s, last.y) / kernels::dot(last.y, last.y);
        kernels::scale(gamma, d);
    }
    for (std::size_t k = 0; k < history.size(); ++k) {
        const auto& p = history[k];
        const double beta = p.rho * kernels::dot(p.y, d);
        kernels::axpy(alpha[k] - beta, p.s, d);
    }
    kernels::scale(-1.0, d);
}

}  // namespace

LbfgsResult minimize_lbfgs(const Objective& f, std::span<double> x, const LbfgsOptions& options) {
    const std::size_t n = x.size();
    std::vector<double> g(n);
    std::vector<double> d(n);
    std::vector<double> x_new(n);
    std::vector<double> g_new(n);
    std::deque<Pair> history;

    LbfgsResult result;
    double fx = f(x, g);
    if (!std::isfinite(fx)) throw TrainingError("objective is not finite", 0);
    result.objective_trace.push_back(fx);
    result.grad_inf_norm = kernels::max_abs(g);

    constexpr double kArmijo = 1e-4;
    constexpr int kMaxBacktracks = 60;

    while (result.grad_inf_norm > options.tol && result.iterations < options.max_iter) {
        const int iteration = result.iterations + 1;
        search_direction(history, g, d);
        double slope = kernels::dot(g, d);
        if (!(slope < 0.0)) {
            // Curvature history went stale; restart from steepest descent.
            history.clear();
            std::copy(g.begin(), g.end(), d.begin());
            kernels::scale(-1.0, d);
            slope = kernels::dot(g, d);
        }
        double step = history.empty() ? std::min(1.0, 1.0 / kernels::max_abs(g)) : 1.0;

        bool accepted = false;
        bool saw_non_finite = false;
        double f_new = 0.0;
        for (int b = 0; b < kMaxBacktracks; ++b) {
            std::copy(x.begin(), x.end(), x_new.begin());
            kernels::axpy(step, d, x_new);
            f_new = f(x_new, g_new);
            if (std::isfinite(f_new) && f_new <= fx + kArmijo * step * slope) {
                accepted = true;
                break;
            }
            if (!std::isfinite(f_new)) saw_non_finite = true;
            step *= 0.5;
        }
        if (!accepted) {
            if (saw_non_finite) throw TrainingError("objective became non-finite during line search", iteration);
            break;  // no further decrease available at machine precision
        }

        Pair p{std::vector<double>(n), std::vector<double>(n), 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            p.s[i] = x_new[i] - x[i];
            p.y[i] = g_new[i] - g[i];
        }
        const double sy = kernels::dot(p.s, p.y);
        if (sy > 1e-12 * kernels::dot(p.y, p.y)) {
            p.rho = 1.0 / sy;
            history.push_back(std::move(p));
            if (history.size() > static_cast<std::size_t>(options.memory)) history.pop_front();
        }

        std::copy(x_new.begin(), x_new.end(), x.begin());
        std::swap(g, g_new);
        fx = f_new;
        result.iterations = iteration;
        result.objective_trace.push_back(fx);
        result.grad_inf_norm = kernels::max_abs(g);
    }
    result.converged = result.grad_inf_norm <= options.tol;
    return result;
}

}  // namespace sentibench::detail
