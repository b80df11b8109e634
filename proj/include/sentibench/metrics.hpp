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

// Confusion matrices and macro-averaged classification metrics.
//
// Zero denominators contribute 0 to the per-class terms; averages always
// divide by the full class count.

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

namespace sentibench {

/// Rows are actual classes, columns predicted classes.
class ConfusionMatrix {
public:
    explicit ConfusionMatrix(int n_classes = 3);
    ConfusionMatrix(int n_classes, std::vector<std::uint64_t> counts);

    int n_classes() const noexcept { return n_; }
    std::uint64_t at(int actual, int predicted) const { return counts_.at(index(actual, predicted)); }
    void add(int actual, int predicted, std::uint64_t n = 1);
    std::uint64_t total() const noexcept;

    std::uint64_t true_positives(int c) const { return at(c, c); }
    std::uint64_t row_sum(int c) const;
    std::uint64_t column_sum(int c) const;

    ConfusionMatrix& operator+=(const ConfusionMatrix& other);
    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

private:
    std::size_t index(int a, int p) const;

    int n_;
    std::vector<std::uint64_t> counts_;
};

/// Throws DataError on length mismatch or a label outside [0, n_classes).
ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred, int n_classes);

double class_precision(const ConfusionMatrix& cm, int c);
double class_recall(const ConfusionMatrix& cm, int c);
double class_f1(const ConfusionMatrix& cm, int c);

double macro_precision(const ConfusionMatrix& cm);
double macro_recall(const ConfusionMatrix& cm);

/// Harmonic mean of macro precision and macro recall (0 when both are 0).
double macro_f1(const ConfusionMatrix& cm);

/// Arithmetic mean of per-class F1 scores.
double macro_f1_classwise(const ConfusionMatrix& cm);

/// Each row divided by its sum; all-zero rows stay zero.
std::vector<std::vector<double>> normalize_rows(const ConfusionMatrix& cm);

/// {confusion, normalized, macro_precision, macro_recall, macro_f1_sokolova,
///  macro_f1_classwise, per_class: {precision, recall, f1}}; reals rounded
/// to 6 decimals.
nlohmann::json metrics_report(const ConfusionMatrix& cm);

}  // namespace sentibench
