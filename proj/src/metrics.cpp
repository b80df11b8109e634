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

#include "sentibench/metrics.hpp"

#include <numeric>
#include <string>

#include "sentibench/error.hpp"
#include "sentibench/io.hpp"

namespace sentibench {

ConfusionMatrix::ConfusionMatrix(int n_classes)
    : n_(n_classes), counts_(static_cast<std::size_t>(n_classes) * static_cast<std::size_t>(n_classes), 0) {
    if (n_classes < 1) throw ConfigError("confusion matrix needs at least one class");
}

ConfusionMatrix::ConfusionMatrix(int n_classes, std::vector<std::uint64_t> counts) : ConfusionMatrix(n_classes) {
    if (counts.size() != counts_.size()) throw DataError("confusion counts do not form an l x l grid");
    counts_ = std::move(counts);
}

std::size_t ConfusionMatrix::index(int a, int p) const {
    if (a < 0 || a >= n_ || p < 0 || p >= n_) throw DataError("class index out of range");
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(p);
}

void ConfusionMatrix::add(int actual, int predicted, std::uint64_t n) { counts_[index(actual, predicted)] += n; }

std::uint64_t ConfusionMatrix::total() const noexcept {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::uint64_t ConfusionMatrix::row_sum(int c) const {
    std::uint64_t s = 0;
    for (int p = 0; p < n_; ++p) s += at(c, p);
    return s;
}

std::uint64_t ConfusionMatrix::column_sum(int c) const {
    std::uint64_t s = 0;
    for (int a = 0; a < n_; ++a) s += at(a, c);
    return s;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
    if (other.n_ != n_) throw DataError("cannot add confusion matrices of different sizes");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    return *this;
}

ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred, int n_classes) {
    if (y_true.size() != y_pred.size()) {
        throw DataError("label vectors differ in length (" + std::to_string(y_true.size()) + " vs " +
                        std::to_string(y_pred.size()) + ")");
    }
    ConfusionMatrix cm(n_classes);
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const int a = y_true[i];
        const int p = y_pred[i];
        if (a < 0 || a >= n_classes || p < 0 || p >= n_classes) {
            throw DataError("label out of range at index " + std::to_string(i));
        }
        cm.add(a, p);
    }
    return cm;
}

namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double class_precision(const ConfusionMatrix& cm, int c) { return ratio(cm.true_positives(c), cm.column_sum(c)); }

double class_recall(const ConfusionMatrix& cm, int c) { return ratio(cm.true_positives(c), cm.row_sum(c)); }

double class_f1(const ConfusionMatrix& cm, int c) {
    const double p = class_precision(cm, c);
    const double r = class_recall(cm, c);
    return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

double macro_precision(const ConfusionMatrix& cm) {
    double s = 0.0;
    for (int c = 0; c < cm.n_classes(); ++c) s += class_precision(cm, c);
    return s / cm.n_classes();
}

double macro_recall(const ConfusionMatrix& cm) {
    double s = 0.0;
    for (int c = 0; c < cm.n_classes(); ++c) s += class_recall(cm, c);
    return s / cm.n_classes();
}

double macro_f1(const ConfusionMatrix& cm) {
    const double p = macro_precision(cm);
    const double r = macro_recall(cm);
    return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

double macro_f1_classwise(const ConfusionMatrix& cm) {
    double s = 0.0;
    for (int c = 0; c < cm.n_classes(); ++c) s += class_f1(cm, c);
    return s / cm.n_classes();
}

std::vector<std::vector<double>> normalize_rows(const ConfusionMatrix& cm) {
    const int n = cm.n_classes();
    std::vector<std::vector<double>> out(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int a = 0; a < n; ++a) {
        const auto sum = cm.row_sum(a);
        if (sum == 0) continue;
        for (int p = 0; p < n; ++p) out[static_cast<std::size_t>(a)][static_cast<std::size_t>(p)] = ratio(cm.at(a, p), sum);
    }
    return out;
}

nlohmann::json metrics_report(const ConfusionMatrix& cm) {
    const int n = cm.n_classes();
    nlohmann::json counts = nlohmann::json::array();
    nlohmann::json normalized = nlohmann::json::array();
    const auto norm = normalize_rows(cm);
    for (int a = 0; a < n; ++a) {
        nlohmann::json row = nlohmann::json::array();
        nlohmann::json nrow = nlohmann::json::array();
        for (int p = 0; p < n; ++p) {
            row.push_back(cm.at(a, p));
            nrow.push_back(round_to(norm[static_cast<std::size_t>(a)][static_cast<std::size_t>(p)], 6));
        }
        counts.push_back(std::move(row));
        normalized.push_back(std::move(nrow));
    }
    nlohmann::json precision = nlohmann::json::array();
    nlohmann::json recall = nlohmann::json::array();
    nlohmann::json f1 = nlohmann::json::array();
    for (int c = 0; c < n; ++c) {
        precision.push_back(round_to(class_precision(cm, c), 6));
        recall.push_back(round_to(class_recall(cm, c), 6));
        f1.push_back(round_to(class_f1(cm, c), 6));
    }
    return {{"confusion", std::move(counts)},
            {"normalized", std::move(normalized)},
            {"macro_precision", round_to(macro_precision(cm), 6)},
            {"macro_recall", round_to(macro_recall(cm), 6)},
            {"macro_f1_sokolova", round_to(macro_f1(cm), 6)},
            {"macro_f1_classwise", round_to(macro_f1_classwise(cm), 6)},
            {"per_class", {{"precision", std::move(precision)}, {"recall", std::move(recall)}, {"f1", std::move(f1)}}}};
}

}  // namespace sentibench
