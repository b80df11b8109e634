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

#include <doctest.h>

#include <vector>

#include "sentibench/error.hpp"
#include "sentibench/metrics.hpp"

using namespace sentibench;

namespace {

// Worked example: rows actual, columns predicted.
ConfusionMatrix worked_example() { return ConfusionMatrix(3, {1, 0, 1, 0, 1, 1, 1, 0, 3}); }

}  // namespace

TEST_CASE("worked example macro metrics") {
    const auto cm = worked_example();
    // Per-class precision 1/2, 1/1, 3/5; recall 1/2, 1/2, 3/4.
    CHECK(macro_precision(cm) == doctest::Approx((0.5 + 1.0 + 0.6) / 3).epsilon(1e-15));
    CHECK(macro_precision(cm) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(macro_recall(cm) == doctest::Approx((0.5 + 0.5 + 0.75) / 3).epsilon(1e-15));
    const double p = 0.7, r = 1.75 / 3;
    CHECK(macro_f1(cm) == doctest::Approx(2 * p * r / (p + r)).epsilon(1e-15));
    CHECK(macro_f1(cm) == doctest::Approx(0.6364).epsilon(1e-4));
    // Mean of per-class F1 (0.5, 2/3, 2/3).
    CHECK(macro_f1_classwise(cm) == doctest::Approx((0.5 + 2.0 / 3 + 2.0 / 3) / 3).epsilon(1e-15));
}

TEST_CASE("confusion from label vectors") {
    const std::vector<int> y_true{0, 0, 1, 1, 2, 2, 2, 2};
    const std::vector<int> y_pred{0, 2, 1, 2, 0, 2, 2, 2};
    const auto cm = confusion(y_true, y_pred, 3);
    CHECK(cm == worked_example());
    CHECK(cm.total() == 8);
    CHECK_THROWS_AS(confusion(y_true, std::vector<int>{0}, 3), DataError);
    CHECK_THROWS_AS(confusion(std::vector<int>{3}, std::vector<int>{0}, 3), DataError);
}

TEST_CASE("perfect predictions give a diagonal and unit scores") {
    const std::vector<int> y{0, 1, 2, 2};
    const auto cm = confusion(y, y, 3);
    for (int a = 0; a < 3; ++a)
        for (int p = 0; p < 3; ++p)
            if (a != p) CHECK(cm.at(a, p) == 0);
    CHECK(macro_f1(cm) == 1.0);
    CHECK(macro_f1_classwise(cm) == 1.0);
}

TEST_CASE("a never-predicted class contributes zero precision") {
    // 2x2: class 1 never predicted.
    const ConfusionMatrix cm(2, {3, 0, 2, 0});
    CHECK(class_precision(cm, 1) == 0.0);
    CHECK(class_recall(cm, 1) == 0.0);
    CHECK(class_f1(cm, 1) == 0.0);
    CHECK(macro_precision(cm) == doctest::Approx((3.0 / 5) / 2));
    CHECK(macro_recall(cm) == doctest::Approx(0.5));
}

TEST_CASE("all-zero matrix scores zero") {
    const ConfusionMatrix cm(3);
    CHECK(macro_f1(cm) == 0.0);
    CHECK(macro_precision(cm) == 0.0);
}

TEST_CASE("row normalization") {
    const auto n = normalize_rows(worked_example());
    CHECK(n[0] == std::vector<double>{0.5, 0.0, 0.5});
    CHECK(n[2] == std::vector<double>{0.25, 0.0, 0.75});
    const auto z = normalize_rows(ConfusionMatrix(2, {0, 0, 1, 1}));
    CHECK(z[0] == std::vector<double>{0.0, 0.0});
}

TEST_CASE("report layout") {
    const auto j = metrics_report(worked_example());
    CHECK(j.at("macro_precision").get<double>() == 0.7);
    CHECK(j.at("macro_recall").get<double>() == 0.583333);
    CHECK(j.at("macro_f1_sokolova").get<double>() == 0.636364);
    CHECK(j.at("macro_f1_classwise").get<double>() == 0.611111);
    CHECK(j.at("confusion")[2][2].get<int>() == 3);
    CHECK(j.at("per_class").at("precision")[2].get<double>() == 0.6);
}

TEST_CASE("matrix accumulation") {
    auto a = worked_example();
    a += worked_example();
    CHECK(a.total() == 16);
    CHECK_THROWS_AS(a += ConfusionMatrix(2), DataError);
    CHECK_THROWS_AS(ConfusionMatrix(3, {1, 2}), DataError);
}
