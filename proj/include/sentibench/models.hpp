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

// Multinomial Naive Bayes, multinomial logistic regression and one-vs-rest
// linear SVM over sparse document-term matrices, plus the coefficient and
// likelihood inspection used to read the fitted models.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sentibench/textprep.hpp"
#include "sentibench/vectorize.hpp"

namespace sentibench {

struct TrainConfig {
    double alpha = 1.0;         // NB Laplace smoothing
    double reg_strength = 1.0;  // inverse L2 strength C for LR and SVM
    int max_iter = 500;
    double tol = 1e-6;          // gradient infinity-norm stop
    std::uint64_t seed = 0;

    /// Throws ConfigError unless alpha, reg_strength, tol > 0 and max_iter >= 0.
    void validate() const;

    friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

nlohmann::json to_json(const TrainConfig& config);
TrainConfig train_config_from_json(const nlohmann::json& j);

struct NBModel {
    int n_classes = 0;
    std::size_t n_features = 0;
    double alpha = 1.0;
    std::vector<double> class_log_prior;  // n_classes
    std::vector<double> feature_log_lik;  // n_classes x n_features, row-major

    double log_lik(int c, std::size_t t) const {
        return feature_log_lik[static_cast<std::size_t>(c) * n_features + t];
    }
};

enum class LinearKind { logistic, svm };

std::string_view to_string(LinearKind kind) noexcept;

struct FitInfo {
    bool converged = false;
    int iterations = 0;
    double grad_inf_norm = 0.0;
    std::vector<double> objective_trace;
};

struct LinearModel {
    LinearKind kind = LinearKind::logistic;
    int n_classes = 0;
    std::size_t n_features = 0;
    double reg_strength = 1.0;
    std::vector<double> weights;     // n_classes x n_features, row-major
    std::vector<double> intercepts;  // n_classes
    FitInfo fit;

    std::span<const double> row(int c) const {
        return std::span<const double>(weights).subspan(static_cast<std::size_t>(c) * n_features, n_features);
    }
};

using Model = std::variant<NBModel, LinearModel>;

/// Labels must lie in [0, n_classes) and every class must occur.
NBModel nb_fit(const DocTermMatrix& X, std::span<const int> y, double alpha, int n_classes = 3);

/// Class log prior plus x-weighted log likelihoods.
std::vector<double> nb_joint_log_likelihood(const NBModel& model, SparseView x);
std::vector<double> nb_predict_proba(const NBModel& model, SparseView x);

/// Throws ConfigError for a term outside the vocabulary.
double nb_feature_loglik(const NBModel& model, const Vocabulary& vocab, std::string_view term, int c);

/// Minimizes summed multinomial cross-entropy + ||W||^2 / (2 C) with
/// unregularized intercepts by full-batch L-BFGS. Classes absent from y are
/// allowed. Throws TrainingError on a non-finite objective.
LinearModel lr_fit(const DocTermMatrix& X, std::span<const int> y, const TrainConfig& config, int n_classes = 3);

/// Throws ConfigError unless model.kind is logistic.
std::vector<double> lr_predict_proba(const LinearModel& model, SparseView x);

/// One-vs-rest squared hinge + ||w_c||^2 / (2 C) per class, unregularized
/// biases, all classes optimized jointly by L-BFGS. Throws ConfigError if a
/// class is absent from y.
LinearModel svm_fit(const DocTermMatrix& X, std::span<const int> y, const TrainConfig& config, int n_classes = 3);

/// W x + b.
std::vector<double> decision_scores(const LinearModel& model, SparseView x);

// Objective value and gradient at params = [W row-major, b], exposed for
// gradient checking. The gradient span must have the same length.
double logistic_objective(const DocTermMatrix& X, std::span<const int> y, int n_classes, double reg_strength,
                          std::span<const double> params, std::span<double> grad);
double squared_hinge_objective(const DocTermMatrix& X, std::span<const int> y, int n_classes, double reg_strength,
                               std::span<const double> params, std::span<double> grad);

/// Index of the largest score; ties go to the lowest index.
int argmax(std::span<const double> scores);

/// Throws DataError when X.n_features() differs from the model's.
std::vector<int> predict(const NBModel& model, const DocTermMatrix& X);
std::vector<int> predict(const LinearModel& model, const DocTermMatrix& X);
std::vector<int> predict(const Model& model, const DocTermMatrix& X);

struct RankedTerm {
    std::string term;
    std::vector<double> coefficients;  // one per class
    double score = 0.0;                // the ranking key
};

/// k terms with the largest weight for class c, descending, ties by term.
std::vector<RankedTerm> top_features(const LinearModel& model, const Vocabulary& vocab, int c, std::size_t k);

enum class RankDirection { most, least };

/// Terms ranked by the population standard deviation of their per-class
/// coefficients: descending for `most`, ascending for `least`; ties by term.
std::vector<RankedTerm> discriminative_rank(const LinearModel& model, const Vocabulary& vocab, std::size_t k,
                                            RankDirection direction);

struct ExplainRow {
    std::string gram;
    double weight = 0.0;           // feature value the model sees
    std::vector<double> log_lik;   // ln Pr(gram | class)
};

struct Explanation {
    std::vector<ExplainRow> rows;           // distinct in-vocabulary grams, first appearance order
    std::vector<std::string> out_of_vocab;  // distinct, first appearance order
    std::vector<double> posterior;
};

Explanation explain_doc(const NBModel& model, const Vocabulary& vocab, std::string_view text,
                        const Preprocessor& prep, WeightingMode weighting);

// Parameter serialization: dense per-class arrays with explicit dimensions.
nlohmann::json to_json(const NBModel& model);
nlohmann::json to_json(const LinearModel& model);
NBModel nb_model_from_json(const nlohmann::json& j);
LinearModel linear_model_from_json(const nlohmann::json& j);

/// "nb", "lr" or "svm".
std::string_view model_kind(const Model& model) noexcept;

}  // namespace sentibench
