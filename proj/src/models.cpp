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

#include "sentibench/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "lbfgs.hpp"
#include "sentibench/error.hpp"
#include "sentibench/kernels.hpp"

namespace sentibench {

void TrainConfig::validate() const {
    if (!(alpha > 0.0)) throw ConfigError("alpha must be > 0");
    if (!(reg_strength > 0.0)) throw ConfigError("reg_strength must be > 0");
    if (!(tol > 0.0)) throw ConfigError("tol must be > 0");
    if (max_iter < 0) throw ConfigError("max_iter must be >= 0");
}

nlohmann::json to_json(const TrainConfig& c) {
    return {{"alpha", c.alpha}, {"reg_strength", c.reg_strength}, {"max_iter", c.max_iter}, {"tol", c.tol}, {"seed", c.seed}};
}

TrainConfig train_config_from_json(const nlohmann::json& j) {
    TrainConfig c;
    try {
        if (!j.is_object()) throw ConfigError("train_config must be an object");
        for (const auto& [key, value] : j.items()) {
            if (key == "alpha") c.alpha = value.get<double>();
            else if (key == "reg_strength") c.reg_strength = value.get<double>();
            else if (key == "max_iter") c.max_iter = value.get<int>();
            else if (key == "tol") c.tol = value.get<double>();
            else if (key == "seed") c.seed = value.get<std::uint64_t>();
            else throw ConfigError("unknown train_config key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad train_config: ") + e.what());
    }
    c.validate();
    return c;
}

std::string_view to_string(LinearKind kind) noexcept { return kind == LinearKind::svm ? "svm" : "logistic"; }

namespace {

void check_labels(const DocTermMatrix& X, std::span<const int> y, int n_classes) {
    if (n_classes < 1) throw ConfigError("n_classes must be >= 1");
    if (X.rows() != y.size()) {
        throw DataError("matrix has " + std::to_string(X.rows()) + " rows but " + std::to_string(y.size()) + " labels");
    }
    if (y.empty()) throw DataError("cannot fit on zero documents");
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] < 0 || y[i] >= n_classes) throw DataError("label out of range at row " + std::to_string(i));
    }
}

std::vector<std::size_t> class_counts(std::span<const int> y, int n_classes) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(n_classes), 0);
    for (int label : y) ++counts[static_cast<std::size_t>(label)];
    return counts;
}

void require_all_classes(std::span<const int> y, int n_classes) {
    const auto counts = class_counts(y, n_classes);
    for (int c = 0; c < n_classes; ++c) {
        if (counts[static_cast<std::size_t>(c)] == 0) throw ConfigError("class " + std::to_string(c) + " is absent from the training labels");
    }
}

void softmax_in_place(std::vector<double>& v) {
    const double m = *std::max_element(v.begin(), v.end());
    double sum = 0.0;
    for (auto& x : v) {
        x = std::exp(x - m);
        sum += x;
    }
    for (auto& x : v) x /= sum;
}

void check_dims(std::size_t model_features, std::size_t x_features) {
    if (model_features != x_features) {
        throw DataError("feature count mismatch: model has " + std::to_string(model_features) + ", input has " +
                        std::to_string(x_features));
    }
}

}  // namespace

NBModel nb_fit(const DocTermMatrix& X, std::span<const int> y, double alpha, int n_classes) {
    if (!(alpha > 0.0)) throw ConfigError("alpha must be > 0");
    check_labels(X, y, n_classes);
    require_all_classes(y, n_classes);

    const auto F = X.n_features();
    const auto C = static_cast<std::size_t>(n_classes);
    NBModel m;
    m.n_classes = n_classes;
    m.n_features = F;
    m.alpha = alpha;
    m.feature_log_lik.assign(C * F, 0.0);
    for (std::size_t r = 0; r < X.rows(); ++r) {
        const auto row = X.row(r);
        const auto base = static_cast<std::size_t>(y[r]) * F;
        for (std::size_t k = 0; k < row.size(); ++k) m.feature_log_lik[base + row.indices[k]] += row.values[k];
    }
    const auto counts = class_counts(y, n_classes);
    const auto n = static_cast<double>(y.size());
    for (std::size_t c = 0; c < C; ++c) {
        m.class_log_prior.push_back(std::log(static_cast<double>(counts[c]) / n));
        auto cls = std::span<double>(m.feature_log_lik).subspan(c * F, F);
        const double total = std::accumulate(cls.begin(), cls.end(), 0.0);
        const double log_denom = std::log(total + alpha * static_cast<double>(F));
        for (auto& v : cls) v = std::log(v + alpha) - log_denom;
    }
    return m;
}

std::vector<double> nb_joint_log_likelihood(const NBModel& model, SparseView x) {
    std::vector<double> scores(model.class_log_prior);
    for (int c = 0; c < model.n_classes; ++c) {
        const auto row = std::span<const double>(model.feature_log_lik)
                             .subspan(static_cast<std::size_t>(c) * model.n_features, model.n_features);
        scores[static_cast<std::size_t>(c)] += kernels::sparse_dot(x.indices, x.values, row);
    }
    return scores;
}

std::vector<double> nb_predict_proba(const NBModel& model, SparseView x) {
    auto scores = nb_joint_log_likelihood(model, x);
    softmax_in_place(scores);
    return scores;
}

double nb_feature_loglik(const NBModel& model, const Vocabulary& vocab, std::string_view term, int c) {
    const auto idx = vocab.index_of(term);
    if (!idx) throw ConfigError("term '" + std::string(term) + "' is not in the vocabulary");
    if (c < 0 || c >= model.n_classes) throw ConfigError("class index out of range");
    return model.log_lik(c, *idx);
}

double logistic_objective(const DocTermMatrix& X, std::span<const int> y, int n_classes, double reg_strength,
                          std::span<const double> params, std::span<double> grad) {
    const auto F = X.n_features();
    const auto C = static_cast<std::size_t>(n_classes);
    if (params.size() != C * F + C || grad.size() != params.size()) throw ConfigError("parameter vector has the wrong length");
    const auto W = params.first(C * F);
    const auto b = params.subspan(C * F);
    std::fill(grad.begin(), grad.end(), 0.0);
    auto gW = grad.first(C * F);
    auto gb = grad.subspan(C * F);

    double loss = 0.0;
    std::vector<double> z(C);
    for (std::size_t r = 0; r < X.rows(); ++r) {
        const auto row = X.row(r);
        for (std::size_t c = 0; c < C; ++c) z[c] = kernels::sparse_dot(row.indices, row.values, W.subspan(c * F, F)) + b[c];
        const double m = *std::max_element(z.begin(), z.end());
        double sum = 0.0;
        for (std::size_t c = 0; c < C; ++c) sum += std::exp(z[c] - m);
        const double lse = m + std::log(sum);
        const auto yc = static_cast<std::size_t>(y[r]);
        loss += lse - z[yc];
        for (std::size_t c = 0; c < C; ++c) {
            const double coef = std::exp(z[c] - lse) - (c == yc ? 1.0 : 0.0);
            if (coef == 0.0) continue;
            kernels::sparse_axpy(coef, row.indices, row.values, gW.subspan(c * F, F));
            gb[c] += coef;
        }
    }
    loss += kernels::dot(W, W) / (2.0 * reg_strength);
    kernels::axpy(1.0 / reg_strength, W, gW);
    return loss;
}

double squared_hinge_objective(const DocTermMatrix& X, std::span<const int> y, int n_classes, double reg_strength,
                               std::span<const double> params, std::span<double> grad) {
    const auto F = X.n_features();
    const auto C = static_cast<std::size_t>(n_classes);
    if (params.size() != C * F + C || grad.size() != params.size()) throw ConfigError("parameter vector has the wrong length");
    const auto W = params.first(C * F);
    const auto b = params.subspan(C * F);
    std::fill(grad.begin(), grad.end(), 0.0);
    auto gW = grad.first(C * F);
    auto gb = grad.subspan(C * F);

    double loss = 0.0;
    for (std::size_t r = 0; r < X.rows(); ++r) {
        const auto row = X.row(r);
        for (std::size_t c = 0; c < C; ++c) {
            const double s = static_cast<std::size_t>(y[r]) == c ? 1.0 : -1.0;
            const double slack = 1.0 - s * (kernels::sparse_dot(row.indices, row.values, W.subspan(c * F, F)) + b[c]);
            if (slack <= 0.0) continue;
            loss += slack * slack;
            const double coef = -2.0 * s * slack;
            kernels::sparse_axpy(coef, row.indices, row.values, gW.subspan(c * F, F));
            gb[c] += coef;
        }
    }
    loss += kernels::dot(W, W) / (2.0 * reg_strength);
    kernels::axpy(1.0 / reg_strength, W, gW);
    return loss;
}

namespace {

using ObjectiveFn = double (*)(const DocTermMatrix&, std::span<const int>, int, double, std::span<const double>,
                               std::span<double>);

LinearModel fit_linear(LinearKind kind, ObjectiveFn objective, const DocTermMatrix& X, std::span<const int> y,
                       const TrainConfig& config, int n_classes) {
    config.validate();
    const auto F = X.n_features();
    const auto C = static_cast<std::size_t>(n_classes);
    std::vector<double> params(C * F + C, 0.0);
    detail::LbfgsOptions options;
    options.max_iter = config.max_iter;
    options.tol = config.tol;
    const auto result = detail::minimize_lbfgs(
        [&](std::span<const double> p, std::span<double> g) {
            return objective(X, y, n_classes, config.reg_strength, p, g);
        },
        params, options);

    LinearModel m;
    m.kind = kind;
    m.n_classes = n_classes;
    m.n_features = F;
    m.reg_strength = config.reg_strength;
    m.weights.assign(params.begin(), params.begin() + static_cast<std::ptrdiff_t>(C * F));
    m.intercepts.assign(params.begin() + static_cast<std::ptrdiff_t>(C * F), params.end());
    m.fit = {result.converged, result.iterations, result.grad_inf_norm, result.objective_trace};
    return m;
}

}  // namespace

LinearModel lr_fit(const DocTermMatrix& X, std::span<const int> y, const TrainConfig& config, int n_classes) {
    check_labels(X, y, n_classes);
    return fit_linear(LinearKind::logistic, logistic_objective, X, y, config, n_classes);
}

LinearModel svm_fit(const DocTermMatrix& X, std::span<const int> y, const TrainConfig& config, int n_classes) {
    check_labels(X, y, n_classes);
    require_all_classes(y, n_classes);
    return fit_linear(LinearKind::svm, squared_hinge_objective, X, y, config, n_classes);
}

std::vector<double> decision_scores(const LinearModel& model, SparseView x) {
    std::vector<double> z(model.intercepts);
    for (int c = 0; c < model.n_classes; ++c) z[static_cast<std::size_t>(c)] += kernels::sparse_dot(x.indices, x.values, model.row(c));
    return z;
}

std::vector<double> lr_predict_proba(const LinearModel& model, SparseView x) {
    if (model.kind != LinearKind::logistic) throw ConfigError("probabilities are only defined for logistic models");
    auto z = decision_scores(model, x);
    softmax_in_place(z);
    return z;
}

int argmax(std::span<const double> scores) {
    int best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i)
        if (scores[i] > scores[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
    return best;
}

std::vector<int> predict(const NBModel& model, const DocTermMatrix& X) {
    check_dims(model.n_features, X.n_features());
    std::vector<int> out;
    out.reserve(X.rows());
    for (std::size_t r = 0; r < X.rows(); ++r) out.push_back(argmax(nb_joint_log_likelihood(model, X.row(r))));
    return out;
}

std::vector<int> predict(const LinearModel& model, const DocTermMatrix& X) {
    check_dims(model.n_features, X.n_features());
    std::vector<int> out;
    out.reserve(X.rows());
    for (std::size_t r = 0; r < X.rows(); ++r) out.push_back(argmax(decision_scores(model, X.row(r))));
    return out;
}

std::vector<int> predict(const Model& model, const DocTermMatrix& X) {
    return std::visit([&](const auto& m) { return predict(m, X); }, model);
}

namespace {

std::vector<double> coefficients_of(const LinearModel& model, std::size_t t) {
    std::vector<double> v;
    for (int c = 0; c < model.n_classes; ++c) v.push_back(model.weights[static_cast<std::size_t>(c) * model.n_features + t]);
    return v;
}

double population_std(const std::vector<double>& v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size()));
}

// Column indices follow term order, so index order is the lexicographic tie-break.
std::vector<RankedTerm> rank_by(const LinearModel& model, const Vocabulary& vocab, std::size_t k,
                                const std::vector<double>& score, bool descending) {
    if (vocab.size() != model.n_features) throw DataError("vocabulary size does not match the model");
    std::vector<std::size_t> order(score.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto take = std::min(k, order.size());
    auto cmp = [&](std::size_t a, std::size_t b) {
        if (score[a] != score[b]) return descending ? score[a] > score[b] : score[a] < score[b];
        return a < b;
    };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(), cmp);
    std::vector<RankedTerm> out;
    for (std::size_t i = 0; i < take; ++i) {
        const auto t = order[i];
        out.push_back({vocab.term(t), coefficients_of(model, t), score[t]});
    }
    return out;
}

}  // namespace

std::vector<RankedTerm> top_features(const LinearModel& model, const Vocabulary& vocab, int c, std::size_t k) {
    if (c < 0 || c >= model.n_classes) throw ConfigError("class index out of range");
    const auto row = model.row(c);
    return rank_by(model, vocab, k, std::vector<double>(row.begin(), row.end()), true);
}

std::vector<RankedTerm> discriminative_rank(const LinearModel& model, const Vocabulary& vocab, std::size_t k,
                                            RankDirection direction) {
    std::vector<double> score(model.n_features);
    for (std::size_t t = 0; t < score.size(); ++t) score[t] = population_std(coefficients_of(model, t));
    return rank_by(model, vocab, k, score, direction == RankDirection::most);
}

Explanation explain_doc(const NBModel& model, const Vocabulary& vocab, std::string_view text,
                        const Preprocessor& prep, WeightingMode weighting) {
    if (vocab.size() != model.n_features) throw DataError("vocabulary size does not match the model");
    const auto grams = prep(text);
    const auto x = transform_one(grams, vocab, weighting);
    Explanation out;
    std::unordered_set<std::string> seen;
    for (const auto& g : grams) {
        if (!seen.insert(g).second) continue;
        const auto idx = vocab.index_of(g);
        if (!idx) {
            out.out_of_vocab.push_back(g);
            continue;
        }
        ExplainRow row{g, 0.0, {}};
        const auto pos = std::lower_bound(x.indices.begin(), x.indices.end(), *idx);
        if (pos != x.indices.end() && *pos == *idx) row.weight = x.values[static_cast<std::size_t>(pos - x.indices.begin())];
        for (int c = 0; c < model.n_classes; ++c) row.log_lik.push_back(model.log_lik(c, *idx));
        out.rows.push_back(std::move(row));
    }
    out.posterior = nb_predict_proba(model, x.view());
    return out;
}

namespace {

nlohmann::json rows_to_json(const std::vector<double>& flat, int n_rows, std::size_t n_cols) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < n_rows; ++r) {
        const auto begin = flat.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(r) * n_cols);
        rows.push_back(std::vector<double>(begin, begin + static_cast<std::ptrdiff_t>(n_cols)));
    }
    return rows;
}

std::vector<double> rows_from_json(const nlohmann::json& j, int n_rows, std::size_t n_cols, const char* what) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(n_rows)) throw DataError(std::string(what) + " has the wrong row count");
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(n_rows) * n_cols);
    for (const auto& row : j) {
        auto v = row.get<std::vector<double>>();
        if (v.size() != n_cols) throw DataError(std::string(what) + " has the wrong column count");
        flat.insert(flat.end(), v.begin(), v.end());
    }
    return flat;
}

void require_finite(const std::vector<double>& v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x)) throw DataError(std::string(what) + " contains a non-finite value");
}

}  // namespace

nlohmann::json to_json(const NBModel& m) {
    return {{"n_classes", m.n_classes},
            {"n_features", m.n_features},
            {"alpha", m.alpha},
            {"class_log_prior", m.class_log_prior},
            {"feature_log_lik", rows_to_json(m.feature_log_lik, m.n_classes, m.n_features)}};
}

nlohmann::json to_json(const LinearModel& m) {
    return {{"kind", to_string(m.kind)},
            {"n_classes", m.n_classes},
            {"n_features", m.n_features},
            {"reg_strength", m.reg_strength},
            {"weights", rows_to_json(m.weights, m.n_classes, m.n_features)},
            {"intercepts", m.intercepts},
            {"fit", {{"converged", m.fit.converged},
                     {"iterations", m.fit.iterations},
                     {"grad_inf_norm", m.fit.grad_inf_norm},
                     {"objective_trace", m.fit.objective_trace}}}};
}

NBModel nb_model_from_json(const nlohmann::json& j) {
    try {
        NBModel m;
        m.n_classes = j.at("n_classes").get<int>();
        m.n_features = j.at("n_features").get<std::size_t>();
        m.alpha = j.at("alpha").get<double>();
        if (m.n_classes < 1) throw DataError("n_classes must be >= 1");
        m.class_log_prior = j.at("class_log_prior").get<std::vector<double>>();
        if (m.class_log_prior.size() != static_cast<std::size_t>(m.n_classes)) throw DataError("class_log_prior has the wrong length");
        m.feature_log_lik = rows_from_json(j.at("feature_log_lik"), m.n_classes, m.n_features, "feature_log_lik");
        require_finite(m.class_log_prior, "class_log_prior");
        require_finite(m.feature_log_lik, "feature_log_lik");
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed NB parameters: ") + e.what());
    }
}

LinearModel linear_model_from_json(const nlohmann::json& j) {
    try {
        LinearModel m;
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "logistic") m.kind = LinearKind::logistic;
        else if (kind == "svm") m.kind = LinearKind::svm;
        else throw DataError("unknown linear model kind '" + kind + "'");
        m.n_classes = j.at("n_classes").get<int>();
        m.n_features = j.at("n_features").get<std::size_t>();
        m.reg_strength = j.at("reg_strength").get<double>();
        if (m.n_classes < 1) throw DataError("n_classes must be >= 1");
        m.weights = rows_from_json(j.at("weights"), m.n_classes, m.n_features, "weights");
        m.intercepts = j.at("intercepts").get<std::vector<double>>();
        if (m.intercepts.size() != static_cast<std::size_t>(m.n_classes)) throw DataError("intercepts have the wrong length");
        require_finite(m.weights, "weights");
        require_finite(m.intercepts, "intercepts");
        if (j.contains("fit")) {
            const auto& f = j.at("fit");
            m.fit.converged = f.at("converged").get<bool>();
            m.fit.iterations = f.at("iterations").get<int>();
            m.fit.grad_inf_norm = f.at("grad_inf_norm").get<double>();
            m.fit.objective_trace = f.at("objective_trace").get<std::vector<double>>();
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed linear model parameters: ") + e.what());
    }
}

std::string_view model_kind(const Model& model) noexcept {
    if (const auto* lin = std::get_if<LinearModel>(&model)) return lin->kind == LinearKind::svm ? "svm" : "lr";
    return "nb";
}

}  // namespace sentibench
