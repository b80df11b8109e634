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

#include <cmath>
#include <numeric>

#include "sentibench/error.hpp"
#include "sentibench/models.hpp"
#include "sentibench/rng.hpp"
#include "sentibench/textprep.hpp"
#include "test_support.hpp"

using namespace sentibench;
using sentibench::testing::dense_to_matrix;

namespace {

using Dense = std::vector<std::vector<double>>;

// Exhaustive Bayes rule over a dense count table: parameters recounted from
// scratch, then a posterior computed in probability space.
std::vector<double> bayes_posterior(const Dense& X, const std::vector<int>& y, int k, double alpha,
                                    const std::vector<double>& x) {
    const std::size_t v = X[0].size();
    std::vector<double> joint(k);
    for (int c = 0; c < k; ++c) {
        double docs_c = 0;
        std::vector<double> counts(v, 0.0);
        for (std::size_t i = 0; i < X.size(); ++i) {
            if (y[i] != c) continue;
            ++docs_c;
            for (std::size_t t = 0; t < v; ++t) counts[t] += X[i][t];
        }
        const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
        double p = docs_c / static_cast<double>(X.size());
        for (std::size_t t = 0; t < v; ++t) p *= std::pow((counts[t] + alpha) / (total + alpha * v), x[t]);
        joint[c] = p;
    }
    const double z = std::accumulate(joint.begin(), joint.end(), 0.0);
    for (auto& p : joint) p /= z;
    return joint;
}

SparseVec sparse(const std::vector<double>& dense) {
    SparseVec v;
    for (std::size_t t = 0; t < dense.size(); ++t)
        if (dense[t] != 0.0) {
            v.indices.push_back(static_cast<std::uint32_t>(t));
            v.values.push_back(dense[t]);
        }
    return v;
}

struct Problem {
    Dense X;
    std::vector<int> y;
};

Problem random_problem(std::uint64_t seed, std::size_t rows, std::size_t cols, int k, int max_count = 3) {
    Rng rng(seed);
    Problem p;
    for (std::size_t i = 0; i < rows; ++i) {
        std::vector<double> r(cols);
        for (auto& v : r) v = rng.below(4) == 0 ? static_cast<double>(rng.below(max_count) + 1) : 0.0;
        p.X.push_back(r);
        p.y.push_back(static_cast<int>(i % static_cast<std::size_t>(k)));
    }
    return p;
}

// Three classes, each owning two features that never occur elsewhere.
Problem separable_problem() {
    Problem p;
    for (int i = 0; i < 30; ++i) {
        const int c = i % 3;
        std::vector<double> r(7, 0.0);
        r[2 * c] = 1 + i % 2;
        r[2 * c + 1] = 1;
        r[6] = 1 + i % 3;  // shared noise feature
        p.X.push_back(r);
        p.y.push_back(c);
    }
    return p;
}

double accuracy(const std::vector<int>& pred, const std::vector<int>& y) {
    double ok = 0;
    for (std::size_t i = 0; i < y.size(); ++i) ok += pred[i] == y[i];
    return ok / static_cast<double>(y.size());
}

Vocabulary vocab_of(std::vector<std::string> terms) {
    std::vector<std::pair<std::string, std::size_t>> tdf;
    for (auto& t : terms) tdf.emplace_back(std::move(t), 1);
    return Vocabulary(std::move(tdf), 1, 1);
}

}  // namespace

TEST_CASE("NB log-likelihood table on a hand-counted fixture") {
    // Two classes, vocabulary {a, b, c}.
    const Dense X = {{2, 1, 0}, {1, 0, 0}, {0, 1, 3}, {0, 0, 1}};
    const std::vector<int> y = {0, 0, 1, 1};
    const auto m = nb_fit(dense_to_matrix(X, 3), y, 1.0, 2);
    // class 0 counts (3, 1, 0), total 4 -> (4, 2, 1) / 7
    CHECK(std::fabs(m.log_lik(0, 0) - std::log(4.0 / 7)) <= 1e-12);
    CHECK(std::fabs(m.log_lik(0, 1) - std::log(2.0 / 7)) <= 1e-12);
    CHECK(std::fabs(m.log_lik(0, 2) - std::log(1.0 / 7)) <= 1e-12);
    // class 1 counts (0, 1, 4), total 5 -> (1, 2, 5) / 8
    CHECK(std::fabs(m.log_lik(1, 0) - std::log(1.0 / 8)) <= 1e-12);
    CHECK(std::fabs(m.log_lik(1, 1) - std::log(2.0 / 8)) <= 1e-12);
    CHECK(std::fabs(m.log_lik(1, 2) - std::log(5.0 / 8)) <= 1e-12);
    CHECK(std::fabs(m.class_log_prior[0] - std::log(0.5)) <= 1e-12);
}

TEST_CASE("NB single document, single class") {
    const auto m = nb_fit(dense_to_matrix({{1}}, 1), std::vector<int>{0}, 1.0, 1);
    CHECK(m.class_log_prior[0] == 0.0);
    CHECK(std::fabs(m.log_lik(0, 0)) <= 1e-15);
}

TEST_CASE("NB smoothing-only mass for an unseen term") {
    const Dense X = {{3, 0, 0}, {1, 0, 2}, {0, 5, 0}};
    const auto m = nb_fit(dense_to_matrix(X, 3), std::vector<int>{0, 0, 1}, 1.0, 2);
    CHECK(m.log_lik(0, 1) == std::log(1.0 / (6 + 3)));
    CHECK(m.log_lik(1, 0) == std::log(1.0 / (5 + 3)));
}

TEST_CASE("NB posteriors equal the exhaustive Bayes rule") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Rng rng(seed + 1000);
        const std::size_t v = 2 + rng.below(4);     // <= 5
        const std::size_t n = 3 + rng.below(6);     // <= 8
        const double alpha = seed % 2 ? 1.0 : 0.5;
        auto p = random_problem(seed, n, v, 3);
        const auto m = nb_fit(dense_to_matrix(p.X, v), p.y, alpha, 3);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<double> x(v);
            for (auto& t : x) t = static_cast<double>(rng.below(3));
            const auto expect = bayes_posterior(p.X, p.y, 3, alpha, x);
            const auto got = nb_predict_proba(m, sparse(x).view());
            for (int c = 0; c < 3; ++c) CHECK(std::fabs(got[c] - expect[c]) <= 1e-12);
        }
    }
}

TEST_CASE("NB likelihood rows are normalized and posteriors sum to one") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto p = random_problem(seed, 60, 40, 3);
        const auto m = nb_fit(dense_to_matrix(p.X, 40), p.y, 1.0);
        for (int c = 0; c < 3; ++c) {
            double s = 0;
            for (std::size_t t = 0; t < 40; ++t) s += std::exp(m.log_lik(c, t));
            CHECK(std::fabs(s - 1.0) <= 1e-9);
        }
        const auto post = nb_predict_proba(m, sparse(p.X[0]).view());
        CHECK(std::fabs(post[0] + post[1] + post[2] - 1.0) <= 1e-12);
    }
}

TEST_CASE("NB empty document gives the prior") {
    const Dense X = {{1, 0}, {0, 1}, {1, 1}, {0, 2}};
    const auto m = nb_fit(dense_to_matrix(X, 2), std::vector<int>{0, 1, 2, 2}, 1.0);
    const auto post = nb_predict_proba(m, SparseView{});
    CHECK(std::fabs(post[0] - 0.25) <= 1e-12);
    CHECK(std::fabs(post[2] - 0.5) <= 1e-12);
}

TEST_CASE("NB errors") {
    const Dense X = {{1, 0}, {0, 1}};
    CHECK_THROWS_WITH_AS(nb_fit(dense_to_matrix(X, 2), std::vector<int>{0, 2}, 1.0),
                         "class 1 is absent from the training labels", ConfigError);
    const auto m = nb_fit(dense_to_matrix(X, 2), std::vector<int>{0, 1}, 1.0, 2);
    const auto vocab = vocab_of({"a", "b"});
    CHECK(nb_feature_loglik(m, vocab, "b", 1) == m.log_lik(1, 1));
    CHECK_THROWS_AS(nb_feature_loglik(m, vocab, "zzz", 0), ConfigError);
    CHECK_THROWS_AS(predict(m, dense_to_matrix(X, 3)), DataError);
}

TEST_CASE("logistic gradient matches central finite differences") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        const std::size_t rows = 5 + rng.below(16);
        const std::size_t cols = 2 + rng.below(9);
        auto p = random_problem(seed + 50, rows, cols, 3);
        const auto X = dense_to_matrix(p.X, cols);
        std::vector<double> w((cols + 1) * 3);
        for (auto& v : w) v = (static_cast<double>(rng.below(2001)) - 1000.0) / 1000.0;
        std::vector<double> g(w.size());
        const double C = 0.7;
        logistic_objective(X, p.y, 3, C, w, g);
        std::vector<double> scratch(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double h = 1e-6;
            auto plus = w;
            auto minus = w;
            plus[i] += h;
            minus[i] -= h;
            const double fd = (logistic_objective(X, p.y, 3, C, plus, scratch) -
                               logistic_objective(X, p.y, 3, C, minus, scratch)) / (2 * h);
            CHECK(std::fabs(fd - g[i]) <= 1e-5 * std::max(1.0, std::fabs(g[i])));
        }
    }
}

TEST_CASE("squared hinge gradient matches central finite differences") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed + 77);
        auto p = random_problem(seed + 90, 12, 6, 3);
        const auto X = dense_to_matrix(p.X, 6);
        std::vector<double> w(7 * 3);
        for (auto& v : w) v = (static_cast<double>(rng.below(2001)) - 1000.0) / 3000.0;
        std::vector<double> g(w.size());
        squared_hinge_objective(X, p.y, 3, 1.0, w, g);
        std::vector<double> scratch(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double h = 1e-6;
            auto plus = w;
            auto minus = w;
            plus[i] += h;
            minus[i] -= h;
            const double fd = (squared_hinge_objective(X, p.y, 3, 1.0, plus, scratch) -
                               squared_hinge_objective(X, p.y, 3, 1.0, minus, scratch)) / (2 * h);
            CHECK(std::fabs(fd - g[i]) <= 1e-5 * std::max(1.0, std::fabs(g[i])));
        }
    }
}

TEST_CASE("logistic regression fits a separable problem") {
    const auto p = separable_problem();
    const auto X = dense_to_matrix(p.X, 7);
    TrainConfig cfg;
    cfg.reg_strength = 10.0;
    const auto m = lr_fit(X, p.y, cfg);
    CHECK(m.fit.converged);
    CHECK(accuracy(predict(m, X), p.y) == 1.0);
    for (std::size_t i = 1; i < m.fit.objective_trace.size(); ++i)
        CHECK(m.fit.objective_trace[i] <= m.fit.objective_trace[i - 1]);
    const auto proba = lr_predict_proba(m, X.row(0));
    CHECK(std::fabs(proba[0] + proba[1] + proba[2] - 1.0) <= 1e-12);
}

TEST_CASE("logistic regression two-class separable toy") {
    const Dense X = {{1, 0}, {2, 0}, {0, 1}, {0, 3}};
    const std::vector<int> y = {0, 0, 1, 1};
    const auto m = lr_fit(dense_to_matrix(X, 2), y, TrainConfig{}, 2);
    CHECK(accuracy(predict(m, dense_to_matrix(X, 2)), y) == 1.0);
}

TEST_CASE("logistic regression with a single label predicts it everywhere") {
    const auto p = random_problem(5, 20, 8, 3);
    const std::vector<int> y(20, 2);
    const auto X = dense_to_matrix(p.X, 8);
    const auto m = lr_fit(X, y, TrainConfig{});
    for (int label : predict(m, X)) CHECK(label == 2);
    CHECK(predict(m, dense_to_matrix({{0, 0, 0, 0, 0, 0, 0, 0}}, 8))[0] == 2);
}

TEST_CASE("SVM fits a separable problem with zero hinge loss") {
    const auto p = separable_problem();
    const auto X = dense_to_matrix(p.X, 7);
    TrainConfig cfg;
    cfg.reg_strength = 100.0;
    const auto m = svm_fit(X, p.y, cfg);
    CHECK(accuracy(predict(m, X), p.y) == 1.0);
    for (std::size_t i = 0; i < p.y.size(); ++i) {
        const auto s = decision_scores(m, X.row(i));
        for (int c = 0; c < 3; ++c) {
            const double target = c == p.y[i] ? 1.0 : -1.0;
            CHECK(target * s[c] >= 1.0 - 1e-3);
        }
    }
    for (std::size_t i = 1; i < m.fit.objective_trace.size(); ++i)
        CHECK(m.fit.objective_trace[i] <= m.fit.objective_trace[i - 1]);
    CHECK_THROWS_AS(lr_predict_proba(m, X.row(0)), ConfigError);
}

TEST_CASE("SVM names the missing class") {
    const Dense X = {{1, 0}, {0, 1}};
    CHECK_THROWS_WITH_AS(svm_fit(dense_to_matrix(X, 2), std::vector<int>{0, 0}, TrainConfig{}),
                         doctest::Contains("class 1"), ConfigError);
}

TEST_CASE("zero weights give uniform probabilities") {
    LinearModel m;
    m.n_classes = 3;
    m.n_features = 4;
    m.weights.assign(12, 0.0);
    m.intercepts.assign(3, 0.0);
    const auto p = lr_predict_proba(m, SparseView{});
    for (double v : p) CHECK(std::fabs(v - 1.0 / 3) <= 1e-15);
    CHECK(predict(Model{m}, dense_to_matrix({{1, 2, 3, 4}}, 4))[0] == 0);
}

TEST_CASE("probabilities and decisions are invariant to a shared intercept shift") {
    const auto p = random_problem(9, 40, 10, 3);
    const auto X = dense_to_matrix(p.X, 10);
    auto m = lr_fit(X, p.y, TrainConfig{});
    auto shifted = m;
    for (auto& b : shifted.intercepts) b += 17.25;
    CHECK(predict(m, X) == predict(shifted, X));
    for (std::size_t i = 0; i < X.rows(); ++i) {
        const auto a = lr_predict_proba(m, X.row(i));
        const auto b = lr_predict_proba(shifted, X.row(i));
        for (int c = 0; c < 3; ++c) CHECK(std::fabs(a[c] - b[c]) <= 1e-12);
    }
}

TEST_CASE("linear probabilities match a dense hand computation") {
    LinearModel m;
    m.n_classes = 3;
    m.n_features = 2;
    m.weights = {0.5, -1.0, 0.0, 2.0, -0.25, 0.75};
    m.intercepts = {0.1, -0.2, 0.3};
    const std::vector<double> x = {2.0, 1.0};
    double s[3];
    for (int c = 0; c < 3; ++c) s[c] = m.weights[2 * c] * x[0] + m.weights[2 * c + 1] * x[1] + m.intercepts[c];
    const double z = std::exp(s[0]) + std::exp(s[1]) + std::exp(s[2]);
    const auto p = lr_predict_proba(m, sparse(x).view());
    for (int c = 0; c < 3; ++c) CHECK(std::fabs(p[c] - std::exp(s[c]) / z) <= 1e-12);
}

TEST_CASE("argmax ties go to the lowest index") {
    CHECK(argmax(std::vector<double>{0.999, 0.001, 0.0}) == 0);
    CHECK(argmax(std::vector<double>{1.0, 1.0, 1.0}) == 0);
    CHECK(argmax(std::vector<double>{0.2, 0.4, 0.4}) == 1);
    CHECK(argmax(std::vector<double>{-3, -1, -2}) == 1);
}

TEST_CASE("batch predictions match the row-wise argmax oracle") {
    const auto p = random_problem(13, 50, 12, 3);
    const auto X = dense_to_matrix(p.X, 12);
    const auto nb = nb_fit(X, p.y, 1.0);
    const auto svm = svm_fit(X, p.y, TrainConfig{});
    const auto nb_pred = predict(nb, X);
    const auto svm_pred = predict(svm, X);
    for (std::size_t i = 0; i < X.rows(); ++i) {
        const auto post = nb_predict_proba(nb, X.row(i));
        int best = 0;
        for (int c = 1; c < 3; ++c)
            if (post[c] > post[best]) best = c;
        CHECK(nb_pred[i] == best);
        CHECK(svm_pred[i] == argmax(decision_scores(svm, X.row(i))));
    }
}

TEST_CASE("top features put a planted term first") {
    LinearModel m;
    m.n_classes = 3;
    m.n_features = 4;
    m.weights = {0.1, 0.1, 5.0, -1.0,
                 0.2, 0.0, 0.0, 0.0,
                 -0.3, 0.0, 0.0, 0.4};
    m.intercepts = {0, 0, 0};
    const auto vocab = vocab_of({"alpha", "beta", "gamma", "zeta"});
    const auto top = top_features(m, vocab, 0, 3);
    REQUIRE(top.size() == 3);
    CHECK(top[0].term == "gamma");
    CHECK(top[1].term == "alpha");  // tie with beta broken lexicographically
    CHECK(top[2].term == "beta");
    CHECK(top[0].coefficients == std::vector<double>{5.0, 0.0, 0.0});
    CHECK(top_features(m, vocab, 0, 0).empty());
    CHECK(top_features(m, vocab, 0, 99).size() == 4);
}

TEST_CASE("discriminative ranking matches a brute-force standard deviation") {
    const auto p = random_problem(21, 60, 9, 3);
    const auto X = dense_to_matrix(p.X, 9);
    auto m = lr_fit(X, p.y, TrainConfig{});
    // Term 4 gets identical coefficients in every class.
    for (int c = 0; c < 3; ++c) m.weights[static_cast<std::size_t>(c) * 9 + 4] = 0.3;
    std::vector<std::string> terms;
    for (int t = 0; t < 9; ++t) terms.push_back("t" + std::to_string(t));
    const auto vocab = vocab_of(terms);
    std::vector<std::pair<double, std::string>> oracle;
    for (std::size_t t = 0; t < 9; ++t) {
        double mean = 0;
        for (int c = 0; c < 3; ++c) mean += m.row(c)[t] / 3;
        double var = 0;
        for (int c = 0; c < 3; ++c) var += (m.row(c)[t] - mean) * (m.row(c)[t] - mean) / 3;
        oracle.emplace_back(std::sqrt(var), vocab.term(t));
    }
    const auto most = discriminative_rank(m, vocab, 9, RankDirection::most);
    const auto least = discriminative_rank(m, vocab, 9, RankDirection::least);
    REQUIRE(most.size() == 9);
    for (std::size_t i = 0; i < 9; ++i) {
        const auto& o = *std::find_if(oracle.begin(), oracle.end(), [&](auto& e) { return e.second == most[i].term; });
        CHECK(std::fabs(most[i].score - o.first) <= 1e-12);
        if (i > 0) CHECK(most[i - 1].score >= most[i].score);
    }
    CHECK(most.back().term == "t4");
    CHECK(most.back().score == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(least.front().term == "t4");
}

TEST_CASE("explain rows agree with the stored log likelihoods") {
    const TextResources res(SENTIBENCH_SOURCE_DATA_DIR);
    PrepConfig cfg;
    cfg.ngram_max = 2;
    const Preprocessor prep(cfg, res);
    const std::vector<std::string> texts = {"the food is good", "the food is not good", "service was slow",
                                            "good service", "not good at all", "food was fine"};
    GramDocs grams;
    for (const auto& t : texts) grams.push_back(prep(t));
    const auto vocab = fit_vocabulary(grams, 1);
    const auto X = transform(grams, vocab, WeightingMode::binary);
    const auto m = nb_fit(X, std::vector<int>{2, 0, 0, 2, 0, 1}, 1.0);

    const auto e = explain_doc(m, vocab, "The food is NOT good, wow wow", prep, WeightingMode::binary);
    for (const auto& row : e.rows) {
        CHECK(row.weight == 1.0);
        for (int c = 0; c < 3; ++c) CHECK(row.log_lik[c] == nb_feature_loglik(m, vocab, row.gram, c));
    }
    CHECK(e.rows.front().gram == "the");
    CHECK(e.out_of_vocab == std::vector<std::string>{"wow", "good wow", "wow wow"});
    const auto x = transform_one(prep("The food is NOT good, wow wow"), vocab, WeightingMode::binary);
    CHECK(e.posterior == nb_predict_proba(m, x.view()));

    const auto empty = explain_doc(m, vocab, "", prep, WeightingMode::binary);
    CHECK(empty.rows.empty());
    for (int c = 0; c < 3; ++c) CHECK(std::fabs(empty.posterior[c] - std::exp(m.class_log_prior[c])) <= 1e-12);
}

TEST_CASE("model JSON round trips are exact") {
    const auto p = random_problem(31, 30, 6, 3);
    const auto X = dense_to_matrix(p.X, 6);
    const auto nb = nb_fit(X, p.y, 0.5);
    const auto nb2 = nb_model_from_json(to_json(nb));
    CHECK(nb2.feature_log_lik == nb.feature_log_lik);
    CHECK(nb2.class_log_prior == nb.class_log_prior);
    const auto lr = lr_fit(X, p.y, TrainConfig{});
    const auto lr2 = linear_model_from_json(to_json(lr));
    CHECK(lr2.weights == lr.weights);
    CHECK(lr2.intercepts == lr.intercepts);
    CHECK(lr2.kind == LinearKind::logistic);
    CHECK(model_kind(Model{lr2}) == "lr");
    CHECK(model_kind(Model{svm_fit(X, p.y, TrainConfig{})}) == "svm");
    CHECK(model_kind(Model{nb2}) == "nb");
    auto broken = to_json(nb);
    broken["n_features"] = 7;
    CHECK_THROWS_AS(nb_model_from_json(broken), DataError);
}

TEST_CASE("training is deterministic") {
    const auto p = random_problem(41, 80, 20, 3);
    const auto X = dense_to_matrix(p.X, 20);
    CHECK(to_json(lr_fit(X, p.y, TrainConfig{})).dump() == to_json(lr_fit(X, p.y, TrainConfig{})).dump());
    CHECK(to_json(svm_fit(X, p.y, TrainConfig{})).dump() == to_json(svm_fit(X, p.y, TrainConfig{})).dump());
    CHECK(to_json(nb_fit(X, p.y, 1.0)).dump() == to_json(nb_fit(X, p.y, 1.0)).dump());
}

TEST_CASE("train config validation and JSON") {
    TrainConfig c;
    CHECK_NOTHROW(c.validate());
    c.alpha = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.alpha = 0.5;
    c.max_iter = 20;
    CHECK(train_config_from_json(to_json(c)) == c);
    CHECK_THROWS_AS(train_config_from_json(nlohmann::json{{"learning_rate", 1}}), ConfigError);
}
