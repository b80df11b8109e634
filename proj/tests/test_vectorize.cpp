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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "sentibench/error.hpp"
#include "sentibench/rng.hpp"
#include "sentibench/vectorize.hpp"

using namespace sentibench;

namespace {

GramDocs fixture_docs() {
    return {
        {"good", "food", "good"},       {"bad", "service"},          {"good", "service", "fast"},
        {"food", "cold", "bad", "bad"}, {"great", "food"},           {"service", "slow", "food"},
        {"good", "good", "good"},       {"fast", "food", "cheap"},   {"cold", "fries"},
        {"food", "good", "service"},
    };
}

std::map<std::string, std::size_t> brute_force_df(const GramDocs& docs) {
    std::map<std::string, std::size_t> df;
    for (const auto& d : docs)
        for (const auto& g : std::set<std::string>(d.begin(), d.end())) ++df[g];
    return df;
}

double dense_at(const DocTermMatrix& m, std::size_t r, std::size_t c) {
    const auto row = m.row(r);
    for (std::size_t k = 0; k < row.size(); ++k)
        if (row.indices[k] == c) return row.values[k];
    return 0.0;
}

GramDocs random_docs(std::uint64_t seed, std::size_t n_docs) {
    Rng rng(seed);
    GramDocs docs(n_docs);
    for (auto& d : docs) {
        const auto len = rng.below(12);
        for (std::size_t i = 0; i < len; ++i) d.push_back("w" + std::to_string(rng.below(25)));
    }
    return docs;
}

}  // namespace

TEST_CASE("vocabulary membership equals a brute-force df recount") {
    const auto docs = fixture_docs();
    const auto df = brute_force_df(docs);
    for (int min_df : {1, 2, 3, 6, 11}) {
        const auto vocab = fit_vocabulary(docs, min_df);
        std::set<std::string> expect;
        for (const auto& [term, n] : df)
            if (n >= static_cast<std::size_t>(min_df)) expect.insert(term);
        CHECK(std::set<std::string>(vocab.terms().begin(), vocab.terms().end()) == expect);
        for (std::size_t i = 0; i < vocab.size(); ++i) CHECK(vocab.doc_freq(i) == df.at(vocab.term(i)));
        CHECK(vocab.n_docs_fitted() == docs.size());
    }
}

TEST_CASE("min_df 6 on random corpora matches the recount") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto docs = random_docs(seed, 40);
        const auto df = brute_force_df(docs);
        const auto vocab = fit_vocabulary(docs, 6);
        std::size_t expected = 0;
        for (const auto& [term, n] : df) {
            const bool kept = vocab.index_of(term).has_value();
            CHECK(kept == (n >= 6));
            expected += kept;
        }
        CHECK(vocab.size() == expected);
    }
}

TEST_CASE("indices are lexicographic and bijective") {
    const auto vocab = fit_vocabulary(fixture_docs(), 1);
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        CHECK(*vocab.index_of(vocab.term(i)) == i);
        if (i > 0) CHECK(vocab.term(i - 1) < vocab.term(i));
    }
    CHECK(!vocab.index_of("absent").has_value());
}

TEST_CASE("fit preconditions") {
    CHECK_THROWS_AS(fit_vocabulary(fixture_docs(), 0), ConfigError);
    CHECK_THROWS_AS(fit_vocabulary(GramDocs{}, 1), ConfigError);
}

TEST_CASE("count matrix equals a dense recount") {
    const auto docs = random_docs(7, 30);
    const auto vocab = fit_vocabulary(docs, 2);
    const auto m = transform(docs, vocab, WeightingMode::count);
    REQUIRE(m.rows() == docs.size());
    CHECK(m.n_features() == vocab.size());
    for (std::size_t r = 0; r < docs.size(); ++r)
        for (std::size_t c = 0; c < vocab.size(); ++c) {
            double n = 0;
            for (const auto& g : docs[r]) n += g == vocab.term(c);
            CHECK(dense_at(m, r, c) == n);
        }
}

TEST_CASE("binary matrices contain only ones") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto docs = random_docs(seed, 30);
        const auto vocab = fit_vocabulary(docs, 1);
        const auto bin = transform(docs, vocab, WeightingMode::binary);
        const auto cnt = transform(docs, vocab, WeightingMode::count);
        for (std::size_t r = 0; r < bin.rows(); ++r) {
            const auto row = bin.row(r);
            for (double v : row.values) CHECK(v == 1.0);
            CHECK(std::vector<std::uint32_t>(row.indices.begin(), row.indices.end()) ==
                  std::vector<std::uint32_t>(cnt.row(r).indices.begin(), cnt.row(r).indices.end()));
        }
    }
}

TEST_CASE("tfidf equals tf times ln(N/df)") {
    const GramDocs docs = {
        {"the", "food", "was", "good"},
        {"the", "food", "was", "bad", "bad"},
        {"the", "service", "was", "slow"},
        {"the", "pizza", "good", "good"},
        {"the", "end"},
    };
    const auto vocab = fit_vocabulary(docs, 1);
    const auto m = transform(docs, vocab, WeightingMode::tfidf);
    const double N = 5.0;
    for (std::size_t r = 0; r < docs.size(); ++r)
        for (std::size_t c = 0; c < vocab.size(); ++c) {
            const auto& term = vocab.term(c);
            double tf = 0;
            for (const auto& g : docs[r]) tf += g == term;
            double df = 0;
            for (const auto& d : docs) df += std::find(d.begin(), d.end(), term) != d.end();
            CHECK(std::fabs(dense_at(m, r, c) - tf * std::log(N / df)) <= 1e-12);
        }
    // "the" is in every document.
    const auto the = *vocab.index_of("the");
    for (std::size_t r = 0; r < docs.size(); ++r) CHECK(dense_at(m, r, the) == 0.0);
    CHECK(std::fabs(dense_at(m, 1, *vocab.index_of("bad")) - 2.0 * std::log(5.0)) <= 1e-12);
}

TEST_CASE("tfidf is zero exactly for terms in every fitted document") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto docs = random_docs(seed, 20);
        for (auto& d : docs) d.push_back("everywhere");
        const auto vocab = fit_vocabulary(docs, 1);
        const auto m = transform(docs, vocab, WeightingMode::tfidf);
        const auto cnt = transform(docs, vocab, WeightingMode::count);
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < vocab.size(); ++c) {
                if (dense_at(cnt, r, c) == 0.0) continue;
                CHECK((dense_at(m, r, c) == 0.0) == (vocab.doc_freq(c) == docs.size()));
            }
    }
}

TEST_CASE("out-of-vocabulary grams are ignored and rows may be empty") {
    const auto vocab = fit_vocabulary(fixture_docs(), 1);
    const GramDocs unseen = {{"zzz", "qqq"}, {}, {"food", "zzz", "food"}};
    const auto m = transform(unseen, vocab, WeightingMode::count);
    CHECK(m.row(0).empty());
    CHECK(m.row(1).empty());
    REQUIRE(m.row(2).size() == 1);
    CHECK(m.row(2).values[0] == 2.0);
    CHECK(transform_one(unseen[2], vocab, WeightingMode::count).view().values[0] == 2.0);
    // Transform leaves the vocabulary untouched.
    CHECK(vocab.stats_hash() == fit_vocabulary(fixture_docs(), 1).stats_hash());
}

TEST_CASE("vocabulary JSON round trip") {
    const auto vocab = fit_vocabulary(fixture_docs(), 2);
    const auto back = Vocabulary::from_json(vocab.to_json());
    CHECK(back.terms() == vocab.terms());
    CHECK(back.stats_hash() == vocab.stats_hash());
    CHECK(back.min_df() == 2);
    CHECK(back.n_docs_fitted() == 10);
    auto bad = vocab.to_json();
    bad["terms"][0]["index"] = 1;
    CHECK_THROWS_AS(Vocabulary::from_json(bad), DataError);
    CHECK_THROWS_AS(Vocabulary::from_json(nlohmann::json::array()), DataError);
}

TEST_CASE("stats hash tracks content") {
    const auto a = fit_vocabulary(fixture_docs(), 1);
    const auto b = fit_vocabulary(fixture_docs(), 2);
    CHECK(a.stats_hash() != b.stats_hash());
    auto docs = fixture_docs();
    docs.push_back({"good"});
    CHECK(fit_vocabulary(docs, 1).stats_hash() != a.stats_hash());
}

TEST_CASE("triplet text round trip") {
    for (auto mode : {WeightingMode::count, WeightingMode::binary, WeightingMode::tfidf}) {
        const auto docs = random_docs(3, 25);
        const auto vocab = fit_vocabulary(docs, 1);
        const auto m = transform(docs, vocab, mode);
        CHECK(read_triplets(write_triplets(m)) == m);
    }
    CHECK_THROWS_AS(read_triplets("2 2 1 count\n0 5 1\n"), DataError);
    CHECK_THROWS_AS(read_triplets("garbage"), DataError);
}

TEST_CASE("append_row rejects malformed rows") {
    DocTermMatrix m(3, WeightingMode::count);
    const std::vector<std::uint32_t> idx = {2, 1};
    const std::vector<double> val = {1, 1};
    CHECK_THROWS_AS(m.append_row({idx, val}), DataError);
    const std::vector<std::uint32_t> far = {3};
    const std::vector<double> one = {1};
    CHECK_THROWS_AS(m.append_row({far, one}), DataError);
    const std::vector<std::uint32_t> ok = {0};
    const std::vector<double> zero = {0};
    CHECK_THROWS_AS(m.append_row({ok, zero}), DataError);
}

TEST_CASE("vocab stats") {
    const auto vocab = fit_vocabulary(fixture_docs(), 1);
    const auto s = vocab_stats(vocab, 3);
    CHECK(s.size == vocab.size());
    std::size_t total = 0;
    for (const auto& [df, n] : s.df_histogram) total += n;
    CHECK(total == vocab.size());
    REQUIRE(s.top.size() == 3);
    CHECK(s.top[0].first == "food");
    CHECK(s.top[0].second == 6);
}

TEST_CASE("weighting names") {
    CHECK(parse_weighting("binary") == WeightingMode::binary);
    CHECK(to_string(WeightingMode::tfidf) == "tfidf");
    CHECK_THROWS_AS(parse_weighting("bm25"), ConfigError);
}
