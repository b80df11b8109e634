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

#include "sentibench/vectorize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "sentibench/error.hpp"
#include "sentibench/hash.hpp"

namespace sentibench {

std::string_view to_string(WeightingMode mode) noexcept {
    switch (mode) {
        case WeightingMode::binary:
            return "binary";
        case WeightingMode::tfidf:
            return "tfidf";
        case WeightingMode::count:
            break;
    }
    return "count";
}

WeightingMode parse_weighting(std::string_view s) {
    if (s == "count") return WeightingMode::count;
    if (s == "binary") return WeightingMode::binary;
    if (s == "tfidf") return WeightingMode::tfidf;
    throw ConfigError("unknown weighting mode '" + std::string(s) + "' (expected count, binary or tfidf)");
}

void DocTermMatrix::append_row(SparseView row) {
    if (row.indices.size() != row.values.size()) throw DataError("sparse row has mismatched index/value lengths");
    for (std::size_t k = 0; k < row.indices.size(); ++k) {
        if (row.indices[k] >= n_features_) throw DataError("column index out of range");
        if (k > 0 && row.indices[k] <= row.indices[k - 1]) throw DataError("column indices not strictly ascending");
        if (row.values[k] == 0.0) throw DataError("explicit zero stored in sparse row");
    }
    cols_.insert(cols_.end(), row.indices.begin(), row.indices.end());
    vals_.insert(vals_.end(), row.values.begin(), row.values.end());
    row_ptr_.push_back(cols_.size());
}

Vocabulary::Vocabulary(std::vector<std::pair<std::string, std::size_t>> term_dfs, std::size_t n_docs_fitted, int min_df)
    : n_docs_fitted_(n_docs_fitted), min_df_(min_df) {
    std::sort(term_dfs.begin(), term_dfs.end());
    if (term_dfs.size() > std::numeric_limits<std::int32_t>::max()) throw DataError("vocabulary too large");
    terms_.reserve(term_dfs.size());
    doc_freq_.reserve(term_dfs.size());
    index_.reserve(term_dfs.size());
    for (auto& [term, df] : term_dfs) {
        if (!terms_.empty() && terms_.back() == term) throw DataError("duplicate vocabulary term '" + term + "'");
        index_.emplace(term, static_cast<std::uint32_t>(terms_.size()));
        terms_.push_back(std::move(term));
        doc_freq_.push_back(df);
    }
}

std::optional<std::uint32_t> Vocabulary::index_of(std::string_view term) const {
    const auto it = index_.find(std::string(term));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::string Vocabulary::stats_hash() const {
    Fnv1a h;
    h.update(std::to_string(min_df_)).separator().update(std::to_string(n_docs_fitted_)).separator();
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        h.update(terms_[i]).separator().update(std::to_string(doc_freq_[i])).separator();
    }
    return h.hex();
}

nlohmann::json Vocabulary::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        terms.push_back({{"term", terms_[i]}, {"index", i}, {"df", doc_freq_[i]}});
    }
    return {{"min_df", min_df_}, {"n_docs_fitted", n_docs_fitted_}, {"terms", std::move(terms)}};
}

Vocabulary Vocabulary::from_json(const nlohmann::json& j) {
    try {
        const int min_df = j.at("min_df").get<int>();
        const auto n_docs = j.at("n_docs_fitted").get<std::size_t>();
        const auto& terms = j.at("terms");
        std::vector<std::pair<std::string, std::size_t>> term_dfs;
        term_dfs.reserve(terms.size());
        std::vector<std::size_t> stated_index;
        stated_index.reserve(terms.size());
        for (const auto& t : terms) {
            term_dfs.emplace_back(t.at("term").get<std::string>(), t.at("df").get<std::size_t>());
            stated_index.push_back(t.at("index").get<std::size_t>());
        }
        Vocabulary v(term_dfs, n_docs, min_df);
        for (std::size_t k = 0; k < term_dfs.size(); ++k) {
            if (v.index_of(term_dfs[k].first) != stated_index[k]) {
                throw DataError("vocabulary index for '" + term_dfs[k].first + "' does not match lexicographic order");
            }
        }
        return v;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed vocabulary JSON: ") + e.what());
    }
}

Vocabulary fit_vocabulary(GramSpan docs, int min_df) {
    if (min_df < 1) throw ConfigError("min_df must be >= 1");
    if (docs.empty()) throw ConfigError("cannot fit a vocabulary on an empty corpus");

    struct Entry {
        std::size_t df = 0;
        std::size_t last_doc = std::numeric_limits<std::size_t>::max();
    };
    std::unordered_map<std::string, Entry> counts;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        for (const auto& gram : docs[d]) {
            auto& e = counts[gram];
            if (e.last_doc != d) {
                e.last_doc = d;
                ++e.df;
            }
        }
    }
    std::vector<std::pair<std::string, std::size_t>> kept;
    for (auto& [term, e] : counts)
        if (e.df >= static_cast<std::size_t>(min_df)) kept.emplace_back(term, e.df);
    return Vocabulary(std::move(kept), docs.size(), min_df);
}

namespace {

std::vector<double> idf_table(const Vocabulary& vocab) {
    std::vector<double> idf(vocab.size());
    const auto n = static_cast<double>(vocab.n_docs_fitted());
    for (std::size_t i = 0; i < idf.size(); ++i) idf[i] = std::log(n / static_cast<double>(vocab.doc_freq(i)));
    return idf;
}

void weigh_row(const std::vector<std::string>& grams, const Vocabulary& vocab, WeightingMode mode,
               const std::vector<double>& idf, std::vector<std::uint32_t>& scratch, SparseVec& out) {
    scratch.clear();
    for (const auto& g : grams)
        if (auto idx = vocab.index_of(g)) scratch.push_back(*idx);
    std::sort(scratch.begin(), scratch.end());
    out.indices.clear();
    out.values.clear();
    for (std::size_t k = 0; k < scratch.size();) {
        std::size_t run = k + 1;
        while (run < scratch.size() && scratch[run] == scratch[k]) ++run;
        const auto count = static_cast<double>(run - k);
        double value = count;
        if (mode == WeightingMode::binary) value = 1.0;
        if (mode == WeightingMode::tfidf) value = count * idf[scratch[k]];
        if (value != 0.0) {
            out.indices.push_back(scratch[k]);
            out.values.push_back(value);
        }
        k = run;
    }
}

}  // namespace

DocTermMatrix transform(GramSpan docs, const Vocabulary& vocab, WeightingMode mode) {
    const auto idf = mode == WeightingMode::tfidf ? idf_table(vocab) : std::vector<double>{};
    DocTermMatrix m(vocab.size(), mode);
    std::vector<std::uint32_t> scratch;
    SparseVec row;
    for (const auto& grams : docs) {
        weigh_row(grams, vocab, mode, idf, scratch, row);
        m.append_row(row.view());
    }
    return m;
}

SparseVec transform_one(const std::vector<std::string>& grams, const Vocabulary& vocab, WeightingMode mode) {
    const auto idf = mode == WeightingMode::tfidf ? idf_table(vocab) : std::vector<double>{};
    std::vector<std::uint32_t> scratch;
    SparseVec row;
    weigh_row(grams, vocab, mode, idf, scratch, row);
    return row;
}

VocabStats vocab_stats(const Vocabulary& vocab, std::size_t k) {
    VocabStats stats;
    stats.size = vocab.size();
    std::vector<std::size_t> order(vocab.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
        ++stats.df_histogram[vocab.doc_freq(i)];
    }
    const auto take = std::min(k, order.size());
    // Indices are already in term order, so a stable sort on df breaks ties lexicographically.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vocab.doc_freq(a) > vocab.doc_freq(b); });
    for (std::size_t i = 0; i < take; ++i) stats.top.emplace_back(vocab.term(order[i]), vocab.doc_freq(order[i]));
    return stats;
}

std::string write_triplets(const DocTermMatrix& matrix) {
    std::string out;
    out += std::to_string(matrix.rows()) + " " + std::to_string(matrix.n_features()) + " " +
           std::to_string(matrix.nnz()) + " " + std::string(to_string(matrix.mode())) + "\n";
    char buf[64];
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
        const auto row = matrix.row(r);
        for (std::size_t k = 0; k < row.size(); ++k) {
            const auto res = std::to_chars(buf, buf + sizeof buf, row.values[k]);
            out += std::to_string(r);
            out.push_back(' ');
            out += std::to_string(row.indices[k]);
            out.push_back(' ');
            out.append(buf, res.ptr);
            out.push_back('\n');
        }
    }
    return out;
}

DocTermMatrix read_triplets(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t nnz = 0;
    std::string mode;
    if (!(in >> rows >> cols >> nnz >> mode)) throw DataError("triplet header must be 'rows cols nnz mode'");
    DocTermMatrix m(cols, parse_weighting(mode));
    SparseVec current;
    std::size_t current_row = 0;
    auto flush_until = [&](std::size_t target) {
        while (current_row < target) {
            m.append_row(current.view());
            current.indices.clear();
            current.values.clear();
            ++current_row;
        }
    };
    std::string value_text;
    for (std::size_t e = 0; e < nnz; ++e) {
        std::size_t r = 0;
        std::uint64_t c = 0;
        if (!(in >> r >> c >> value_text)) throw DataError("triplet entry " + std::to_string(e + 1) + " is malformed");
        double v = 0.0;
        const auto res = std::from_chars(value_text.data(), value_text.data() + value_text.size(), v);
        if (res.ec != std::errc() || res.ptr != value_text.data() + value_text.size()) {
            throw DataError("triplet entry " + std::to_string(e + 1) + " has a bad value");
        }
        if (r >= rows || r < current_row) throw DataError("triplet rows out of order or range");
        if (c > std::numeric_limits<std::uint32_t>::max()) throw DataError("triplet column out of range");
        flush_until(r);
        current.indices.push_back(static_cast<std::uint32_t>(c));
        current.values.push_back(v);
    }
    flush_until(rows);
    std::string extra;
    if (in >> extra) throw DataError("trailing data after " + std::to_string(nnz) + " triplet entries");
    return m;
}

}  // namespace sentibench
