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

// Vocabulary fitting with document-frequency pruning and sparse
// document-term matrices under count, binary or TF-IDF weighting.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

namespace sentibench {

enum class WeightingMode { count, binary, tfidf };

std::string_view to_string(WeightingMode mode) noexcept;
WeightingMode parse_weighting(std::string_view s);

/// Read-only view of one sparse row: strictly ascending indices, no zeros.
struct SparseView {
    std::span<const std::uint32_t> indices;
    std::span<const double> values;

    std::size_t size() const noexcept { return indices.size(); }
    bool empty() const noexcept { return indices.empty(); }
};

struct SparseVec {
    std::vector<std::uint32_t> indices;
    std::vector<double> values;

    SparseView view() const noexcept { return {indices, values}; }
    friend bool operator==(const SparseVec&, const SparseVec&) = default;
};

/// Row-major compressed sparse matrix. Every row satisfies the SparseView
/// invariants against n_features().
class DocTermMatrix {
public:
    DocTermMatrix() = default;
    DocTermMatrix(std::size_t n_features, WeightingMode mode) : n_features_(n_features), mode_(mode) {}

    std::size_t rows() const noexcept { return row_ptr_.size() - 1; }
    std::size_t n_features() const noexcept { return n_features_; }
    std::size_t nnz() const noexcept { return cols_.size(); }
    WeightingMode mode() const noexcept { return mode_; }

    SparseView row(std::size_t i) const noexcept {
        const auto b = row_ptr_[i];
        const auto e = row_ptr_[i + 1];
        return {std::span<const std::uint32_t>(cols_).subspan(b, e - b), std::span<const double>(vals_).subspan(b, e - b)};
    }

    /// Appends a row after checking ordering, range and non-zero values.
    void append_row(SparseView row);

    friend bool operator==(const DocTermMatrix&, const DocTermMatrix&) = default;

private:
    std::size_t n_features_ = 0;
    WeightingMode mode_ = WeightingMode::count;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::uint32_t> cols_;
    std::vector<double> vals_;
};

/// Frozen term -> column map. Columns follow lexicographic (byte) order of
/// the terms, so the same corpus always yields the same matrix layout.
class Vocabulary {
public:
    Vocabulary() = default;

    /// Builds from parallel term/df lists; terms need not be sorted.
    Vocabulary(std::vector<std::pair<std::string, std::size_t>> term_dfs, std::size_t n_docs_fitted, int min_df);

    std::size_t size() const noexcept { return terms_.size(); }
    std::size_t n_docs_fitted() const noexcept { return n_docs_fitted_; }
    int min_df() const noexcept { return min_df_; }

    std::optional<std::uint32_t> index_of(std::string_view term) const;
    const std::string& term(std::size_t index) const { return terms_.at(index); }
    std::size_t doc_freq(std::size_t index) const { return doc_freq_.at(index); }
    const std::vector<std::string>& terms() const noexcept { return terms_; }

    /// Content hash over (min_df, n_docs_fitted, every term and df).
    std::string stats_hash() const;

    nlohmann::json to_json() const;
    static Vocabulary from_json(const nlohmann::json& j);

private:
    std::vector<std::string> terms_;
    std::vector<std::size_t> doc_freq_;
    std::unordered_map<std::string, std::uint32_t> index_;
    std::size_t n_docs_fitted_ = 0;
    int min_df_ = 1;
};

using GramDocs = std::vector<std::vector<std::string>>;
using GramSpan = std::span<const std::vector<std::string>>;

/// Keeps terms whose document frequency is at least min_df.
/// Throws ConfigError for min_df < 1 or an empty corpus.
Vocabulary fit_vocabulary(GramSpan docs, int min_df);

/// count: raw term counts; binary: 1 for present terms; tfidf: count *
/// ln(n_docs_fitted / df), unsmoothed and unnormalized. Out-of-vocabulary
/// grams are ignored and zero weights are not stored.
DocTermMatrix transform(GramSpan docs, const Vocabulary& vocab, WeightingMode mode);
SparseVec transform_one(const std::vector<std::string>& grams, const Vocabulary& vocab, WeightingMode mode);

struct VocabStats {
    std::size_t size = 0;
    std::map<std::size_t, std::size_t> df_histogram;  // df -> number of terms
    std::vector<std::pair<std::string, std::size_t>> top;  // by df desc, then term asc
};

VocabStats vocab_stats(const Vocabulary& vocab, std::size_t k);

/// Text triplet format: "rows cols nnz mode" header, then one "row col value"
/// line per stored entry in row-major order. Values use shortest round-trip
/// formatting.
std::string write_triplets(const DocTermMatrix& matrix);
DocTermMatrix read_triplets(std::string_view text);

}  // namespace sentibench
