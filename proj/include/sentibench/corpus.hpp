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

// Yelp-schema ingestion, study-population filtering, star-to-sentiment
// labelling, and seeded stratified splitting and subsampling.

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace sentibench {

inline constexpr int kNumSentimentClasses = 3;

using Label = int;

struct Business {
    std::string business_id;
    std::string name;
    std::string city;
    std::vector<std::string> categories;
    std::int64_t review_count = 0;
};

struct RawReview {
    std::string review_id;
    std::string business_id;
    int stars = 0;
    std::string text;
};

struct LabeledDoc {
    std::string text;
    Label label = 0;

    friend bool operator==(const LabeledDoc&, const LabeledDoc&) = default;
};

using ClassCounts = std::map<Label, std::size_t>;

struct SplitCorpus {
    std::vector<LabeledDoc> train;
    std::vector<LabeledDoc> test;
    std::uint64_t seed = 0;
    ClassCounts train_counts;
    ClassCounts test_counts;
};

struct FilterCriteria {
    std::vector<std::string> category_keywords;  // case-insensitive substrings; empty disables
    std::vector<std::string> city_allowlist;     // case-insensitive exact names; empty disables
    std::int64_t min_reviews = 0;
};

nlohmann::json to_json(const FilterCriteria& criteria);
FilterCriteria filter_criteria_from_json(const nlohmann::json& j);

struct SkippedLine {
    std::size_t line = 0;  // 1-based
    std::string reason;
};

struct IngestReport {
    std::size_t lines_read = 0;
    std::size_t records = 0;
    std::size_t empty_text = 0;  // reviews only
    std::vector<SkippedLine> skipped;
};

nlohmann::json to_json(const IngestReport& report);

enum class RecordSchema { business, review };

/// Streams a line-delimited JSON file. Blank lines are ignored; lines that
/// are not JSON objects or lack a required field are recorded in the report
/// and skipped. Throws DataError if the stream is unreadable.
void for_each_business(std::istream& in, IngestReport& report, const std::function<void(Business&&)>& sink);
void for_each_review(std::istream& in, IngestReport& report, const std::function<void(RawReview&&)>& sink);

template <typename Record>
struct ParseResult {
    std::vector<Record> records;
    IngestReport report;
};

ParseResult<Business> parse_businesses(std::istream& in);
ParseResult<RawReview> parse_reviews(std::istream& in);

struct Waterfall {
    std::size_t input = 0;
    std::size_t after_category = 0;
    std::size_t after_city = 0;
    std::size_t after_min_reviews = 0;
};

nlohmann::json to_json(const Waterfall& w);

struct FilterResult {
    std::vector<Business> businesses;
    Waterfall waterfall;
};

/// Applies category, city, then min_reviews; returns survivors in input order.
FilterResult filter_businesses(const std::vector<Business>& businesses, const FilterCriteria& criteria);

/// 1,2 -> 0 (negative); 3 -> 1 (neutral); 4,5 -> 2 (positive).
/// Throws DomainError outside [1,5].
Label label_from_stars(int stars);

ClassCounts count_labels(const std::vector<LabeledDoc>& docs);

/// Splits each integer total across classes in proportion to `weights`
/// (largest remainder, ties to the lower label). Exposed for testing.
std::vector<std::size_t> largest_remainder(std::size_t total, const std::vector<std::size_t>& weights);

/// Per-class test counts come from largest-remainder allocation of
/// round(N * test_fraction). Each class is shuffled with the seeded
/// generator; the first allocation members go to test. Both splits keep the
/// input's relative order. Throws ConfigError if any of the 3 sentiment
/// classes is empty.
SplitCorpus stratified_split(const std::vector<LabeledDoc>& docs, double test_fraction, std::uint64_t seed);

/// Exactly `per_class` documents of each sentiment label, sampled without
/// replacement and returned in a seeded shuffled order.
std::vector<LabeledDoc> downsample_balanced(const std::vector<LabeledDoc>& train, std::size_t per_class,
                                            std::uint64_t seed);

/// Index order whose every prefix is ratio-preserving: for any length s the
/// first s entries hold each class c within (-1, +1) of s * n_c / N.
/// Within a class, members follow a seeded shuffle.
std::vector<std::size_t> ratio_preserving_order(const std::vector<LabeledDoc>& docs, std::uint64_t seed);

/// First `total` documents of ratio_preserving_order. Samples for the same
/// seed are nested across totals.
std::vector<LabeledDoc> downsample_preserving_ratio(const std::vector<LabeledDoc>& train, std::size_t total,
                                                    std::uint64_t seed);

struct KeywordWeight {
    std::string word;
    double weight = 1.0;
};

struct SynthSpec {
    std::size_t n_docs = 0;
    std::array<double, kNumSentimentClasses> class_priors{0.2, 0.2, 0.6};
    std::array<std::vector<KeywordWeight>, kNumSentimentClasses> keywords;
    double keyword_rate = 0.08;  // probability a token is drawn from the class keywords
    std::size_t vocab_size = 5000;
    double zipf_exponent = 1.0;
    std::size_t min_length = 20;
    std::size_t max_length = 80;

    /// Default planted keywords with equal weights.
    static SynthSpec with_default_keywords(std::size_t n_docs);
};

nlohmann::json to_json(const SynthSpec& spec);
SynthSpec synth_spec_from_json(const nlohmann::json& j);

/// Background words drawn from a Zipf law over `vocab_size` pronounceable
/// pseudo-words; each token is replaced with probability keyword_rate by a
/// keyword of the document's class. Throws ConfigError for invalid priors.
std::vector<LabeledDoc> synth_corpus(const SynthSpec& spec, std::uint64_t seed);

/// The background word with the given rank (0-based). Alphabetic, length >= 4.
std::string synth_background_word(std::size_t rank);

// Corpus files: one {"text": ..., "label": 0|1|2} object per line.
std::vector<LabeledDoc> read_corpus(const std::filesystem::path& path);
std::string corpus_to_jsonl(const std::vector<LabeledDoc>& docs);

/// Order-sensitive content hash of a document list.
std::string corpus_hash(const std::vector<LabeledDoc>& docs);

}  // namespace sentibench
