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

// Text preparation: tokenization, stopword removal, stemming, rule-based
// POS tagging and lemmatization, and n-gram expansion.
//
// Every stage is a pure function of its inputs. The data files behind
// StopwordList and LemmaTable are loaded once and then shared read-only.

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

namespace sentibench {

enum class Normalization { none, stem, lemma_pos };

enum class PosTag { noun, verb, adj, adv, other };

std::string_view to_string(Normalization n) noexcept;
Normalization parse_normalization(std::string_view s);
std::string_view to_string(PosTag t) noexcept;
PosTag parse_pos_tag(std::string_view s);

struct PrepConfig {
    bool lowercase = true;
    std::optional<std::string> stopword_list;  // disabled when empty
    Normalization normalization = Normalization::none;
    int ngram_min = 1;
    int ngram_max = 1;

    /// Throws ConfigError unless 1 <= ngram_min <= ngram_max <= 3.
    void validate() const;

    friend bool operator==(const PrepConfig&, const PrepConfig&) = default;
};

nlohmann::json to_json(const PrepConfig& config);
PrepConfig prep_config_from_json(const nlohmann::json& j);

struct TokenizedDoc {
    std::vector<std::string> tokens;

    friend bool operator==(const TokenizedDoc&, const TokenizedDoc&) = default;
};

/// Splits UTF-8 text into maximal runs of word characters.
///
/// Word characters are ASCII letters, digits and '_', plus non-ASCII code
/// points outside the punctuation, symbol and emoji blocks. Runs of a single
/// code point are dropped unless that code point is an ASCII digit, so
/// "3.5 stars" yields [3, 5, stars]. Invalid UTF-8 bytes act as separators.
TokenizedDoc tokenize(std::string_view text, bool lowercase = true);

/// Porter stemmer as frozen in Porter's reference implementation: words of
/// one or two letters pass through, step 2 uses the BLI and LOGI rules.
/// Tokens that are not entirely lowercase ASCII letters are returned as is.
std::string porter_stem(std::string_view token);

class StopwordList {
public:
    StopwordList(std::string name, std::vector<std::string> words);

    /// One entry per line; blank lines and lines starting with '#' are skipped.
    static StopwordList load(const std::filesystem::path& path, std::string name);

    const std::string& name() const noexcept { return name_; }
    std::size_t size() const noexcept { return words_.size(); }
    bool contains(std::string_view word) const { return words_.contains(std::string(word)); }

private:
    std::string name_;
    std::unordered_set<std::string> words_;
};

/// Irregular-form table for the lemmatizer, doubling as the open-class
/// lexicon consulted by the POS tagger.
///
/// File format: UTF-8, one "form<TAB>lemma<TAB>TAG" entry per line, '#'
/// comments allowed. A form may appear once per tag; the first tag listed
/// for a form is its preferred lexicon tag.
class LemmaTable {
public:
    LemmaTable() = default;

    static LemmaTable load(const std::filesystem::path& path);

    void add(std::string form, std::string lemma, PosTag tag);

    std::optional<std::string_view> lookup(std::string_view form, PosTag tag) const;
    std::optional<PosTag> preferred_tag(std::string_view form) const;
    std::size_t size() const noexcept { return entries_.size(); }

private:
    std::map<std::pair<std::string, PosTag>, std::string, std::less<>> entries_;
    std::unordered_map<std::string, PosTag> preferred_;
};

/// Resolves the default data directory: $SENTIBENCH_DATA_DIR when set,
/// otherwise the directory configured at build time.
std::filesystem::path default_data_dir();

/// Loads and caches stopword lists and the lemma table from a data
/// directory laid out as stopwords/<name>.txt and lemma/exceptions.tsv.
/// Safe to share across threads.
class TextResources {
public:
    explicit TextResources(std::filesystem::path data_dir = default_data_dir());

    const std::filesystem::path& data_dir() const noexcept { return data_dir_; }

    /// Throws ConfigError for an unknown list name.
    std::shared_ptr<const StopwordList> stopwords(std::string_view name) const;
    std::shared_ptr<const LemmaTable> lemma_table() const;

private:
    std::filesystem::path data_dir_;
    mutable std::mutex mutex_;
    mutable std::map<std::string, std::shared_ptr<const StopwordList>, std::less<>> stopwords_;
    mutable std::shared_ptr<const LemmaTable> lemmas_;
};

TokenizedDoc remove_stopwords(const TokenizedDoc& doc, const StopwordList& list);
TokenizedDoc remove_stopwords(const TokenizedDoc& doc, std::string_view list_name,
                              const TextResources& resources);

using TaggedToken = std::pair<std::string, PosTag>;

/// Deterministic rule cascade: closed-class lookup, lexicon lookup, suffix
/// heuristics, then left-context corrections.
std::vector<TaggedToken> pos_tag(const TokenizedDoc& doc, const LemmaTable* lexicon = nullptr);

/// Exception table first, then per-tag suffix rules. Never returns an empty
/// string; returns the token itself when nothing applies.
std::string lemmatize(std::string_view token, PosTag tag, const LemmaTable& table);

/// All n-grams for n in [n_min, n_max], shortest n first, windows left to
/// right, words joined by one space.
std::vector<std::string> ngrams(const TokenizedDoc& doc, int n_min, int n_max);

/// Applies the normalization stage to an already tokenized document.
TokenizedDoc normalize(const TokenizedDoc& doc, Normalization mode, const LemmaTable& table);

/// tokenize -> stopwords -> normalization -> ngrams, with resources resolved
/// once up front. Cheap to copy; immutable after construction.
class Preprocessor {
public:
    Preprocessor(PrepConfig config, const TextResources& resources);

    const PrepConfig& config() const noexcept { return config_; }
    std::vector<std::string> operator()(std::string_view text) const;

private:
    PrepConfig config_;
    std::shared_ptr<const StopwordList> stopwords_;
    std::shared_ptr<const LemmaTable> lemmas_;
};

std::vector<std::string> prepare(std::string_view text, const PrepConfig& config,
                                 const TextResources& resources);

}  // namespace sentibench
