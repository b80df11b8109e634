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

#include "sentibench/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include "sentibench/error.hpp"
#include "sentibench/hash.hpp"
#include "sentibench/rng.hpp"

namespace sentibench {

namespace {

std::string lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

bool blank(std::string_view line) {
    return std::all_of(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

// Shared line loop: parse each non-blank line as a JSON object and hand it to
// `convert`, which returns an empty string on success or a skip reason.
template <typename Convert>
void for_each_object(std::istream& in, IngestReport& report, Convert&& convert) {
    if (!in) throw DataError("input stream is not readable");
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        ++report.lines_read;
        if (blank(line)) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error&) {
            report.skipped.push_back({line_no, "malformed JSON"});
            continue;
        }
        if (!j.is_object()) {
            report.skipped.push_back({line_no, "not a JSON object"});
            continue;
        }
        std::string reason = convert(j);
        if (reason.empty()) {
            ++report.records;
        } else {
            report.skipped.push_back({line_no, std::move(reason)});
        }
    }
    if (in.bad()) throw DataError("read error after line " + std::to_string(line_no));
}

std::optional<std::string> string_field(const nlohmann::json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_string()) return std::nullopt;
    return it->get<std::string>();
}

std::optional<std::int64_t> integral_field(const nlohmann::json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) return std::nullopt;
    if (it->is_number_integer()) return it->get<std::int64_t>();
    if (it->is_number_float()) {
        const double v = it->get<double>();
        if (std::isfinite(v) && v == std::floor(v)) return static_cast<std::int64_t>(v);
    }
    return std::nullopt;
}

// Yelp stores categories as one comma-separated string; arrays are accepted too.
std::vector<std::string> categories_field(const nlohmann::json& j) {
    std::vector<std::string> out;
    const auto it = j.find("categories");
    if (it == j.end() || it->is_null()) return out;
    if (it->is_string()) {
        const std::string s = it->get<std::string>();
        std::size_t start = 0;
        while (start <= s.size()) {
            const auto comma = s.find(',', start);
            const auto end = comma == std::string::npos ? s.size() : comma;
            std::string part = trim(std::string_view(s).substr(start, end - start));
            if (!part.empty()) out.push_back(std::move(part));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    } else if (it->is_array()) {
        for (const auto& c : *it)
            if (c.is_string()) out.push_back(trim(c.get<std::string>()));
    }
    return out;
}

std::size_t label_index(Label label) {
    if (label < 0 || label >= kNumSentimentClasses) {
        throw DataError("label " + std::to_string(label) + " outside {0,1,2}");
    }
    return static_cast<std::size_t>(label);
}

std::array<std::vector<std::size_t>, kNumSentimentClasses> indices_by_class(const std::vector<LabeledDoc>& docs) {
    std::array<std::vector<std::size_t>, kNumSentimentClasses> by_class;
    for (std::size_t i = 0; i < docs.size(); ++i) by_class[label_index(docs[i].label)].push_back(i);
    return by_class;
}

}  // namespace

nlohmann::json to_json(const FilterCriteria& c) {
    return {{"category_keywords", c.category_keywords}, {"city_allowlist", c.city_allowlist},
            {"min_reviews", c.min_reviews}};
}

FilterCriteria filter_criteria_from_json(const nlohmann::json& j) {
    FilterCriteria c;
    try {
        c.category_keywords = j.value("category_keywords", std::vector<std::string>{});
        c.city_allowlist = j.value("city_allowlist", std::vector<std::string>{});
        c.min_reviews = j.value("min_reviews", std::int64_t{0});
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid filter criteria: ") + e.what());
    }
    if (c.min_reviews < 0) throw ConfigError("min_reviews must be >= 0");
    return c;
}

nlohmann::json to_json(const IngestReport& r) {
    nlohmann::json skipped = nlohmann::json::array();
    for (const auto& s : r.skipped) skipped.push_back({{"line", s.line}, {"reason", s.reason}});
    return {{"lines_read", r.lines_read},
            {"records", r.records},
            {"empty_text", r.empty_text},
            {"skipped_count", r.skipped.size()},
            {"skipped", std::move(skipped)}};
}

void for_each_business(std::istream& in, IngestReport& report, const std::function<void(Business&&)>& sink) {
    std::unordered_set<std::string> seen;
    for_each_object(in, report, [&](const nlohmann::json& j) -> std::string {
        Business b;
        auto id = string_field(j, "business_id");
        if (!id || id->empty()) return "missing business_id";
        auto count = integral_field(j, "review_count");
        if (!count) return "missing review_count";
        if (*count < 0) return "negative review_count";
        if (!seen.insert(*id).second) return "duplicate business_id";
        b.business_id = std::move(*id);
        b.review_count = *count;
        b.name = string_field(j, "name").value_or("");
        b.city = string_field(j, "city").value_or("");
        b.categories = categories_field(j);
        sink(std::move(b));
        return {};
    });
}

void for_each_review(std::istream& in, IngestReport& report, const std::function<void(RawReview&&)>& sink) {
    for_each_object(in, report, [&](const nlohmann::json& j) -> std::string {
        RawReview r;
        auto review_id = string_field(j, "review_id");
        if (!review_id) return "missing review_id";
        auto business_id = string_field(j, "business_id");
        if (!business_id) return "missing business_id";
        auto stars = integral_field(j, "stars");
        if (!stars) return "missing stars";
        if (*stars < 1 || *stars > 5) return "stars outside [1,5]";
        auto text = string_field(j, "text");
        if (!text) return "missing text";
        r.review_id = std::move(*review_id);
        r.business_id = std::move(*business_id);
        r.stars = static_cast<int>(*stars);
        r.text = std::move(*text);
        if (r.text.empty()) ++report.empty_text;
        sink(std::move(r));
        return {};
    });
}

ParseResult<Business> parse_businesses(std::istream& in) {
    ParseResult<Business> result;
    for_each_business(in, result.report, [&](Business&& b) { result.records.push_back(std::move(b)); });
    return result;
}

ParseResult<RawReview> parse_reviews(std::istream& in) {
    ParseResult<RawReview> result;
    for_each_review(in, result.report, [&](RawReview&& r) { result.records.push_back(std::move(r)); });
    return result;
}

nlohmann::json to_json(const Waterfall& w) {
    return {{"input", w.input},
            {"after_category", w.after_category},
            {"after_city", w.after_city},
            {"after_min_reviews", w.after_min_reviews}};
}

FilterResult filter_businesses(const std::vector<Business>& businesses, const FilterCriteria& criteria) {
    std::vector<std::string> keywords;
    for (const auto& k : criteria.category_keywords) keywords.push_back(lower_ascii(k));
    std::unordered_set<std::string> cities;
    for (const auto& c : criteria.city_allowlist) cities.insert(lower_ascii(trim(c)));

    auto category_ok = [&](const Business& b) {
        if (keywords.empty()) return true;
        for (const auto& cat : b.categories) {
            const std::string lc = lower_ascii(cat);
            for (const auto& k : keywords)
                if (lc.find(k) != std::string::npos) return true;
        }
        return false;
    };
    auto city_ok = [&](const Business& b) { return cities.empty() || cities.contains(lower_ascii(trim(b.city))); };

    FilterResult result;
    result.waterfall.input = businesses.size();
    for (const auto& b : businesses) {
        if (!category_ok(b)) continue;
        ++result.waterfall.after_category;
        if (!city_ok(b)) continue;
        ++result.waterfall.after_city;
        if (b.review_count < criteria.min_reviews) continue;
        ++result.waterfall.after_min_reviews;
        result.businesses.push_back(b);
    }
    return result;
}

Label label_from_stars(int stars) {
    if (stars < 1 || stars > 5) throw DomainError("star rating " + std::to_string(stars) + " outside [1,5]");
    if (stars <= 2) return 0;
    if (stars == 3) return 1;
    return 2;
}

ClassCounts count_labels(const std::vector<LabeledDoc>& docs) {
    ClassCounts counts;
    for (const auto& d : docs) ++counts[d.label];
    return counts;
}

std::vector<std::size_t> largest_remainder(std::size_t total, const std::vector<std::size_t>& weights) {
    const std::size_t sum = std::accumulate(weights.begin(), weights.end(), std::size_t{0});
    std::vector<std::size_t> alloc(weights.size(), 0);
    if (sum == 0) return alloc;
    std::vector<unsigned __int128> remainder(weights.size());
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < weights.size(); ++c) {
        const auto product = static_cast<unsigned __int128>(total) * weights[c];
        alloc[c] = static_cast<std::size_t>(product / sum);
        remainder[c] = product % sum;
        assigned += alloc[c];
    }
    std::vector<std::size_t> order(weights.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    for (std::size_t k = 0; assigned < total && k < order.size(); ++k, ++assigned) ++alloc[order[k]];
    return alloc;
}

SplitCorpus stratified_split(const std::vector<LabeledDoc>& docs, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw ConfigError("test_fraction must lie in (0, 1)");
    auto by_class = indices_by_class(docs);
    std::vector<std::size_t> sizes;
    for (int c = 0; c < kNumSentimentClasses; ++c) {
        if (by_class[static_cast<std::size_t>(c)].empty()) {
            throw ConfigError("cannot stratify: class " + std::to_string(c) + " has no documents");
        }
        sizes.push_back(by_class[static_cast<std::size_t>(c)].size());
    }
    const auto test_total = static_cast<std::size_t>(std::llround(static_cast<double>(docs.size()) * test_fraction));
    const auto test_alloc = largest_remainder(test_total, sizes);

    Rng rng(seed);
    std::vector<char> in_test(docs.size(), 0);
    for (std::size_t c = 0; c < by_class.size(); ++c) {
        auto& members = by_class[c];
        shuffle(std::span<std::size_t>(members), rng);
        for (std::size_t k = 0; k < test_alloc[c]; ++k) in_test[members[k]] = 1;
    }

    SplitCorpus split;
    split.seed = seed;
    for (std::size_t i = 0; i < docs.size(); ++i) (in_test[i] ? split.test : split.train).push_back(docs[i]);
    split.train_counts = count_labels(split.train);
    split.test_counts = count_labels(split.test);
    return split;
}

std::vector<LabeledDoc> downsample_balanced(const std::vector<LabeledDoc>& train, std::size_t per_class,
                                            std::uint64_t seed) {
    auto by_class = indices_by_class(train);
    for (std::size_t c = 0; c < by_class.size(); ++c) {
        if (by_class[c].size() < per_class) {
            throw ConfigError("cannot draw " + std::to_string(per_class) + " documents from class " +
                              std::to_string(c) + ", which has only " + std::to_string(by_class[c].size()));
        }
    }
    Rng rng(seed);
    std::vector<std::size_t> chosen;
    chosen.reserve(per_class * by_class.size());
    for (auto& members : by_class) {
        shuffle(std::span<std::size_t>(members), rng);
        chosen.insert(chosen.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(per_class));
    }
    shuffle(std::span<std::size_t>(chosen), rng);
    std::vector<LabeledDoc> out;
    out.reserve(chosen.size());
    for (auto i : chosen) out.push_back(train[i]);
    return out;
}

std::vector<std::size_t> ratio_preserving_order(const std::vector<LabeledDoc>& docs, std::uint64_t seed) {
    auto by_class = indices_by_class(docs);
    Rng rng(seed);
    for (auto& members : by_class) shuffle(std::span<std::size_t>(members), rng);

    // At step k pick the class with the largest deficit k*n_c/N - taken_c,
    // kept in exact integer form k*n_c - taken_c*N.
    const auto n = static_cast<__int128>(docs.size());
    std::array<std::size_t, kNumSentimentClasses> taken{};
    std::vector<std::size_t> order;
    order.reserve(docs.size());
    for (std::size_t k = 1; k <= docs.size(); ++k) {
        std::size_t best = by_class.size();
        __int128 best_deficit = 0;
        for (std::size_t c = 0; c < by_class.size(); ++c) {
            if (taken[c] == by_class[c].size()) continue;
            const __int128 deficit = static_cast<__int128>(k) * static_cast<__int128>(by_class[c].size()) -
                                     static_cast<__int128>(taken[c]) * n;
            if (best == by_class.size() || deficit > best_deficit) {
                best = c;
                best_deficit = deficit;
            }
        }
        order.push_back(by_class[best][taken[best]++]);
    }
    return order;
}

std::vector<LabeledDoc> downsample_preserving_ratio(const std::vector<LabeledDoc>& train, std::size_t total,
                                                    std::uint64_t seed) {
    if (total > train.size()) {
        throw ConfigError("cannot draw " + std::to_string(total) + " documents from a training set of " +
                          std::to_string(train.size()));
    }
    const auto order = ratio_preserving_order(train, seed);
    std::vector<LabeledDoc> out;
    out.reserve(total);
    for (std::size_t k = 0; k < total; ++k) out.push_back(train[order[k]]);
    return out;
}

// ---------------------------------------------------------------------------
// Synthetic corpora

SynthSpec SynthSpec::with_default_keywords(std::size_t n_docs) {
    SynthSpec spec;
    spec.n_docs = n_docs;
    spec.keyword_rate = 0.05;
    spec.min_length = 30;
    spec.max_length = 90;
    const std::array<std::vector<std::string>, kNumSentimentClasses> words = {{
        {"horrible", "terrible", "awful", "bland", "rude", "disappointing", "worst", "gross", "overpriced",
         "stale"},
        {"okay", "average", "decent", "alright", "fine", "acceptable", "passable", "meh", "standard", "moderate"},
        {"delicious", "excellent", "amazing", "awesome", "perfect", "fantastic", "wonderful", "incredible",
         "friendly", "tasty"},
    }};
    for (std::size_t c = 0; c < words.size(); ++c)
        for (const auto& w : words[c]) spec.keywords[c].push_back({w, 1.0});
    return spec;
}

nlohmann::json to_json(const SynthSpec& s) {
    nlohmann::json keywords = nlohmann::json::array();
    for (const auto& cls : s.keywords) {
        nlohmann::json list = nlohmann::json::array();
        for (const auto& kw : cls) list.push_back({{"word", kw.word}, {"weight", kw.weight}});
        keywords.push_back(std::move(list));
    }
    return {{"n_docs", s.n_docs},
            {"class_priors", s.class_priors},
            {"keywords", std::move(keywords)},
            {"keyword_rate", s.keyword_rate},
            {"vocab_size", s.vocab_size},
            {"zipf_exponent", s.zipf_exponent},
            {"min_length", s.min_length},
            {"max_length", s.max_length}};
}

SynthSpec synth_spec_from_json(const nlohmann::json& j) {
    SynthSpec s = SynthSpec::with_default_keywords(0);
    try {
        s.n_docs = j.value("n_docs", std::size_t{0});
        if (j.contains("class_priors")) s.class_priors = j.at("class_priors").get<std::array<double, 3>>();
        if (j.contains("keywords")) {
            const auto& kw = j.at("keywords");
            if (!kw.is_array() || kw.size() != kNumSentimentClasses)
                throw ConfigError("synth keywords must be a list of 3 per-class lists");
            for (std::size_t c = 0; c < kNumSentimentClasses; ++c) {
                s.keywords[c].clear();
                for (const auto& entry : kw[c]) {
                    if (entry.is_string()) {
                        s.keywords[c].push_back({entry.get<std::string>(), 1.0});
                    } else {
                        s.keywords[c].push_back({entry.at("word").get<std::string>(), entry.value("weight", 1.0)});
                    }
                }
            }
        }
        s.keyword_rate = j.value("keyword_rate", s.keyword_rate);
        s.vocab_size = j.value("vocab_size", s.vocab_size);
        s.zipf_exponent = j.value("zipf_exponent", s.zipf_exponent);
        s.min_length = j.value("min_length", s.min_length);
        s.max_length = j.value("max_length", s.max_length);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid synth spec: ") + e.what());
    }
    return s;
}

std::string synth_background_word(std::size_t rank) {
    static constexpr std::string_view kConsonants = "bdfgklmnprstvz";
    static constexpr std::string_view kVowels = "aeiou";
    constexpr std::size_t kSyllables = kConsonants.size() * kVowels.size();
    std::string word;
    // Offset so every rank has at least two syllables; base conversion keeps it injective.
    std::size_t r = rank + kSyllables;
    do {
        const std::size_t s = r % kSyllables;
        word.push_back(kConsonants[s / kVowels.size()]);
        word.push_back(kVowels[s % kVowels.size()]);
        r /= kSyllables;
    } while (r > 0);
    return word;
}

std::vector<LabeledDoc> synth_corpus(const SynthSpec& spec, std::uint64_t seed) {
    double prior_sum = 0.0;
    for (double p : spec.class_priors) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw ConfigError("class priors must be finite and non-negative");
        prior_sum += p;
    }
    if (std::fabs(prior_sum - 1.0) > 1e-9) throw ConfigError("class priors must sum to 1");
    if (!(spec.keyword_rate >= 0.0 && spec.keyword_rate <= 1.0)) throw ConfigError("keyword_rate must lie in [0, 1]");
    if (spec.min_length == 0 || spec.max_length < spec.min_length) throw ConfigError("invalid document length range");
    if (spec.vocab_size == 0) throw ConfigError("vocab_size must be positive");

    std::array<std::vector<double>, kNumSentimentClasses> keyword_cdf;
    for (std::size_t c = 0; c < kNumSentimentClasses; ++c) {
        if (spec.class_priors[c] > 0.0 && spec.keyword_rate > 0.0 && spec.keywords[c].empty()) {
            throw ConfigError("class " + std::to_string(c) + " has a positive prior but no keywords");
        }
        double acc = 0.0;
        for (const auto& kw : spec.keywords[c]) {
            if (!(kw.weight > 0.0)) throw ConfigError("keyword weights must be positive");
            acc += kw.weight;
            keyword_cdf[c].push_back(acc);
        }
    }
    std::vector<double> zipf_cdf(spec.vocab_size);
    double acc = 0.0;
    for (std::size_t r = 0; r < spec.vocab_size; ++r) {
        acc += 1.0 / std::pow(static_cast<double>(r + 1), spec.zipf_exponent);
        zipf_cdf[r] = acc;
    }
    std::vector<std::string> background(spec.vocab_size);
    for (std::size_t r = 0; r < spec.vocab_size; ++r) background[r] = synth_background_word(r);

    auto draw = [](const std::vector<double>& cdf, double u) {
        const double target = u * cdf.back();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
        return static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
    };

    Rng rng(seed);
    std::vector<LabeledDoc> docs;
    docs.reserve(spec.n_docs);
    const auto span = spec.max_length - spec.min_length + 1;
    for (std::size_t i = 0; i < spec.n_docs; ++i) {
        const double u = rng.uniform();
        Label label = kNumSentimentClasses - 1;
        double cum = 0.0;
        for (int c = 0; c < kNumSentimentClasses; ++c) {
            cum += spec.class_priors[static_cast<std::size_t>(c)];
            if (u < cum) {
                label = c;
                break;
            }
        }
        while (spec.class_priors[static_cast<std::size_t>(label)] == 0.0) --label;

        const auto length = spec.min_length + static_cast<std::size_t>(rng.below(span));
        std::string text;
        const auto& kws = spec.keywords[static_cast<std::size_t>(label)];
        for (std::size_t t = 0; t < length; ++t) {
            if (t > 0) text.push_back(' ');
            if (!kws.empty() && rng.uniform() < spec.keyword_rate) {
                text += kws[draw(keyword_cdf[static_cast<std::size_t>(label)], rng.uniform())].word;
            } else {
                text += background[draw(zipf_cdf, rng.uniform())];
            }
        }
        text.push_back('.');
        docs.push_back({std::move(text), label});
    }
    return docs;
}

// ---------------------------------------------------------------------------
// Corpus files

std::vector<LabeledDoc> read_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read corpus " + path.string());
    std::vector<LabeledDoc> docs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            LabeledDoc d{j.at("text").get<std::string>(), j.at("label").get<int>()};
            label_index(d.label);
            docs.push_back(std::move(d));
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        } catch (const DataError& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return docs;
}

std::string corpus_to_jsonl(const std::vector<LabeledDoc>& docs) {
    std::string out;
    for (const auto& d : docs) {
        nlohmann::ordered_json j;
        j["text"] = d.text;
        j["label"] = d.label;
        out += j.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
        out.push_back('\n');
    }
    return out;
}

std::string corpus_hash(const std::vector<LabeledDoc>& docs) {
    Fnv1a h;
    for (const auto& d : docs) {
        h.update(d.text).separator();
        h.update(std::to_string(d.label)).separator();
    }
    return h.hex();
}

}  // namespace sentibench
