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

#include "sentibench/textprep.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>

#include "sentibench/error.hpp"

#ifndef SENTIBENCH_DEFAULT_DATA_DIR
#define SENTIBENCH_DEFAULT_DATA_DIR "data"
#endif

namespace sentibench {

std::string_view to_string(Normalization n) noexcept {
    switch (n) {
        case Normalization::stem:
            return "stem";
        case Normalization::lemma_pos:
            return "lemma_pos";
        case Normalization::none:
            break;
    }
    return "none";
}

Normalization parse_normalization(std::string_view s) {
    if (s == "none") return Normalization::none;
    if (s == "stem") return Normalization::stem;
    if (s == "lemma_pos") return Normalization::lemma_pos;
    throw ConfigError("unknown normalization '" + std::string(s) + "' (expected none, stem or lemma_pos)");
}

std::string_view to_string(PosTag t) noexcept {
    switch (t) {
        case PosTag::noun:
            return "NOUN";
        case PosTag::verb:
            return "VERB";
        case PosTag::adj:
            return "ADJ";
        case PosTag::adv:
            return "ADV";
        case PosTag::other:
            break;
    }
    return "OTHER";
}

PosTag parse_pos_tag(std::string_view s) {
    if (s == "NOUN") return PosTag::noun;
    if (s == "VERB") return PosTag::verb;
    if (s == "ADJ") return PosTag::adj;
    if (s == "ADV") return PosTag::adv;
    if (s == "OTHER") return PosTag::other;
    throw ConfigError("unknown POS tag '" + std::string(s) + "'");
}

void PrepConfig::validate() const {
    if (ngram_min < 1 || ngram_max < ngram_min || ngram_max > 3) {
        throw ConfigError("n-gram range must satisfy 1 <= ngram_min <= ngram_max <= 3, got (" +
                          std::to_string(ngram_min) + ", " + std::to_string(ngram_max) + ")");
    }
    if (stopword_list && stopword_list->empty()) throw ConfigError("stopword list name is empty");
}

nlohmann::json to_json(const PrepConfig& config) {
    nlohmann::json j;
    j["lowercase"] = config.lowercase;
    j["stopwords"] = config.stopword_list ? nlohmann::json(*config.stopword_list) : nlohmann::json(nullptr);
    j["normalization"] = std::string(to_string(config.normalization));
    j["ngram_min"] = config.ngram_min;
    j["ngram_max"] = config.ngram_max;
    return j;
}

PrepConfig prep_config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("prep config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key != "lowercase" && key != "stopwords" && key != "normalization" && key != "ngram_min" &&
            key != "ngram_max") {
            throw ConfigError("unknown prep config key '" + key + "'");
        }
    }
    PrepConfig c;
    try {
        c.lowercase = j.value("lowercase", true);
        if (j.contains("stopwords") && !j.at("stopwords").is_null())
            c.stopword_list = j.at("stopwords").get<std::string>();
        c.normalization = parse_normalization(j.value("normalization", std::string("none")));
        c.ngram_min = j.value("ngram_min", 1);
        c.ngram_max = j.value("ngram_max", c.ngram_min);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid prep config: ") + e.what());
    }
    c.validate();
    return c;
}

// ---------------------------------------------------------------------------
// Tokenizer

namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one code point starting at text[i], advancing i. Malformed
// sequences consume one byte and yield kInvalid.
char32_t next_code_point(std::string_view text, std::size_t& i) {
    const auto lead = static_cast<unsigned char>(text[i]);
    if (lead < 0x80) {
        ++i;
        return lead;
    }
    int extra;
    char32_t cp;
    if ((lead & 0xE0) == 0xC0) {
        extra = 1;
        cp = lead & 0x1F;
    } else if ((lead & 0xF0) == 0xE0) {
        extra = 2;
        cp = lead & 0x0F;
    } else if ((lead & 0xF8) == 0xF0) {
        extra = 3;
        cp = lead & 0x07;
    } else {
        ++i;
        return kInvalid;
    }
    if (i + static_cast<std::size_t>(extra) >= text.size()) {
        ++i;
        return kInvalid;
    }
    for (int k = 1; k <= extra; ++k) {
        const auto c = static_cast<unsigned char>(text[i + static_cast<std::size_t>(k)]);
        if ((c & 0xC0) != 0x80) {
            ++i;
            return kInvalid;
        }
        cp = (cp << 6) | (c & 0x3F);
    }
    static constexpr char32_t kMin[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        ++i;
        return kInvalid;
    }
    i += static_cast<std::size_t>(extra) + 1;
    return cp;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_word_char(char32_t cp) {
    if (cp == kInvalid) return false;
    if (cp < 0x80) {
        return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9') || cp == '_';
    }
    if (cp < 0xC0) return cp == 0xAA || cp == 0xB5 || cp == 0xBA;  // Latin-1 punctuation and symbols
    if (cp == 0xD7 || cp == 0xF7) return false;
    if (cp >= 0x2000 && cp <= 0x2BFF) return false;  // punctuation, currency, arrows, math, box drawing
    if (cp >= 0x3000 && cp <= 0x303F) return false;  // CJK punctuation
    if (cp >= 0xE000 && cp <= 0xF8FF) return false;  // private use
    if (cp >= 0xFE00 && cp <= 0xFE0F) return false;  // variation selectors
    if (cp >= 0xFE30 && cp <= 0xFE4F) return false;
    if ((cp >= 0xFF00 && cp <= 0xFF0F) || (cp >= 0xFF1A && cp <= 0xFF20) || (cp >= 0xFF3B && cp <= 0xFF40) ||
        (cp >= 0xFF5B && cp <= 0xFF65))
        return false;
    if (cp >= 0x1F000 && cp <= 0x1FAFF) return false;  // emoji and pictographs
    if (cp >= 0xE0000) return false;                   // tags
    return true;
}

char32_t to_lower(char32_t cp) {
    if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
    if ((cp >= 0xC0 && cp <= 0xDE) && cp != 0xD7) return cp + 32;
    if (cp >= 0x100 && cp <= 0x17F) {
        // Latin Extended-A alternates upper/lower, with a parity shift in 0x139..0x148 and 0x179..0x17E.
        if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) return (cp % 2 == 1) ? cp + 1 : cp;
        if (cp == 0x130 || cp == 0x131 || cp == 0x138 || cp == 0x149 || cp == 0x17F) return cp;
        return (cp % 2 == 0) ? cp + 1 : cp;
    }
    if (cp >= 0x391 && cp <= 0x3AB && cp != 0x3A2) return cp + 32;  // Greek
    if (cp >= 0x410 && cp <= 0x42F) return cp + 32;                // Cyrillic
    if (cp >= 0x400 && cp <= 0x40F) return cp + 80;
    return cp;
}

}  // namespace

TokenizedDoc tokenize(std::string_view text, bool lowercase) {
    TokenizedDoc doc;
    std::string current;
    std::size_t run_length = 0;
    char32_t first = 0;

    auto flush = [&] {
        if (run_length >= 2 || (run_length == 1 && first >= '0' && first <= '9')) {
            doc.tokens.push_back(std::move(current));
        }
        current.clear();
        run_length = 0;
    };

    std::size_t i = 0;
    while (i < text.size()) {
        char32_t cp = next_code_point(text, i);
        if (!is_word_char(cp)) {
            if (run_length > 0) flush();
            continue;
        }
        if (run_length == 0) first = cp;
        if (lowercase) cp = to_lower(cp);
        append_utf8(current, cp);
        ++run_length;
    }
    if (run_length > 0) flush();
    return doc;
}

// ---------------------------------------------------------------------------
// Stopwords and resources

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n')) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace

StopwordList::StopwordList(std::string name, std::vector<std::string> words) : name_(std::move(name)) {
    for (auto& w : words) words_.insert(std::move(w));
}

StopwordList StopwordList::load(const std::filesystem::path& path, std::string name) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read stopword list '" + name + "' at " + path.string());
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        std::string w = trim(line);
        if (w.empty() || w.front() == '#') continue;
        words.push_back(std::move(w));
    }
    return StopwordList(std::move(name), std::move(words));
}

void LemmaTable::add(std::string form, std::string lemma, PosTag tag) {
    if (lemma.empty()) throw DataError("lemma for '" + form + "' is empty");
    preferred_.try_emplace(form, tag);
    entries_.insert_or_assign({std::move(form), tag}, std::move(lemma));
}

LemmaTable LemmaTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read lemma exception table at " + path.string());
    LemmaTable table;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto t1 = line.find('\t');
        const auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t2 == std::string::npos) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected form<TAB>lemma<TAB>tag");
        }
        table.add(line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1),
                  parse_pos_tag(trim(std::string_view(line).substr(t2 + 1))));
    }
    return table;
}

std::optional<std::string_view> LemmaTable::lookup(std::string_view form, PosTag tag) const {
    const auto it = entries_.find(std::pair<std::string, PosTag>(std::string(form), tag));
    if (it == entries_.end()) return std::nullopt;
    return std::string_view(it->second);
}

std::optional<PosTag> LemmaTable::preferred_tag(std::string_view form) const {
    const auto it = preferred_.find(std::string(form));
    if (it == preferred_.end()) return std::nullopt;
    return it->second;
}

std::filesystem::path default_data_dir() {
    if (const char* env = std::getenv("SENTIBENCH_DATA_DIR"); env != nullptr && *env != '\0') return env;
    return SENTIBENCH_DEFAULT_DATA_DIR;
}

TextResources::TextResources(std::filesystem::path data_dir) : data_dir_(std::move(data_dir)) {}

std::shared_ptr<const StopwordList> TextResources::stopwords(std::string_view name) const {
    std::lock_guard lock(mutex_);
    if (const auto it = stopwords_.find(name); it != stopwords_.end()) return it->second;
    if (name.empty() || name.find('/') != std::string_view::npos || name.find('\\') != std::string_view::npos ||
        name.front() == '.') {
        throw ConfigError("invalid stopword list name '" + std::string(name) + "'");
    }
    const auto path = data_dir_ / "stopwords" / (std::string(name) + ".txt");
    if (!std::filesystem::exists(path)) {
        throw ConfigError("unknown stopword list '" + std::string(name) + "' (no " + path.string() + ")");
    }
    auto list = std::make_shared<const StopwordList>(StopwordList::load(path, std::string(name)));
    stopwords_.emplace(std::string(name), list);
    return list;
}

std::shared_ptr<const LemmaTable> TextResources::lemma_table() const {
    std::lock_guard lock(mutex_);
    if (!lemmas_) lemmas_ = std::make_shared<const LemmaTable>(LemmaTable::load(data_dir_ / "lemma" / "exceptions.tsv"));
    return lemmas_;
}

TokenizedDoc remove_stopwords(const TokenizedDoc& doc, const StopwordList& list) {
    TokenizedDoc out;
    out.tokens.reserve(doc.tokens.size());
    for (const auto& t : doc.tokens)
        if (!list.contains(t)) out.tokens.push_back(t);
    return out;
}

TokenizedDoc remove_stopwords(const TokenizedDoc& doc, std::string_view list_name, const TextResources& resources) {
    return remove_stopwords(doc, *resources.stopwords(list_name));
}

// ---------------------------------------------------------------------------
// N-grams and the pipeline

std::vector<std::string> ngrams(const TokenizedDoc& doc, int n_min, int n_max) {
    if (n_min < 1 || n_max < n_min) {
        throw ConfigError("invalid n-gram range (" + std::to_string(n_min) + ", " + std::to_string(n_max) + ")");
    }
    const auto& t = doc.tokens;
    const auto len = t.size();
    std::vector<std::string> out;
    std::size_t total = 0;
    for (int n = n_min; n <= n_max; ++n)
        if (len >= static_cast<std::size_t>(n)) total += len - static_cast<std::size_t>(n) + 1;
    out.reserve(total);
    for (int n = n_min; n <= n_max; ++n) {
        const auto un = static_cast<std::size_t>(n);
        if (len < un) continue;
        for (std::size_t i = 0; i + un <= len; ++i) {
            std::string gram = t[i];
            for (std::size_t k = 1; k < un; ++k) {
                gram.push_back(' ');
                gram += t[i + k];
            }
            out.push_back(std::move(gram));
        }
    }
    return out;
}

TokenizedDoc normalize(const TokenizedDoc& doc, Normalization mode, const LemmaTable& table) {
    switch (mode) {
        case Normalization::none:
            return doc;
        case Normalization::stem: {
            TokenizedDoc out;
            out.tokens.reserve(doc.tokens.size());
            for (const auto& t : doc.tokens) out.tokens.push_back(porter_stem(t));
            return out;
        }
        case Normalization::lemma_pos: {
            TokenizedDoc out;
            out.tokens.reserve(doc.tokens.size());
            for (const auto& [token, tag] : pos_tag(doc, &table)) out.tokens.push_back(lemmatize(token, tag, table));
            return out;
        }
    }
    return doc;
}

Preprocessor::Preprocessor(PrepConfig config, const TextResources& resources) : config_(std::move(config)) {
    config_.validate();
    if (config_.stopword_list) stopwords_ = resources.stopwords(*config_.stopword_list);
    if (config_.normalization == Normalization::lemma_pos) lemmas_ = resources.lemma_table();
}

std::vector<std::string> Preprocessor::operator()(std::string_view text) const {
    TokenizedDoc doc = tokenize(text, config_.lowercase);
    if (stopwords_) doc = remove_stopwords(doc, *stopwords_);
    if (config_.normalization != Normalization::none) {
        static const LemmaTable empty;
        doc = normalize(doc, config_.normalization, lemmas_ ? *lemmas_ : empty);
    }
    return ngrams(doc, config_.ngram_min, config_.ngram_max);
}

std::vector<std::string> prepare(std::string_view text, const PrepConfig& config, const TextResources& resources) {
    return Preprocessor(config, resources)(text);
}

}  // namespace sentibench
