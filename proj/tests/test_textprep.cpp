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

#include <numeric>
#include <sstream>

#include "sentibench/error.hpp"
#include "sentibench/textprep.hpp"
#include "test_support.hpp"

using namespace sentibench;

namespace {

using Tokens = std::vector<std::string>;

Tokens toks(std::string_view text, bool lowercase = true) { return tokenize(text, lowercase).tokens; }

// The lemma contract sentences contain one-letter words ("a", "i") that the
// tokenizer drops, so they are split on spaces directly.
TokenizedDoc words(const std::string& s) {
    TokenizedDoc d;
    std::istringstream in(s);
    std::string w;
    while (in >> w) d.tokens.push_back(w);
    return d;
}

std::string join(const Tokens& t) {
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i) out += (i ? " " : "") + t[i];
    return out;
}

const TextResources& resources() {
    static const TextResources r(SENTIBENCH_SOURCE_DATA_DIR);
    return r;
}

const LemmaTable& lemmas() { return *resources().lemma_table(); }

PosTag tag_of(const std::vector<TaggedToken>& tagged, std::string_view token) {
    for (const auto& [t, tag] : tagged)
        if (t == token) return tag;
    FAIL("token not found");
    return PosTag::other;
}

}  // namespace

TEST_CASE("tokenizer keeps runs of two or more word characters") {
    CHECK(toks("Food wasn't great.") == Tokens{"food", "wasn", "great"});
    CHECK(toks("").empty());
    CHECK(toks("  \t\n").empty());
    CHECK(toks("a b c I x") == Tokens{});
    CHECK(toks("snake_case and CamelCase", false) == Tokens{"snake_case", "and", "CamelCase"});
}

TEST_CASE("single digits survive tokenization") {
    CHECK(toks("3.5 stars") == Tokens{"3", "5", "stars"});
    CHECK(toks("rated 10/10!") == Tokens{"rated", "10", "10"});
}

TEST_CASE("non-ASCII letters are word characters, symbols are separators") {
    CHECK(toks("Caf\xc3\xa9 CR\xc3\x88ME br\xc3\xbbl\xc3\xa9\x65") ==
          Tokens{"caf\xc3\xa9", "cr\xc3\xa8me", "br\xc3\xbbl\xc3\xa9" "e"});
    CHECK(toks("good\xe2\x80\x94great\xe2\x80\xa6") == Tokens{"good", "great"});       // em dash, ellipsis
    CHECK(toks("yum\xf0\x9f\x98\x8b\xf0\x9f\x98\x8bso") == Tokens{"yum", "so"});      // emoji
    CHECK(toks("\xce\x9a\xce\x91\xce\x9b\xce\x9f") == Tokens{"\xce\xba\xce\xb1\xce\xbb\xce\xbf"});  // Greek
    CHECK(toks("ok\xff\xfe" "bad") == Tokens{"ok", "bad"});                                  // invalid bytes split
}

TEST_CASE("lowercased tokens contain no ASCII uppercase or whitespace") {
    for (const auto& t : toks("MiXeD CaSe WORDS\twith\nBreaks")) {
        for (char c : t) {
            CHECK(!(c >= 'A' && c <= 'Z'));
            CHECK(c != ' ');
        }
    }
}

TEST_CASE("shipped stopword list") {
    const auto list = resources().stopwords("english");
    CHECK(list->size() == 179);
    const auto out = remove_stopwords(TokenizedDoc{{"the", "food", "is", "not", "good"}}, *list);
    CHECK(out.tokens == Tokens{"food", "good"});
    CHECK(remove_stopwords(TokenizedDoc{}, *list).tokens.empty());
    const TokenizedDoc clean{{"pizza", "crust"}};
    CHECK(remove_stopwords(clean, *list) == clean);
    CHECK_THROWS_AS(resources().stopwords("klingon"), ConfigError);
    CHECK_THROWS_AS(resources().stopwords("../lemma/exceptions"), ConfigError);
}

TEST_CASE("n-grams of the worked sentence") {
    const auto doc = tokenize("the food is not good");
    CHECK(ngrams(doc, 1, 1) == Tokens{"the", "food", "is", "not", "good"});
    CHECK(ngrams(doc, 2, 2) == Tokens{"the food", "food is", "is not", "not good"});
    CHECK(ngrams(doc, 1, 2).size() == 9);
    CHECK(ngrams(TokenizedDoc{}, 1, 3).empty());
    CHECK(ngrams(TokenizedDoc{{"one"}}, 2, 3).empty());
    CHECK_THROWS_AS(ngrams(doc, 2, 1), ConfigError);
}

TEST_CASE("n-gram count and contiguity hold for every range") {
    const auto doc = tokenize("we came back for the brisket and the pickles were great too");
    const auto L = doc.tokens.size();
    const auto text = " " + join(doc.tokens) + " ";
    for (int a = 1; a <= 3; ++a)
        for (int b = a; b <= 3; ++b) {
            const auto grams = ngrams(doc, a, b);
            std::size_t expect = 0;
            for (int n = a; n <= b; ++n) expect += L >= static_cast<std::size_t>(n) ? L - n + 1 : 0;
            CHECK(grams.size() == expect);
            for (const auto& g : grams) CHECK(text.find(" " + g + " ") != std::string::npos);
        }
}

TEST_CASE("POS tagging of the contract sentences") {
    const auto t3 = pos_tag(words("i am troubled"), &lemmas());
    CHECK(tag_of(t3, "am") == PosTag::verb);
    CHECK(tag_of(t3, "troubled") == PosTag::verb);
    const auto t2 = pos_tag(words("this is very troubling"), &lemmas());
    CHECK(tag_of(t2, "is") == PosTag::verb);
    CHECK(tag_of(t2, "troubling") == PosTag::adj);
    const auto t1 = pos_tag(words("what a trouble"), &lemmas());
    CHECK(tag_of(t1, "trouble") == PosTag::noun);
    CHECK(pos_tag(TokenizedDoc{}, &lemmas()).empty());
}

TEST_CASE("lemmatizer exception table and suffix rules") {
    const auto& tbl = lemmas();
    CHECK(lemmatize("is", PosTag::verb, tbl) == "be");
    CHECK(lemmatize("am", PosTag::verb, tbl) == "be");
    CHECK(lemmatize("were", PosTag::verb, tbl) == "be");
    CHECK(lemmatize("had", PosTag::verb, tbl) == "have");
    CHECK(lemmatize("better", PosTag::adj, tbl) == "good");
    CHECK(lemmatize("troubled", PosTag::verb, tbl) == "trouble");
    CHECK(lemmatize("troubling", PosTag::adj, tbl) == "troubling");
    CHECK(lemmatize("stopped", PosTag::verb, tbl) == "stop");
    CHECK(lemmatize("making", PosTag::verb, tbl) == "make");
    CHECK(lemmatize("tried", PosTag::verb, tbl) == "try");
    CHECK(lemmatize("churches", PosTag::noun, tbl) == "church");
    CHECK(lemmatize("berries", PosTag::noun, tbl) == "berry");
    CHECK(lemmatize("glass", PosTag::noun, tbl) == "glass");
    CHECK(lemmatize("tastiest", PosTag::adj, tbl) == "tasty");
    CHECK(lemmatize("bigger", PosTag::adj, tbl) == "big");
    CHECK(lemmatize("quickly", PosTag::adv, tbl) == "quickly");
}

TEST_CASE("lemmatize never returns an empty string") {
    const auto& tbl = lemmas();
    for (const char* w : {"s", "es", "ed", "ing", "ies", "x", "3", "caf\xc3\xa9", "us"})
        for (auto tag : {PosTag::noun, PosTag::verb, PosTag::adj, PosTag::adv, PosTag::other}) {
            const auto out = lemmatize(w, tag, tbl);
            CHECK(!out.empty());
        }
    CHECK(lemmatize("", PosTag::noun, tbl).empty());
    CHECK(lemmatize("3", PosTag::noun, tbl) == "3");
}

TEST_CASE("lemma contract rows") {
    const auto& tbl = lemmas();
    CHECK(join(normalize(words("what a trouble"), Normalization::lemma_pos, tbl).tokens) == "what a trouble");
    CHECK(join(normalize(words("this is very troubling"), Normalization::lemma_pos, tbl).tokens) ==
          "this be very troubling");
    CHECK(join(normalize(words("i am troubled"), Normalization::lemma_pos, tbl).tokens) == "i be trouble");
}

TEST_CASE("stem contract rows") {
    const auto& tbl = lemmas();
    CHECK(join(normalize(words("what a trouble"), Normalization::stem, tbl).tokens) == "what a troubl");
    CHECK(join(normalize(words("this is very troubling"), Normalization::stem, tbl).tokens) == "thi is veri troubl");
    CHECK(join(normalize(words("i am troubled"), Normalization::stem, tbl).tokens) == "i am troubl");
}

TEST_CASE("prepare composes the stages in order") {
    PrepConfig plain;
    CHECK(prepare("Food wasn't great", plain, resources()) == Tokens{"food", "wasn", "great"});

    PrepConfig final_cfg;
    final_cfg.normalization = Normalization::lemma_pos;
    final_cfg.ngram_max = 2;
    const auto tagged = pos_tag(tokenize("Food wasn't great"), &lemmas());
    Tokens lemmas_out;
    for (const auto& [t, tag] : tagged) lemmas_out.push_back(lemmatize(t, tag, lemmas()));
    const auto expect = ngrams(TokenizedDoc{lemmas_out}, 1, 2);
    CHECK(prepare("Food wasn't great", final_cfg, resources()) == expect);

    PrepConfig stem_cfg;
    stem_cfg.normalization = Normalization::stem;
    CHECK(join(prepare("This is very troubling", stem_cfg, resources())) == "thi is veri troubl");
    final_cfg.ngram_max = 1;
    CHECK(join(prepare("This is very troubling", final_cfg, resources())) == "this be very troubling");

    // Stopwords go before normalization: "is" is removed rather than lemmatized to "be".
    PrepConfig sw = final_cfg;
    sw.stopword_list = "english";
    CHECK(join(prepare("The food is not good", sw, resources())) == "food good");
}

TEST_CASE("preprocessor output depends only on text and config") {
    PrepConfig cfg;
    cfg.normalization = Normalization::lemma_pos;
    cfg.ngram_max = 3;
    const Preprocessor a(cfg, resources());
    const Preprocessor b(cfg, TextResources(SENTIBENCH_SOURCE_DATA_DIR));
    const std::string text = "The waiters were friendly but the noodles tasted worse than last time.";
    CHECK(a(text) == b(text));
    CHECK(a(text) == a(text));
}

TEST_CASE("prep config validation and JSON") {
    PrepConfig c;
    c.ngram_min = 2;
    c.ngram_max = 1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.ngram_min = 1;
    c.ngram_max = 4;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.ngram_max = 3;
    c.stopword_list = "english";
    c.normalization = Normalization::stem;
    CHECK(prep_config_from_json(to_json(c)) == c);
    CHECK_THROWS_AS(prep_config_from_json(nlohmann::json{{"normalization", "lemma"}}), ConfigError);
    CHECK_THROWS_AS(prep_config_from_json(nlohmann::json{{"stopword_list", "english"}}), ConfigError);
}
