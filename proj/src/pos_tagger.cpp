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

// Rule-cascade part-of-speech tagger. Coarse tags only; the output exists to
// route tokens to the right lemmatizer rules, not to parse.
//
// Order of evidence for each token:
//   1. closed-class word lists below
//   2. the lemma table's preferred tag for the form
//   3. suffix heuristics (or NOUN when nothing matches)
//   4. corrections from the left neighbour
// Only tokens tagged by (3) are eligible for context corrections.

#include <array>
#include <string>
#include <string_view>
#include <unordered_map>

#include "sentibench/textprep.hpp"

namespace sentibench {

namespace {

enum class Source { closed, lexicon, suffix, fallback };

enum WordClass : unsigned {
    kDeterminer = 1u << 0,
    kBeForm = 1u << 1,
    kModal = 1u << 2,
    kDegree = 1u << 3,
    kSubjectPlural = 1u << 4,  // i, we, you, they
    kSubjectSingular = 1u << 5,  // he, she, it
    kInfinitive = 1u << 6,  // to, do-support
};

struct ClosedEntry {
    PosTag tag;
    unsigned classes;
};

const std::unordered_map<std::string_view, ClosedEntry>& closed_class() {
    static const auto* table = [] {
        auto* t = new std::unordered_map<std::string_view, ClosedEntry>();
        auto put = [t](std::initializer_list<std::string_view> words, PosTag tag, unsigned classes = 0) {
            for (auto w : words) {
                auto& e = (*t)[w];
                e.tag = tag;
                e.classes |= classes;
            }
        };
        put({"a", "an", "the", "my", "your", "his", "her", "its", "our", "their", "some", "any", "no", "every",
             "each", "these", "those", "another", "either", "neither", "several", "whose"},
            PosTag::other, kDeterminer);
        put({"this", "that", "which", "what", "who", "whom", "whoever", "whatever", "whichever", "me", "him", "us",
             "them", "mine", "yours", "hers", "ours", "theirs", "myself", "yourself", "himself", "herself",
             "itself", "ourselves", "yourselves", "themselves", "one", "ones", "something", "anything",
             "nothing", "everything", "someone", "anyone", "everyone", "nobody", "somebody", "everybody", "all",
             "both", "few", "many", "much", "such", "own", "same", "other", "others"},
            PosTag::other);
        put({"i", "we", "you", "they"}, PosTag::other, kSubjectPlural);
        put({"he", "she", "it"}, PosTag::other, kSubjectSingular);
        put({"of", "in", "on", "at", "by", "for", "with", "about", "against", "between", "into", "through",
             "during", "before", "after", "above", "below", "from", "up", "down", "out", "off", "over", "under",
             "around", "among", "across", "behind", "beyond", "near", "inside", "outside", "without", "within",
             "upon", "toward", "towards", "via", "per", "than", "like", "despite", "except", "until", "till",
             "since", "along", "onto"},
            PosTag::other);
        put({"and", "but", "or", "nor", "so", "yet", "if", "because", "while", "although", "though", "unless",
             "whether", "as", "whereas", "once"},
            PosTag::other);
        put({"to"}, PosTag::other, kInfinitive);
        put({"am", "is", "are", "was", "were", "be", "been", "being"}, PosTag::verb, kBeForm);
        put({"do", "does", "did", "don", "doesn", "didn"}, PosTag::verb, kInfinitive);
        put({"will", "would", "can", "could", "should", "shall", "may", "might", "must", "won", "wouldn",
             "couldn", "shouldn", "cannot", "ll"},
            PosTag::verb, kModal);
        put({"has", "have", "had", "having", "hasn", "haven", "hadn", "isn", "aren", "wasn", "weren"},
            PosTag::verb);
        put({"very", "really", "so", "too", "extremely", "incredibly", "quite", "pretty", "super", "totally",
             "absolutely", "rather", "fairly", "highly", "overly", "somewhat", "truly", "especially",
             "particularly", "slightly", "completely", "utterly", "terribly", "seriously", "insanely",
             "ridiculously", "surprisingly", "reasonably", "perfectly", "most", "more", "less", "least"},
            PosTag::adv, kDegree);
        put({"not", "never", "always", "often", "sometimes", "usually", "just", "also", "still", "already",
             "again", "ever", "here", "there", "then", "now", "soon", "almost", "even", "only", "well",
             "however", "maybe", "perhaps", "definitely", "probably", "actually", "finally", "today",
             "tonight", "yesterday", "tomorrow", "away", "back", "instead", "anyway", "otherwise", "else",
             "together", "twice", "enough", "why", "how", "when", "where"},
            PosTag::adv);
        put({"yes", "no", "ok", "okay", "oh", "wow", "please", "thanks", "hi", "hey"}, PosTag::other);
        return t;
    }();
    return *table;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() > suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_numeric(std::string_view s) {
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return !s.empty();
}

// Common nouns that the -ing / -ed / -s heuristics would misroute.
bool is_listed_noun(std::string_view s) {
    static const std::unordered_map<std::string_view, bool> nouns = [] {
        std::unordered_map<std::string_view, bool> m;
        for (auto w : {"pudding", "dumpling", "dumplings", "morning", "evening", "wedding", "building", "ceiling",
                       "thing", "things", "king", "ring", "spring", "string", "wing", "wings", "filling",
                       "stuffing", "topping", "toppings", "icing", "frosting", "seasoning", "dressing",
                       "serving", "servings", "setting", "ending", "meeting", "feeling", "booking", "parking",
                       "seating", "clothing", "lighting", "bed", "need", "speed", "seed", "red", "bread",
                       "news", "series", "species", "lens", "bus", "gas", "glass", "class", "dish", "price",
                       "service", "staff", "food", "place", "time", "menu", "restaurant"})
            m.emplace(w, true);
        return m;
    }();
    return nouns.contains(s);
}

PosTag suffix_tag(std::string_view w, Source& source) {
    source = Source::suffix;
    if (is_numeric(w)) return PosTag::other;
    if (is_listed_noun(w)) return PosTag::noun;
    if (ends_with(w, "ly") && w.size() > 4) return PosTag::adv;
    if (ends_with(w, "ing") && w.size() > 4) return PosTag::verb;
    if (ends_with(w, "ed") && w.size() > 3) return PosTag::verb;
    for (auto sfx : {"ous", "ful", "ive", "able", "ible", "less", "ish", "ical", "ic", "al", "ent", "ant", "est"})
        if (ends_with(w, sfx)) return PosTag::adj;
    for (auto sfx : {"ize", "ise", "ify", "ate"})
        if (ends_with(w, sfx)) return PosTag::verb;
    for (auto sfx : {"tion", "sion", "ment", "ness", "ity", "er", "or", "ism", "ist", "ance", "ence", "ship",
                     "hood", "age", "ery"})
        if (ends_with(w, sfx)) return PosTag::noun;
    if (ends_with(w, "s") && !ends_with(w, "ss") && w.size() > 3) return PosTag::noun;
    source = Source::fallback;
    return PosTag::noun;
}

}  // namespace

std::vector<TaggedToken> pos_tag(const TokenizedDoc& doc, const LemmaTable* lexicon) {
    const auto& closed = closed_class();
    std::vector<TaggedToken> out;
    out.reserve(doc.tokens.size());
    unsigned prev_classes = 0;
    PosTag prev_tag = PosTag::other;

    for (const auto& token : doc.tokens) {
        PosTag tag;
        Source source;
        unsigned classes = 0;
        if (const auto it = closed.find(token); it != closed.end()) {
            tag = it->second.tag;
            classes = it->second.classes;
            source = Source::closed;
        } else if (auto lex = lexicon ? lexicon->preferred_tag(token) : std::nullopt) {
            tag = *lex;
            source = Source::lexicon;
        } else {
            tag = suffix_tag(token, source);
        }

        if (source != Source::closed) {
            const bool participle = ends_with(token, "ing") || ends_with(token, "ed");
            if (prev_classes & kDegree) {
                // "very troubling": a degree adverb modifies an adjective.
                if (participle || tag == PosTag::verb) tag = PosTag::adj;
            } else if (prev_classes & kBeForm) {
                // "am troubled": participle after a form of "be" stays verbal.
                if (participle && source != Source::lexicon) tag = PosTag::verb;
            } else if (prev_classes & kDeterminer) {
                if (tag == PosTag::verb) tag = participle ? PosTag::adj : PosTag::noun;
            } else if (prev_classes & (kModal | kInfinitive | kSubjectPlural)) {
                if (source == Source::fallback) tag = PosTag::verb;
            } else if (prev_classes & kSubjectSingular) {
                if (source != Source::lexicon && ends_with(token, "s") && !ends_with(token, "ss")) tag = PosTag::verb;
            } else if (prev_tag == PosTag::adj && tag == PosTag::verb && source == Source::suffix &&
                       ends_with(token, "ing")) {
                tag = PosTag::noun;
            }
        }

        out.emplace_back(token, tag);
        prev_classes = classes;
        prev_tag = tag;
    }
    return out;
}

}  // namespace sentibench
