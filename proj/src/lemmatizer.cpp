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

#include <string>
#include <string_view>

#include "sentibench/textprep.hpp"

namespace sentibench {

namespace {

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

// Porter's consonant definition: y is a consonant at the start or after a vowel.
bool is_consonant(std::string_view w, std::size_t i) {
    const char c = w[i];
    if (is_vowel(c)) return false;
    if (c == 'y') return i == 0 || !is_consonant(w, i - 1);
    return true;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool has_vowel(std::string_view w) {
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!is_consonant(w, i)) return true;
    return false;
}

bool all_lower_alpha(std::string_view w) {
    for (char c : w)
        if (c < 'a' || c > 'z') return false;
    return !w.empty();
}

// Count of vowel-consonant transitions.
int measure(std::string_view w) {
    int m = 0;
    bool prev_vowel = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const bool cons = is_consonant(w, i);
        if (cons && prev_vowel) ++m;
        prev_vowel = !cons;
    }
    return m;
}

bool ends_cvc(std::string_view w) {
    const auto n = w.size();
    if (n < 3) return false;
    if (!is_consonant(w, n - 1) || is_consonant(w, n - 2) || !is_consonant(w, n - 3)) return false;
    const char last = w[n - 1];
    return last != 'w' && last != 'x' && last != 'y';
}

bool ends_double_consonant(std::string_view w) {
    const auto n = w.size();
    return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

// Rebuilds a verb or adjective base after an inflectional suffix was cut off.
std::string restore_base(std::string stem) {
    const auto n = stem.size();
    if (ends_double_consonant(stem)) {
        const char c = stem.back();
        if (c != 'l' && c != 's' && c != 'z' && c != 'f') stem.pop_back();
        return stem;
    }
    const char last = stem.back();
    const char before = n >= 2 ? stem[n - 2] : '\0';
    const bool needs_e =
        (last == 'l' && n >= 2 && is_consonant(stem, n - 2) && before != 'l' && before != 'r' && before != 'w') ||
        last == 'v' || last == 'u' || last == 'c' || (last == 'z' && is_vowel(before)) ||
        (last == 'g' && (before == 'd' || before == 'r' || before == 'l')) ||
        (last == 'g' && before == 'n' && n >= 5 && stem[n - 3] == 'a') ||
        (last == 's' && is_vowel(before)) || (measure(stem) == 1 && ends_cvc(stem));
    if (needs_e) stem.push_back('e');
    return stem;
}

std::string verb_rules(std::string_view w) {
    if (ends_with(w, "ies") && w.size() > 4) return std::string(w.substr(0, w.size() - 3)) + "y";
    if (ends_with(w, "ied") && w.size() > 4) return std::string(w.substr(0, w.size() - 3)) + "y";
    if (ends_with(w, "ing") && w.size() > 4) {
        std::string stem(w.substr(0, w.size() - 3));
        if (!has_vowel(stem)) return std::string(w);
        if (ends_with(stem, "ee") || ends_with(stem, "ye") || ends_with(stem, "oe")) return stem;
        return restore_base(std::move(stem));
    }
    if (ends_with(w, "eed") && w.size() > 4) return std::string(w.substr(0, w.size() - 1));
    if (ends_with(w, "ed") && w.size() > 3) {
        std::string stem(w.substr(0, w.size() - 2));
        if (!has_vowel(stem)) return std::string(w);
        return restore_base(std::move(stem));
    }
    if (ends_with(w, "s") && w.size() > 3 && !ends_with(w, "ss") && !ends_with(w, "us") && !ends_with(w, "is")) {
        for (auto sfx : {"ches", "shes", "sses", "xes", "zzes", "oes"})
            if (ends_with(w, sfx)) return std::string(w.substr(0, w.size() - 2));
        return std::string(w.substr(0, w.size() - 1));
    }
    return std::string(w);
}

std::string noun_rules(std::string_view w) {
    if (w.size() <= 3 || !ends_with(w, "s")) return std::string(w);
    if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is") || ends_with(w, "ous")) return std::string(w);
    if (ends_with(w, "ies") && w.size() > 4) return std::string(w.substr(0, w.size() - 3)) + "y";
    for (auto sfx : {"sses", "ches", "shes", "xes", "zzes"})
        if (ends_with(w, sfx)) return std::string(w.substr(0, w.size() - 2));
    return std::string(w.substr(0, w.size() - 1));
}

// Comparatives and superlatives: only the unambiguous -ier/-iest and doubled
// consonant forms; everything else needs an exception-table entry.
std::string adjective_rules(std::string_view w) {
    for (std::string_view sfx : {std::string_view("iest"), std::string_view("ier")}) {
        if (ends_with(w, sfx) && w.size() > sfx.size() + 2) return std::string(w.substr(0, w.size() - sfx.size())) + "y";
    }
    for (std::string_view sfx : {std::string_view("est"), std::string_view("er")}) {
        if (!ends_with(w, sfx) || w.size() < sfx.size() + 3) continue;
        const auto stem = w.substr(0, w.size() - sfx.size());
        if (ends_double_consonant(stem) && stem.back() != 'l' && stem.back() != 's' && stem.back() != 'f' &&
            measure(stem.substr(0, stem.size() - 1)) == 1) {
            return std::string(stem.substr(0, stem.size() - 1));
        }
    }
    return std::string(w);
}

}  // namespace

std::string lemmatize(std::string_view token, PosTag tag, const LemmaTable& table) {
    if (token.empty()) return std::string(token);
    if (auto hit = table.lookup(token, tag)) return std::string(*hit);
    if (!all_lower_alpha(token)) return std::string(token);

    std::string lemma;
    switch (tag) {
        case PosTag::verb:
            lemma = verb_rules(token);
            break;
        case PosTag::noun:
            lemma = noun_rules(token);
            break;
        case PosTag::adj:
            lemma = adjective_rules(token);
            break;
        case PosTag::adv:
        case PosTag::other:
            lemma = std::string(token);
            break;
    }
    if (lemma.size() < 2) return std::string(token);
    return lemma;
}

}  // namespace sentibench
