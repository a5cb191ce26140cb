#include "telcokit/stemmer.hpp"

#include <cctype>

namespace telcokit::evalkit {

namespace {

bool is_vowel(const std::string& w, size_t i) {
    char c = w[i];
    if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return true;
    if (c == 'y') return i > 0 && !is_vowel(w, i - 1);
    return false;
}

// Measure m of the [C](VC)^m[V] decomposition of w[0..len).
int measure(const std::string& w, size_t len) {
    int m = 0;
    size_t i = 0;
    while (i < len && !is_vowel(w, i)) ++i;
    while (i < len) {
        while (i < len && is_vowel(w, i)) ++i;
        if (i >= len) break;
        ++m;
        while (i < len && !is_vowel(w, i)) ++i;
    }
    return m;
}

bool has_vowel(const std::string& w, size_t len) {
    for (size_t i = 0; i < len; ++i)
        if (is_vowel(w, i)) return true;
    return false;
}

bool ends_with(const std::string& w, std::string_view suffix) {
    return w.size() >= suffix.size() &&
           std::string_view(w).substr(w.size() - suffix.size()) == suffix;
}

bool double_consonant(const std::string& w) {
    size_t n = w.size();
    return n >= 2 && w[n - 1] == w[n - 2] && !is_vowel(w, n - 1);
}

// consonant-vowel-consonant ending, final consonant not w/x/y
bool cvc(const std::string& w) {
    size_t n = w.size();
    if (n < 3) return false;
    if (is_vowel(w, n - 1) || !is_vowel(w, n - 2) || is_vowel(w, n - 3)) return false;
    char c = w[n - 1];
    return c != 'w' && c != 'x' && c != 'y';
}

// Replace `suffix` with `repl` when the stem measure condition holds.
bool replace_if(std::string& w, std::string_view suffix, std::string_view repl, int min_m) {
    if (!ends_with(w, suffix)) return false;
    size_t stem_len = w.size() - suffix.size();
    if (measure(w, stem_len) > min_m) {
        w.resize(stem_len);
        w += repl;
    }
    return true;  // suffix matched, rule consumed
}

}  // namespace

std::string porter_stem(std::string_view word) {
    std::string w;
    w.reserve(word.size());
    for (char c : word) {
        if (!std::isalpha(static_cast<unsigned char>(c))) return std::string(word);
        w.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (w.size() <= 2) return w;

    // Step 1a
    if (ends_with(w, "sses")) w.resize(w.size() - 2);
    else if (ends_with(w, "ies")) w.resize(w.size() - 2);
    else if (ends_with(w, "ss")) {}
    else if (ends_with(w, "s")) w.resize(w.size() - 1);

    // Step 1b
    bool step1b_extra = false;
    if (ends_with(w, "eed")) {
        if (measure(w, w.size() - 3) > 0) w.resize(w.size() - 1);
    } else if (ends_with(w, "ed") && has_vowel(w, w.size() - 2)) {
        w.resize(w.size() - 2);
        step1b_extra = true;
    } else if (ends_with(w, "ing") && has_vowel(w, w.size() - 3)) {
        w.resize(w.size() - 3);
        step1b_extra = true;
    }
    if (step1b_extra) {
        if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
            w += "e";
        } else if (double_consonant(w) && !ends_with(w, "l") && !ends_with(w, "s") &&
                   !ends_with(w, "z")) {
            w.resize(w.size() - 1);
        } else if (measure(w, w.size()) == 1 && cvc(w)) {
            w += "e";
        }
    }

    // Step 1c
    if (ends_with(w, "y") && has_vowel(w, w.size() - 1)) w[w.size() - 1] = 'i';

    // Step 2
    static const std::pair<std::string_view, std::string_view> step2[] = {
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
        {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
    };
    for (const auto& [suffix, repl] : step2)
        if (replace_if(w, suffix, repl, 0)) break;

    // Step 3
    static const std::pair<std::string_view, std::string_view> step3[] = {
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    };
    for (const auto& [suffix, repl] : step3)
        if (replace_if(w, suffix, repl, 0)) break;

    // Step 4
    static const std::string_view step4[] = {
        "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement", "ment",
        "ent", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
    };
    bool consumed = false;
    if (ends_with(w, "ion")) {
        size_t stem_len = w.size() - 3;
        if (stem_len > 0 && (w[stem_len - 1] == 's' || w[stem_len - 1] == 't') &&
            measure(w, stem_len) > 1) {
            w.resize(stem_len);
        }
        consumed = true;
    }
    if (!consumed) {
        for (auto suffix : step4) {
            if (ends_with(w, suffix)) {
                size_t stem_len = w.size() - suffix.size();
                if (measure(w, stem_len) > 1) w.resize(stem_len);
                break;
            }
        }
    }

    // Step 5a
    if (ends_with(w, "e")) {
        size_t stem_len = w.size() - 1;
        int m = measure(w, stem_len);
        if (m > 1) {
            w.resize(stem_len);
        } else if (m == 1) {
            std::string stem = w.substr(0, stem_len);
            if (!cvc(stem)) w.resize(stem_len);
        }
    }

    // Step 5b
    if (measure(w, w.size()) > 1 && double_consonant(w) && ends_with(w, "l"))
        w.resize(w.size() - 1);

    return w;
}

}  // namespace telcokit::evalkit
