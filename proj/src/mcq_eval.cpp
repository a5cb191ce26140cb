#include "telcokit/mcq_eval.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "telcokit/prompts.hpp"
#include "telcokit/text.hpp"

namespace telcokit::evalkit {

namespace {

bool is_letter_word(const std::string& tok, const std::set<char>& allowed, char& letter) {
    std::string core;
    for (char c : tok)
        if (std::isalnum(static_cast<unsigned char>(c))) core.push_back(c);
    if (core.size() != 1 || !allowed.count(core[0])) return false;
    letter = core[0];
    return true;
}

ExtractionResult parsed(std::set<char> letters) {
    ExtractionResult out;
    out.status = ExtractionStatus::kParsed;
    out.letters = std::move(letters);
    return out;
}

// Reads a run of allowed letters from `words` starting at `i`, joined by
// "," / "and" / "or" words ("a, c and d" style). Returns the letters seen.
std::set<char> read_letter_list(const std::vector<std::string>& words, size_t i,
                                const std::set<char>& allowed) {
    std::set<char> letters;
    bool expect_letter = true;
    while (i < words.size()) {
        char letter = 0;
        if (is_letter_word(words[i], allowed, letter)) {
            letters.insert(letter);
            expect_letter = false;
            ++i;
            continue;
        }
        std::string bare;
        for (char c : words[i])
            if (std::isalpha(static_cast<unsigned char>(c)))
                bare.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        if (!expect_letter && (bare == "and" || bare == "or" || words[i] == ",")) {
            expect_letter = true;
            ++i;
            continue;
        }
        break;
    }
    return letters;
}

std::vector<std::string> rough_words(const std::string& text) {
    // Whitespace split, but keep a trailing comma as its own token so letter
    // lists like "a, c" survive the tokenization.
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        while (!tok.empty() && tok.back() == ',') {
            tok.pop_back();
            if (!tok.empty()) out.push_back(tok);
            out.push_back(",");
            tok.clear();
            in >> tok;
        }
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

}  // namespace

ExtractionResult extract_choice_letters(std::string_view text, const std::set<char>& allowed) {
    if (allowed.empty()) throw std::invalid_argument("allowed letter set is empty");
    std::string lower = to_lower(std::string(text));

    // Family 1: reply leads with "x." / "x)" (optionally quoted or bracketed).
    {
        size_t i = 0;
        while (i < lower.size() &&
               (std::isspace(static_cast<unsigned char>(lower[i])) || lower[i] == '"' ||
                lower[i] == '\'' || lower[i] == '(' || lower[i] == '[' || lower[i] == '*'))
            ++i;
        if (i + 1 < lower.size() && allowed.count(lower[i]) &&
            (lower[i + 1] == '.' || lower[i + 1] == ')' || lower[i + 1] == ']' ||
             lower[i + 1] == ':'))
            return parsed({lower[i]});
    }

    auto words = rough_words(lower);

    // Family 2: "answer is x" / "answer: x" / "answers are a and c".
    for (size_t i = 0; i < words.size(); ++i) {
        std::string bare;
        for (char c : words[i])
            if (std::isalpha(static_cast<unsigned char>(c))) bare.push_back(c);
        if (bare != "answer" && bare != "answers") continue;
        size_t j = i + 1;
        bool had_colon = !words[i].empty() && words[i].back() == ':';
        while (j < words.size()) {
            std::string link;
            for (char c : words[j])
                if (std::isalpha(static_cast<unsigned char>(c))) link.push_back(c);
            if (link == "is" || link == "are" || (!had_colon && words[j] == ":")) {
                ++j;
                had_colon = true;
                continue;
            }
            break;
        }
        auto letters = read_letter_list(words, j, allowed);
        if (!letters.empty()) return parsed(std::move(letters));
    }

    // Family 3: a line that is nothing but one allowed letter.
    {
        std::istringstream in(lower);
        std::string line;
        while (std::getline(in, line)) {
            std::string core;
            for (char c : line)
                if (std::isalnum(static_cast<unsigned char>(c))) core.push_back(c);
            if (core.size() == 1 && allowed.count(core[0])) return parsed({core[0]});
        }
    }

    // Family 4: bare letter lists ("both a and c are correct") — requires at
    // least two letters so lone articles never fire.
    for (size_t i = 0; i < words.size(); ++i) {
        char letter = 0;
        if (!is_letter_word(words[i], allowed, letter)) continue;
        auto letters = read_letter_list(words, i, allowed);
        if (letters.size() >= 2) return parsed(std::move(letters));
    }

    return ExtractionResult{};
}

ExtractionResult fallback_extract(std::string_view text, const std::set<char>& allowed,
                                  llm::ChatClient& client, const std::string& model) {
    std::string allowed_str;
    for (char c : allowed) {
        if (!allowed_str.empty()) allowed_str += ", ";
        allowed_str.push_back(c);
    }
    llm::ChatRequest request;
    request.model = model;
    request.user = prompts::builtin("letter_extraction")
                       .render({{"allowed", allowed_str}, {"response", std::string(text)}});
    request.temperature = 0.0;
    try {
        auto response = client.chat(request);
        auto result = extract_choice_letters(response.text, allowed);
        if (result.status != ExtractionStatus::kParsed)
            result.status = ExtractionStatus::kUnparseable;
        return result;
    } catch (const llm::TransportError&) {
        ExtractionResult out;
        out.status = ExtractionStatus::kUnparseable;
        return out;
    }
}

double score_mcq(const ExtractionResult& pred, const std::set<char>& gold, bool jaccard_credit) {
    if (gold.empty()) throw std::invalid_argument("gold letter set is empty");
    if (pred.status != ExtractionStatus::kParsed) return 0.0;
    if (!jaccard_credit) return pred.letters == gold ? 1.0 : 0.0;
    std::set<char> inter, uni;
    std::set_intersection(pred.letters.begin(), pred.letters.end(), gold.begin(), gold.end(),
                          std::inserter(inter, inter.begin()));
    std::set_union(pred.letters.begin(), pred.letters.end(), gold.begin(), gold.end(),
                   std::inserter(uni, uni.begin()));
    return uni.empty() ? 0.0 : static_cast<double>(inter.size()) / static_cast<double>(uni.size());
}

}  // namespace telcokit::evalkit
