#include "telcokit/filters.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "telcokit/lang.hpp"
#include "telcokit/text.hpp"

namespace telcokit::refine {

std::string to_string(RejectReason r) {
    switch (r) {
        case RejectReason::kOk: return "ok";
        case RejectReason::kTooShort: return "too_short";
        case RejectReason::kTooLong: return "too_long";
        case RejectReason::kLowAlphaRatio: return "low_alpha_ratio";
        case RejectReason::kHighPunctRatio: return "high_punct_ratio";
        case RejectReason::kWrongLanguage: return "wrong_language";
        case RejectReason::kDuplicateExact: return "duplicate_exact";
        case RejectReason::kDuplicateFuzzy: return "duplicate_fuzzy";
        case RejectReason::kLlmRejected: return "llm_rejected";
    }
    return "ok";
}

void FilterConfig::validate() const {
    if (min_words >= max_words)
        throw std::invalid_argument("min_words must be < max_words");
    if (min_alpha_ratio < 0.0 || min_alpha_ratio > 1.0 ||
        max_punct_ratio < 0.0 || max_punct_ratio > 1.0)
        throw std::invalid_argument("ratios must lie in [0,1]");
}

FilterVerdict apply_document_filters(const DocumentRecord& doc, const FilterConfig& config) {
    config.validate();
    if (!config.allowed_languages.empty()) {
        auto guess = detect_language(doc.text);
        bool allowed =
            std::find(config.allowed_languages.begin(), config.allowed_languages.end(),
                      guess.language) != config.allowed_languages.end();
        if (!allowed || guess.confidence < config.min_language_confidence)
            return FilterVerdict::reject(RejectReason::kWrongLanguage);
    }
    size_t words = count_words(doc.text);
    if (words < config.min_words) return FilterVerdict::reject(RejectReason::kTooShort);
    if (words > config.max_words) return FilterVerdict::reject(RejectReason::kTooLong);
    if (alpha_ratio(doc.text) < config.min_alpha_ratio)
        return FilterVerdict::reject(RejectReason::kLowAlphaRatio);
    if (punct_ratio(doc.text) > config.max_punct_ratio)
        return FilterVerdict::reject(RejectReason::kHighPunctRatio);
    return FilterVerdict::ok();
}

namespace {

bool is_uppercase_stub(const std::string& line) {
    size_t alpha_words = 0;
    for (const auto& word : split_words(line)) {
        bool has_alpha = false;
        for (unsigned char c : word) {
            if (std::isalpha(c)) {
                has_alpha = true;
                if (std::islower(c)) return false;
            }
        }
        if (has_alpha) ++alpha_words;
    }
    return alpha_words >= 1 && alpha_words <= 3;
}

bool is_symbol_heavy(const std::string& line) {
    size_t other = 0, total = 0;
    for (unsigned char c : line) {
        if (std::isspace(c)) continue;
        ++total;
        if (!std::isalnum(c)) ++other;
    }
    return total > 0 && static_cast<double>(other) / static_cast<double>(total) > 0.5;
}

}  // namespace

LineFilterResult apply_line_filters(const DocumentRecord& doc, const FilterConfig& config) {
    LineFilterResult result;
    result.doc = doc;
    std::istringstream in(doc.text);
    std::ostringstream out;
    std::string line;
    std::string previous;
    bool first = true;
    bool have_previous = false;
    while (std::getline(in, line)) {
        bool drop = false;
        if (config.drop_uppercase_stubs && is_uppercase_stub(line)) drop = true;
        if (!drop && config.drop_symbol_heavy_lines && is_symbol_heavy(line)) drop = true;
        if (!drop && config.drop_repeated_lines && have_previous && line == previous) drop = true;
        if (drop) {
            ++result.removed_lines;
        } else {
            if (!first) out << "\n";
            out << line;
            first = false;
            previous = line;
            have_previous = true;
        }
    }
    result.doc.text = out.str();
    result.doc.token_count.reset();
    return result;
}

}  // namespace telcokit::refine
