#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "telcokit/document.hpp"

namespace telcokit::refine {

enum class RejectReason {
    kOk,
    kTooShort,
    kTooLong,
    kLowAlphaRatio,
    kHighPunctRatio,
    kWrongLanguage,
    kDuplicateExact,
    kDuplicateFuzzy,
    kLlmRejected,
};

std::string to_string(RejectReason r);

struct FilterVerdict {
    bool kept = true;
    RejectReason reason = RejectReason::kOk;
    static FilterVerdict ok() { return {true, RejectReason::kOk}; }
    static FilterVerdict reject(RejectReason r) { return {false, r}; }
};

struct FilterConfig {
    uint64_t min_words = 64;
    uint64_t max_words = 200000;
    double min_alpha_ratio = 0.7;
    double max_punct_ratio = 0.3;
    std::vector<std::string> allowed_languages = {"en"};
    double min_language_confidence = 0.5;

    // Line predicates, each individually switchable.
    bool drop_uppercase_stubs = true;      // all-caps nav lines of <= 3 words
    bool drop_symbol_heavy_lines = true;   // non-alphanumeric fraction > 0.5
    bool drop_repeated_lines = true;       // exact repeat of the previous line

    void validate() const;  // throws std::invalid_argument on bad bounds
};

// Document-wise checks in fixed order: language, length, alpha ratio,
// punctuation ratio. First failure wins.
FilterVerdict apply_document_filters(const DocumentRecord& doc, const FilterConfig& config);

struct LineFilterResult {
    DocumentRecord doc;
    size_t removed_lines = 0;
};

LineFilterResult apply_line_filters(const DocumentRecord& doc, const FilterConfig& config);

}  // namespace telcokit::refine
