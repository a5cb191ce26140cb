#pragma once

#include <set>
#include <string>
#include <string_view>

#include "telcokit/llm_client.hpp"

namespace telcokit::evalkit {

enum class ExtractionStatus { kParsed, kNeedsFallback, kUnparseable };

struct ExtractionResult {
    ExtractionStatus status = ExtractionStatus::kNeedsFallback;
    std::set<char> letters;  // nonempty iff status == kParsed
};

// Ordered pattern cascade over a model reply: leading "x." / "x)", then
// "answer is x" / "answer: x", then a standalone letter line, then
// comma/"and" letter lists. Only letters in `allowed` count; no pattern
// firing yields kNeedsFallback.
ExtractionResult extract_choice_letters(std::string_view text, const std::set<char>& allowed);

struct McqScoreConfig {
    std::string fallback_model = "gpt-3.5-turbo";
    bool jaccard_credit = false;  // partial credit; exact-set match by default
};

// Second-chance extraction through an LLM: sends the fixed letter-extraction
// prompt and re-runs the cascade on the reply. Endpoint failure or an
// unmatched reply yields kUnparseable.
ExtractionResult fallback_extract(std::string_view text, const std::set<char>& allowed,
                                  llm::ChatClient& client,
                                  const std::string& model = "gpt-3.5-turbo");

// 1.0 iff parsed and letters equal gold exactly; unparsed rows score 0.
// With jaccard_credit, parsed rows score |pred ∩ gold| / |pred ∪ gold|.
double score_mcq(const ExtractionResult& pred, const std::set<char>& gold,
                 bool jaccard_credit = false);

}  // namespace telcokit::evalkit
