#pragma once

#include <string>

#include "telcokit/document.hpp"
#include "telcokit/filters.hpp"
#include "telcokit/llm_client.hpp"

namespace telcokit::refine {

struct QualityConfig {
    std::string model = "zephyr-7b";
    size_t max_prompt_words = 512;
};

struct QualityOutcome {
    FilterVerdict verdict;
    bool deferred = false;  // endpoint failed; flagged, not dropped
    std::string raw_response;
};

// Yes/No relevance classification of a document via the chat endpoint.
// A response starting with "Yes" (case-insensitive) keeps the document;
// anything else rejects it. Only meant for pdf_text crawl documents; the
// pipeline stage applies that scoping.
QualityOutcome quality_classify(const DocumentRecord& doc, llm::ChatClient& client,
                                const QualityConfig& config = {});

// True when the refine pipeline should send this record to the classifier.
bool needs_quality_check(const DocumentRecord& doc);

}  // namespace telcokit::refine
