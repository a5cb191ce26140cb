#include "telcokit/quality.hpp"

#include <cctype>
#include <sstream>

#include "telcokit/prompts.hpp"
#include "telcokit/text.hpp"

namespace telcokit::refine {

namespace {
std::string first_words(const std::string& text, size_t limit) {
    auto words = split_words(text);
    if (words.size() > limit) words.resize(limit);
    std::string out;
    for (size_t i = 0; i < words.size(); ++i) {
        if (i) out.push_back(' ');
        out += words[i];
    }
    return out;
}

bool starts_with_yes(const std::string& response) {
    size_t i = 0;
    while (i < response.size() && std::isspace(static_cast<unsigned char>(response[i]))) ++i;
    if (i + 3 > response.size()) return false;
    std::string head = to_lower(response.substr(i, 3));
    if (head != "yes") return false;
    // "Yes" must be a whole word ("Yesterday" is not an answer).
    return i + 3 == response.size() ||
           !std::isalpha(static_cast<unsigned char>(response[i + 3]));
}
}  // namespace

QualityOutcome quality_classify(const DocumentRecord& doc, llm::ChatClient& client,
                                const QualityConfig& config) {
    llm::ChatRequest request;
    request.model = config.model;
    request.temperature = 0.0;
    request.user = prompts::builtin("quality_classifier")
                       .render({{"text", first_words(doc.text, config.max_prompt_words)}});
    try {
        llm::ChatResponse response = client.chat(request);
        QualityOutcome outcome;
        outcome.raw_response = response.text;
        outcome.verdict = starts_with_yes(response.text)
                              ? FilterVerdict::ok()
                              : FilterVerdict::reject(RejectReason::kLlmRejected);
        return outcome;
    } catch (const llm::TransportError& e) {
        QualityOutcome outcome;
        outcome.verdict = FilterVerdict::ok();
        outcome.deferred = true;
        outcome.raw_response = e.what();
        return outcome;
    }
}

bool needs_quality_check(const DocumentRecord& doc) {
    return doc.format == Format::kPdfText && doc.source == Source::kCommonCrawl;
}

}  // namespace telcokit::refine
