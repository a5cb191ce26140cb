#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "telcokit/document.hpp"
#include "telcokit/llm_client.hpp"
#include "telcokit/prompts.hpp"

namespace telcokit::igen {

struct ParagraphUnit {
    std::string doc_id;
    size_t index = 0;
    std::string text;  // raw bytes, line terminators included
    size_t word_count = 0;
};

struct InstructionRecord {
    std::string instruction;
    std::string input;  // may be empty
    std::string output;
    std::string origin;
    std::map<std::string, std::string> meta;  // prompt id, model id, source ids

    nlohmann::json to_json() const;
    static InstructionRecord from_json(const nlohmann::json& j);
};

struct McqItem {
    std::string question;
    std::vector<std::pair<char, std::string>> choices;  // letter -> text, 4..5 entries
    std::set<char> answers;
    std::string origin;

    void validate() const;  // throws std::invalid_argument on contract breaks
};

struct GenConfig {
    std::string domain = "telecommunication";
    std::string model = "gpt-3.5-turbo";
    std::string heading_prefix = "##";  // any line starting with this opens a unit
    size_t min_words = 256;
    size_t max_words = 3092;
    double min_alpha_ratio = 0.5;
    double max_punct_ratio = 0.3;
    size_t min_output_chars = 200;
    std::string demo_1;  // two general-domain demonstrations for the
    std::string demo_2;  // generation prompt; defaults are bundled

    static GenConfig defaults();
};

// Splits a document at heading lines; the delimiter line belongs to the
// paragraph it opens. Concatenating unit texts reproduces the document
// byte-for-byte.
std::vector<ParagraphUnit> segment_paragraphs(const DocumentRecord& doc,
                                              const std::string& heading_prefix = "##");

enum class ParagraphVerdict { kOk, kTooShort, kTooLong, kLowAlphaRatio, kHighPunctRatio };
std::string to_string(ParagraphVerdict v);
ParagraphVerdict paragraph_eligible(const ParagraphUnit& p, const GenConfig& config);

enum class GenStatus { kOk, kEmpty, kParseError, kEndpointError };

struct GenerationOutcome {
    GenStatus status = GenStatus::kOk;
    std::optional<InstructionRecord> record;
    std::string raw_response;
};

// Drives the generation prompt for one paragraph and parses the JSON reply.
// Code fences and leading prose around the JSON object are tolerated; a bare
// "{}" is the model's documented way of declining and is not an error.
GenerationOutcome generate_instruction(const ParagraphUnit& p, const PromptTemplate& tmpl,
                                       llm::ChatClient& client, const GenConfig& config);

struct PostfilterResult {
    bool kept = true;
    std::string reason = "ok";       // "banned_word:<w>" when rejected
    bool flagged_short = false;      // output under min_output_chars
};

PostfilterResult postfilter_instruction(const InstructionRecord& rec,
                                        const GenConfig& config = GenConfig::defaults());

const std::vector<std::string>& banned_words();

enum class ExpandStatus { kExpanded, kDropped, kEndpointErrorKeptFlagged };

struct ExpandOutcome {
    ExpandStatus status = ExpandStatus::kExpanded;
    InstructionRecord record;
};

// One expansion attempt for a short-flagged record; a still-short result is
// dropped. Throws std::logic_error if the record was not flagged.
ExpandOutcome expand_short_output(const InstructionRecord& rec, const std::string& paragraph,
                                  llm::ChatClient& client, const GenConfig& config);

// Deterministic MCQ -> instruction transform. The question and rendered
// choices go in the input field; the directive (with the telco system prefix
// when domain_flavored) goes in the instruction field.
InstructionRecord mcq_to_instruction(const McqItem& item, bool domain_flavored);

struct CotOutcome {
    enum class Status { kOk, kDontKnow, kMissingAnswer, kEndpointError } status = Status::kOk;
    std::optional<InstructionRecord> record;
    std::string raw_response;
};

CotOutcome mcq_to_cot_instruction(const McqItem& item, llm::ChatClient& client,
                                  const GenConfig& config);

struct QaPair {
    std::string question;
    std::string answer;
};

// Single-answer MCQs only; multi-answer items are skipped.
std::optional<QaPair> mcq_to_openqa(const McqItem& item);

}  // namespace telcokit::igen
