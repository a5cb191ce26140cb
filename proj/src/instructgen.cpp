#include "telcokit/instructgen.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "telcokit/text.hpp"

namespace telcokit::igen {

nlohmann::json InstructionRecord::to_json() const {
    return nlohmann::json{
        {"instruction", instruction},
        {"input", input},
        {"output", output},
        {"origin", origin},
        {"meta", meta},
    };
}

InstructionRecord InstructionRecord::from_json(const nlohmann::json& j) {
    InstructionRecord rec;
    rec.instruction = j.at("instruction").get<std::string>();
    rec.input = j.value("input", "");
    rec.output = j.at("output").get<std::string>();
    rec.origin = j.value("origin", "");
    if (j.contains("meta")) rec.meta = j["meta"].get<std::map<std::string, std::string>>();
    return rec;
}

void McqItem::validate() const {
    if (choices.size() < 4 || choices.size() > 5)
        throw std::invalid_argument("MCQ items carry 4 or 5 choices");
    if (answers.empty()) throw std::invalid_argument("MCQ item has no answers");
    for (char a : answers) {
        bool found = std::any_of(choices.begin(), choices.end(),
                                 [a](const auto& c) { return c.first == a; });
        if (!found) throw std::invalid_argument(std::string("answer letter '") + a +
                                                "' is not among the choices");
    }
}

GenConfig GenConfig::defaults() {
    GenConfig config;
    config.demo_1 =
        R"({"instruction": "Classify the sentiment of the following product review as positive, negative, or neutral.", "input": "The battery lasts two full days and the screen is bright, but the speakers are disappointing.", "output": "Neutral. The review praises the battery life and screen but criticizes the speakers, balancing positive and negative points."})";
    config.demo_2 =
        R"({"instruction": "What is photosynthesis?", "input": "", "output": "Photosynthesis is the process by which green plants, algae and some bacteria convert light energy, water and carbon dioxide into glucose and oxygen. It takes place mainly in the chloroplasts of plant cells and is the primary source of the oxygen in Earth's atmosphere."})";
    return config;
}

std::vector<ParagraphUnit> segment_paragraphs(const DocumentRecord& doc,
                                              const std::string& heading_prefix) {
    std::vector<ParagraphUnit> units;
    std::string current;
    auto flush = [&] {
        if (current.empty() && !units.empty()) return;
        ParagraphUnit unit;
        unit.doc_id = doc.id;
        unit.index = units.size();
        unit.word_count = count_words(current);
        unit.text = std::move(current);
        current.clear();
        units.push_back(std::move(unit));
    };

    size_t pos = 0;
    bool first_line = true;
    const std::string& text = doc.text;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        size_t end = eol == std::string::npos ? text.size() : eol + 1;
        std::string_view line(text.data() + pos, end - pos);
        bool is_heading = !heading_prefix.empty() &&
                          line.substr(0, heading_prefix.size()) == heading_prefix;
        if (is_heading && !first_line) flush();
        if (is_heading && first_line && !current.empty()) flush();
        current.append(line);
        first_line = false;
        pos = end;
    }
    flush();
    if (units.empty()) {
        // Empty document still yields one (empty) unit.
        ParagraphUnit unit;
        unit.doc_id = doc.id;
        units.push_back(std::move(unit));
    }
    return units;
}

std::string to_string(ParagraphVerdict v) {
    switch (v) {
        case ParagraphVerdict::kOk: return "ok";
        case ParagraphVerdict::kTooShort: return "too_short";
        case ParagraphVerdict::kTooLong: return "too_long";
        case ParagraphVerdict::kLowAlphaRatio: return "low_alpha_ratio";
        case ParagraphVerdict::kHighPunctRatio: return "high_punct_ratio";
    }
    return "ok";
}

ParagraphVerdict paragraph_eligible(const ParagraphUnit& p, const GenConfig& config) {
    if (p.word_count < config.min_words) return ParagraphVerdict::kTooShort;
    if (p.word_count > config.max_words) return ParagraphVerdict::kTooLong;
    if (punct_ratio(p.text) > config.max_punct_ratio) return ParagraphVerdict::kHighPunctRatio;
    if (alpha_ratio(p.text) < config.min_alpha_ratio) return ParagraphVerdict::kLowAlphaRatio;
    return ParagraphVerdict::kOk;
}

namespace {

// Pulls the first JSON object out of a possibly fenced / prose-wrapped
// model reply.
std::optional<nlohmann::json> extract_json_object(const std::string& raw) {
    size_t start = raw.find('{');
    while (start != std::string::npos) {
        int depth = 0;
        bool in_string = false;
        for (size_t i = start; i < raw.size(); ++i) {
            char c = raw[i];
            if (in_string) {
                if (c == '\\') ++i;
                else if (c == '"') in_string = false;
                continue;
            }
            if (c == '"') in_string = true;
            else if (c == '{') ++depth;
            else if (c == '}') {
                if (--depth == 0) {
                    nlohmann::json j =
                        nlohmann::json::parse(raw.substr(start, i - start + 1), nullptr, false);
                    if (!j.is_discarded()) return j;
                    break;
                }
            }
        }
        start = raw.find('{', start + 1);
    }
    return std::nullopt;
}

}  // namespace

GenerationOutcome generate_instruction(const ParagraphUnit& p, const PromptTemplate& tmpl,
                                       llm::ChatClient& client, const GenConfig& config) {
    GenerationOutcome outcome;
    llm::ChatRequest request;
    request.model = config.model;
    request.temperature = 0.7;
    request.user = tmpl.render({{"domain", config.domain},
                                {"demo_1", config.demo_1},
                                {"demo_2", config.demo_2},
                                {"paragraph", p.text}});
    llm::ChatResponse response;
    try {
        response = client.chat(request);
    } catch (const llm::TransportError& e) {
        outcome.status = GenStatus::kEndpointError;
        outcome.raw_response = e.what();
        return outcome;
    }
    outcome.raw_response = response.text;
    auto parsed = extract_json_object(response.text);
    if (!parsed) {
        outcome.status = GenStatus::kParseError;
        return outcome;
    }
    if (parsed->empty()) {
        outcome.status = GenStatus::kEmpty;
        return outcome;
    }
    if (!parsed->contains("instruction") || !parsed->contains("output")) {
        outcome.status = GenStatus::kParseError;
        return outcome;
    }
    InstructionRecord rec;
    rec.instruction = (*parsed)["instruction"].get<std::string>();
    rec.input = parsed->value("input", "");
    rec.output = (*parsed)["output"].get<std::string>();
    rec.origin = p.doc_id.substr(0, p.doc_id.find(':'));
    rec.meta["prompt"] = tmpl.name;
    rec.meta["model"] = config.model;
    rec.meta["source"] = p.doc_id + "#" + std::to_string(p.index);
    if (rec.instruction.empty() || rec.output.empty()) {
        outcome.status = GenStatus::kParseError;
        return outcome;
    }
    outcome.record = std::move(rec);
    return outcome;
}

const std::vector<std::string>& banned_words() {
    static const std::vector<std::string> words = {
        "figure", "table", "section", "paragraph", "clause",
        "equation", "annex", "paper", "text", "document",
    };
    return words;
}

namespace {
bool contains_word_ci(const std::string& haystack, const std::string& needle) {
    std::string h = to_lower(haystack);
    size_t pos = 0;
    while ((pos = h.find(needle, pos)) != std::string::npos) {
        bool left_ok = pos == 0 || !std::isalpha(static_cast<unsigned char>(h[pos - 1]));
        size_t end = pos + needle.size();
        bool right_ok = end >= h.size() || !std::isalpha(static_cast<unsigned char>(h[end]));
        if (left_ok && right_ok) return true;
        pos += 1;
    }
    return false;
}
}  // namespace

PostfilterResult postfilter_instruction(const InstructionRecord& rec, const GenConfig& config) {
    PostfilterResult result;
    for (const auto& word : banned_words()) {
        if (contains_word_ci(rec.instruction, word) || contains_word_ci(rec.input, word)) {
            result.kept = false;
            result.reason = "banned_word:" + word;
            return result;
        }
    }
    result.flagged_short = rec.output.size() < config.min_output_chars;
    return result;
}

ExpandOutcome expand_short_output(const InstructionRecord& rec, const std::string& paragraph,
                                  llm::ChatClient& client, const GenConfig& config) {
    PostfilterResult pre = postfilter_instruction(rec, config);
    if (!pre.flagged_short)
        throw std::logic_error("expand_short_output called on an unflagged record");

    std::string question = rec.instruction;
    if (!rec.input.empty()) question += "\n\n" + rec.input;

    llm::ChatRequest request;
    request.model = config.model;
    request.temperature = 0.0;
    request.user = prompts::builtin("output_expansion")
                       .render({{"domain", config.domain},
                                {"question", question},
                                {"context", paragraph}});
    ExpandOutcome outcome;
    outcome.record = rec;
    try {
        llm::ChatResponse response = client.chat(request);
        outcome.record.output = response.text;
    } catch (const llm::TransportError&) {
        outcome.status = ExpandStatus::kEndpointErrorKeptFlagged;
        return outcome;
    }
    PostfilterResult post = postfilter_instruction(outcome.record, config);
    if (!post.kept || post.flagged_short) {
        outcome.status = ExpandStatus::kDropped;
        return outcome;
    }
    outcome.status = ExpandStatus::kExpanded;
    outcome.record.meta["expanded"] = "true";
    return outcome;
}

namespace {
const char* kTelcoPrefix =
    "You are a helpful assistant, specialized in telecommunication technologies. ";

std::string letter_list(const McqItem& item) {
    std::string out;
    for (size_t i = 0; i < item.choices.size(); ++i) {
        if (i > 0) out += i + 1 == item.choices.size() ? ", and " : ", ";
        out.push_back(item.choices[i].first);
    }
    return out;
}

std::string rendered_choices(const McqItem& item) {
    std::string out;
    for (size_t i = 0; i < item.choices.size(); ++i) {
        if (i > 0) out += ", ";
        out.push_back(item.choices[i].first);
        out += ". ";
        out += item.choices[i].second;
    }
    return out;
}

std::string answer_letters(const McqItem& item) {
    std::string out;
    for (char a : item.answers) {
        if (!out.empty()) out += ", ";
        out.push_back(a);
    }
    return out;
}
}  // namespace

InstructionRecord mcq_to_instruction(const McqItem& item, bool domain_flavored) {
    item.validate();
    InstructionRecord rec;
    rec.instruction = std::string(domain_flavored ? kTelcoPrefix : "") + "Which of " +
                      letter_list(item) + " is the right answer to the following question?";
    rec.input = item.question + " " + rendered_choices(item);
    rec.output = answer_letters(item);
    rec.origin = item.origin;
    rec.meta["transform"] = "mcq_to_instruction";
    return rec;
}

CotOutcome mcq_to_cot_instruction(const McqItem& item, llm::ChatClient& client,
                                  const GenConfig& config) {
    item.validate();
    CotOutcome outcome;

    std::string gold_text;
    for (char a : item.answers) {
        for (const auto& [letter, text] : item.choices) {
            if (letter == a) {
                if (!gold_text.empty()) gold_text += "; ";
                gold_text += std::string(1, letter) + ". " + text;
            }
        }
    }

    llm::ChatRequest request;
    request.model = config.model;
    request.temperature = 0.0;
    request.user = prompts::builtin("cot_explanation")
                       .render({{"question", item.question + " " + rendered_choices(item)},
                                {"answer", gold_text}});
    llm::ChatResponse response;
    try {
        response = client.chat(request);
    } catch (const llm::TransportError& e) {
        outcome.status = CotOutcome::Status::kEndpointError;
        outcome.raw_response = e.what();
        return outcome;
    }
    outcome.raw_response = response.text;

    std::string lowered = to_lower(response.text);
    if (lowered.find("i don't know") != std::string::npos ||
        lowered.find("i dont know") != std::string::npos) {
        outcome.status = CotOutcome::Status::kDontKnow;
        return outcome;
    }
    // The explanation must conclude the correct answer: either the gold
    // choice text appears, or the gold letter appears as a standalone word.
    bool mentions_answer = false;
    for (char a : item.answers) {
        for (const auto& [letter, text] : item.choices) {
            if (letter != a) continue;
            if (lowered.find(to_lower(text)) != std::string::npos) mentions_answer = true;
        }
        if (contains_word_ci(response.text, std::string(1, a))) mentions_answer = true;
    }
    if (!mentions_answer) {
        outcome.status = CotOutcome::Status::kMissingAnswer;
        return outcome;
    }

    InstructionRecord rec;
    rec.instruction = std::string(kTelcoPrefix) + "Which of " + letter_list(item) +
                      " is the right answer to the following question? Explain your reasoning.";
    rec.input = item.question + " " + rendered_choices(item);
    rec.output = response.text;
    rec.origin = item.origin;
    rec.meta["transform"] = "mcq_to_cot";
    rec.meta["model"] = config.model;
    outcome.record = std::move(rec);
    return outcome;
}

std::optional<QaPair> mcq_to_openqa(const McqItem& item) {
    item.validate();
    if (item.answers.size() != 1) return std::nullopt;
    char gold = *item.answers.begin();
    QaPair pair;
    pair.question = item.question + " Answer briefly (in a few words).";
    for (const auto& [letter, text] : item.choices)
        if (letter == gold) pair.answer = text;
    return pair;
}

}  // namespace telcokit::igen
