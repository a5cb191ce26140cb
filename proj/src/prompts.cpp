#include "telcokit/prompts.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace telcokit {

std::string PromptTemplate::render(const std::map<std::string, std::string>& bindings) const {
    std::string out;
    out.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '{') {
            if (i + 1 < text.size() && text[i + 1] == '{') {
                out.push_back('{');
                i += 2;
                continue;
            }
            size_t close = text.find('}', i + 1);
            if (close == std::string::npos)
                throw std::invalid_argument("unterminated placeholder in template " + name);
            std::string key = text.substr(i + 1, close - i - 1);
            auto it = bindings.find(key);
            if (it == bindings.end())
                throw std::invalid_argument("unbound placeholder {" + key + "} in template " + name);
            out += it->second;
            i = close + 1;
            continue;
        }
        if (c == '}' && i + 1 < text.size() && text[i + 1] == '}') {
            out.push_back('}');
            i += 2;
            continue;
        }
        out.push_back(c);
        ++i;
    }
    return out;
}

namespace prompts {

namespace {

const char* kQualityClassifier =
R"(You are familiar with the Telecommunication industry and Telecommunication topics such as 4G/5G/6G, RAN, Internet of Things, IP, Network, Network Protocols, Wireless Communication, Broadband Technologies etc.
Determine if the following text is high-quality, understandable, and relevant to the Telecommunication industry/domain. Please answer with single Yes/No only.
If you are not sure, answer No:
{text})";

const char* kInstructionGeneration =
R"(You are specialized in Telecommunication domain. You are familiar with topics like 5G, RAN, Wireless communication, etc as well as technical Telco standards, specifications such as 3GPP, ITU, RFC, etc.
You are given a paragraph in a {domain} document, delimited by triple quotes. Your task is to transform it into a task instruction with JSON format as follows:
{{"instruction": "...", "input"(input or context of the instruction): "...", "output": "..."}}
Instruction types could be question-answering, open-ended generation, classification, comparison, editing, etc. The instruction/input/output must be clear, in other words, they must contain all relevant context/passages in the target paragraph needed to interpret them. Ensure that they do not mention implicit information, such as figures, tables, annexes, other sections in the document, etc. For example, do not write texts like "in Table 1", "Section I provides", etc. Not all instructions require input. For example, when a instruction asks about some general information, "what is 5G ?", it is not necessary to provide a specific context. In this case, leave the input field empty.
Two instruction examples in general domain are:


{demo_1}


{demo_2}


Here is the paragraph. Please stick to the its content; do not make up information, and adhere to the given instruction format. Only write JSON format, do not explain more. If you don't find any useful instruction in the document, write "{{}}":
"""
{paragraph}
""")";

const char* kOutputExpansion =
R"(You are specialized in Telecommunication domain. You are familiar with topics like 5G, RAN, Wireless Communication, etc as well as technical Telco standards, specifications such as 3GPP, ITU, RFC, etc.
You are given a question and a corresponding piece of text pertaining to {domain} domain. Based on this information, your task is to produce a detailed answer for the question. You should provide explanations where needed, ensuring that the response accurately addresses the question while also being easy to comprehend.
The question is:
"""
{question}
"""
And the text is:
"""
{context}
"""
Please only write the answer.)";

const char* kCotExplanation =
R"(You are specialized in Telecommunication domain. You are familiar with topics like 5G, RAN, Wireless Communication, etc as well as technical Telco standards, specifications such as 3GPP, ITU, RFC, etc.
You are given a multiple-choice question and the correct answer. Your task is to produce a concise and correct explanation that help to reach this answer. Please be honest, if you are not sure how to explain, just write: I don't know. Do not make up.
The question is:
"""
{question}
"""
And the correct answer is:
"""
{answer}
"""
Please remember to conclude the correct answer in your explanation.)";

const char* kMcqGeneration =
R"("Generate a QCM with a set of questions, 5 options per question (a,b,c,d,e) and 1 answer per question (the letter corresponding to the right option) from this content: {content}.
Return a json containing the questions, options and answers.")";

const char* kJudgeRubric =
R"("Given the provided reference answer and the following predicted answer, assess the predicted answer's relevance to the reference answer. Rate the relevance on a scale from 1 to 5, with 1 indicating minimal accuracy and relevance, and 5 indicating maximum accuracy and relevance. Here's a brief guideline for each score:
1: The predicted answer has almost no relation to the reference answer. It either misses the topic entirely or provides incorrect information or is too long compared to the original answer.
2: The predicted answer is somewhat related to the reference answer but includes significant inaccuracies and is long compared to the original answer.
3: The predicted answer is moderately accurate and relevant, capturing the essence of the reference answer but containing minor inaccuracies.
4: The predicted answer is very relevant and accurate, it goes straight to the point, with only negligible omissions or inaccuracies.
5: The predicted answer perfectly aligns with the reference answer, it goes straight to the point, showcasing complete accuracy and relevance without any noticeable flaws.

Reference Answer: {output}
Predicted Answer: {prediction}")";

const char* kLetterExtraction =
R"(You will be given a model's answer to a multiple-choice question. Extract the answer letter or letters the model chose, out of the allowed letters {allowed}. Reply with the letters only, separated by commas, and nothing else. If no choice can be identified, reply with: none.
Model answer:
"""
{response}
""")";

PromptTemplate make(const std::string& name, const char* text,
                    std::set<std::string> required) {
    return PromptTemplate{name, text, std::move(required)};
}

}  // namespace

std::map<std::string, PromptTemplate> all_builtins() {
    std::map<std::string, PromptTemplate> out;
    out.emplace("quality_classifier", make("quality_classifier", kQualityClassifier, {"text"}));
    out.emplace("instruction_generation",
                make("instruction_generation", kInstructionGeneration,
                     {"domain", "demo_1", "demo_2", "paragraph"}));
    out.emplace("output_expansion",
                make("output_expansion", kOutputExpansion, {"domain", "question", "context"}));
    out.emplace("cot_explanation",
                make("cot_explanation", kCotExplanation, {"question", "answer"}));
    out.emplace("mcq_generation", make("mcq_generation", kMcqGeneration, {"content"}));
    out.emplace("judge_rubric", make("judge_rubric", kJudgeRubric, {"output", "prediction"}));
    out.emplace("letter_extraction",
                make("letter_extraction", kLetterExtraction, {"allowed", "response"}));
    return out;
}

const PromptTemplate& builtin(const std::string& name) {
    static const std::map<std::string, PromptTemplate> templates = all_builtins();
    auto it = templates.find(name);
    if (it == templates.end()) throw std::out_of_range("unknown prompt template: " + name);
    return it->second;
}

PromptTemplate load_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open template file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    PromptTemplate tmpl;
    tmpl.name = std::filesystem::path(path).stem().string();
    tmpl.text = buf.str();
    // Required set is discovered from the text itself.
    const std::string& t = tmpl.text;
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] != '{') continue;
        if (i + 1 < t.size() && t[i + 1] == '{') { ++i; continue; }
        size_t close = t.find('}', i + 1);
        if (close == std::string::npos) break;
        tmpl.required.insert(t.substr(i + 1, close - i - 1));
        i = close;
    }
    return tmpl;
}

}  // namespace prompts
}  // namespace telcokit
