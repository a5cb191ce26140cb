#pragma once

#include <map>
#include <set>
#include <string>

namespace telcokit {

// Text template with "{name}" placeholders. "{{" and "}}" render as literal
// braces. Rendering throws std::invalid_argument when a required placeholder
// is left unbound.
struct PromptTemplate {
    std::string name;
    std::string text;
    std::set<std::string> required;

    std::string render(const std::map<std::string, std::string>& bindings) const;
};

namespace prompts {

// Built-in templates: quality_classifier, instruction_generation,
// output_expansion, cot_explanation, mcq_generation, judge_rubric,
// letter_extraction.
const PromptTemplate& builtin(const std::string& name);
std::map<std::string, PromptTemplate> all_builtins();

// Loads "{name}"-style template files from a directory (one .txt per
// template), overriding built-ins with the same stem.
PromptTemplate load_from_file(const std::string& path);

}  // namespace prompts
}  // namespace telcokit
