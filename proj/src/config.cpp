#include "telcokit/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include "telcokit/text.hpp"

namespace telcokit::cli {

namespace {

const std::set<std::string> kTopLevelKeys = {
    "seed", "work_dir", "ingest", "refine", "dsir", "instructgen", "pack", "eval", "llm",
};

const std::map<std::string, std::set<std::string>> kSectionKeys = {
    {"ingest", {"input", "format", "tokenizer"}},
    {"refine",
     {"min_words", "max_words", "min_alpha_ratio", "max_punct_ratio", "allowed_languages",
      "min_language_confidence", "drop_uppercase_stubs", "drop_symbol_heavy_lines",
      "drop_repeated_lines", "fuzzy_threshold", "quality", "quality_model",
      "max_error_fraction"}},
    {"dsir", {"target", "buckets", "alpha", "k", "with_noise"}},
    {"instructgen",
     {"model", "domain", "heading_prefix", "min_words", "max_words", "min_output_chars"}},
    {"pack", {"block_size", "tokenizer"}},
    {"eval",
     {"task", "gold", "predictions", "logprobs", "tokenizer", "model_label", "dataset_label",
      "use_judge", "judge_model", "use_fallback", "fallback_model", "jaccard_credit",
      "max_input_tokens"}},
    {"llm", {"mock", "mock_template", "base_url", "path", "api_key_env", "max_retries",
             "cache_dir"}},
};

void reject_unknown_keys(const nlohmann::json& config) {
    for (const auto& [key, value] : config.items()) {
        if (!kTopLevelKeys.count(key))
            throw std::invalid_argument("unknown config key: " + key);
        auto section = kSectionKeys.find(key);
        if (section == kSectionKeys.end()) continue;
        if (!value.is_object())
            throw std::invalid_argument("config section must be an object: " + key);
        for (const auto& [sub, ignored] : value.items())
            if (!section->second.count(sub))
                throw std::invalid_argument("unknown config key: " + key + "." + sub);
    }
}

}  // namespace

void apply_override(nlohmann::json& config, const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("override must be key=value: " + assignment);
    std::string key = assignment.substr(0, eq);
    std::string value = assignment.substr(eq + 1);

    nlohmann::json parsed = nlohmann::json::parse(value, nullptr, false);
    if (parsed.is_discarded()) parsed = value;

    nlohmann::json* target = &config;
    size_t pos = 0;
    while (true) {
        auto dot = key.find('.', pos);
        std::string part = key.substr(pos, dot == std::string::npos ? std::string::npos
                                                                    : dot - pos);
        if (part.empty()) throw std::invalid_argument("bad override key: " + key);
        if (dot == std::string::npos) {
            (*target)[part] = parsed;
            break;
        }
        target = &(*target)[part];
        pos = dot + 1;
    }
}

PipelineConfig PipelineConfig::from_json(nlohmann::json j,
                                         const std::vector<std::string>& overrides) {
    if (!j.is_object()) throw std::invalid_argument("config root must be a JSON object");
    for (const auto& assignment : overrides) apply_override(j, assignment);
    reject_unknown_keys(j);

    PipelineConfig out;
    out.raw = j;
    out.seed = j.value("seed", uint64_t{0});
    out.work_dir = j.value("work_dir", std::string("out"));
    out.sections = nlohmann::json::object();
    for (const auto& [key, value] : j.items())
        if (key != "seed" && key != "work_dir") out.sections[key] = value;
    return out;
}

PipelineConfig PipelineConfig::load(const std::string& path,
                                    const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& err) {
        throw std::invalid_argument("config parse error in " + path + ": " + err.what());
    }
    return from_json(std::move(j), overrides);
}

nlohmann::json PipelineConfig::section(const std::string& name) const {
    if (sections.contains(name)) return sections.at(name);
    return nlohmann::json::object();
}

void PipelineConfig::require_keys(const std::string& name,
                                  const std::vector<std::string>& keys) const {
    auto sec = section(name);
    for (const auto& key : keys)
        if (!sec.contains(key))
            throw std::invalid_argument("config section \"" + name +
                                        "\" missing required key: " + key);
}

std::string PipelineConfig::digest() const { return digest128(raw.dump()).hex(); }

}  // namespace telcokit::cli
