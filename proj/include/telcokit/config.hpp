#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace telcokit::cli {

// Flat JSON config with per-stage sections. Unknown sections or keys are
// rejected; each stage validates its own required keys when it runs.
struct PipelineConfig {
    uint64_t seed = 0;
    std::string work_dir = "out";
    nlohmann::json sections;  // object: ingest/refine/dsir/instructgen/pack/eval/llm

    // Raw parsed config including seed and work_dir; digest input.
    nlohmann::json raw;

    static PipelineConfig load(const std::string& path,
                               const std::vector<std::string>& overrides = {});
    static PipelineConfig from_json(nlohmann::json j,
                                    const std::vector<std::string>& overrides = {});

    // Section accessor; returns an empty object when the section is absent.
    nlohmann::json section(const std::string& name) const;

    // Throws std::invalid_argument when `section` lacks any of `keys`.
    void require_keys(const std::string& section, const std::vector<std::string>& keys) const;

    std::string digest() const;  // content digest of the effective config
};

// Applies one "section.key=value" override; the value is parsed as JSON when
// possible and treated as a string otherwise.
void apply_override(nlohmann::json& config, const std::string& assignment);

}  // namespace telcokit::cli
