#pragma once

#include <string>
#include <vector>

#include "telcokit/config.hpp"
#include "telcokit/llm_client.hpp"

namespace telcokit::cli {

// Exit codes shared by the stage runners and the CLI front-end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMissingInput = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitPartialFailure = 4;

struct StageResult {
    int exit_code = kExitOk;
    std::string error;  // structured one-line report on failure
};

// Runs one stage. Stages communicate only through JSON-Lines files under
// config.work_dir and each writes manifest_<stage>.json with the input
// digests, config digest, and seed. Valid stage names: ingest, refine,
// select, gen-instructions, pack, eval, report.
StageResult run_stage(const std::string& stage, const PipelineConfig& config);

// Builds the chat client for LLM-backed stages: a deterministic mock when
// llm.mock is true (the default), otherwise an HTTP chat-completions
// transport whose credential comes from the environment.
std::shared_ptr<llm::ChatClient> make_client(const PipelineConfig& config,
                                             const std::string& mock_default_template);

}  // namespace telcokit::cli
