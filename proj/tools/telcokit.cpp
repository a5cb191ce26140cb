#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "telcokit/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"telcokit — telecom corpus refinement, selection, instruction synthesis, "
                 "packing, and evaluation"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;

    const std::vector<std::string> stages = {"ingest", "refine",  "select", "gen-instructions",
                                             "pack",   "eval",    "report"};
    const std::vector<std::string> help = {
        "load a JSON-Lines corpus and write the corpus manifest",
        "language/heuristic filters plus exact and fuzzy dedup",
        "importance-resampling document selection",
        "paragraph-driven instruction synthesis",
        "pack formatted instructions into fixed-size token blocks",
        "score predictions against gold data",
        "assemble the run summary from stage reports",
    };
    for (size_t i = 0; i < stages.size(); ++i) {
        auto* sub = app.add_subcommand(stages[i], help[i]);
        sub->add_option("-c,--config", config_path, "pipeline config file (JSON)")->required();
        sub->add_option("--set", overrides, "override config values, section.key=value");
    }

    CLI11_PARSE(app, argc, argv);

    std::string stage = app.get_subcommands().front()->get_name();
    telcokit::cli::PipelineConfig config;
    try {
        config = telcokit::cli::PipelineConfig::load(config_path, overrides);
    } catch (const std::invalid_argument& err) {
        std::cerr << "{\"stage\": \"" << stage << "\", \"error\": \"config\", \"detail\": "
                  << nlohmann::json(std::string(err.what())).dump() << "}\n";
        return telcokit::cli::kExitValidation;
    } catch (const std::exception& err) {
        std::cerr << "{\"stage\": \"" << stage << "\", \"error\": \"config\", \"detail\": "
                  << nlohmann::json(std::string(err.what())).dump() << "}\n";
        return telcokit::cli::kExitMissingInput;
    }

    auto result = telcokit::cli::run_stage(stage, config);
    if (result.exit_code != telcokit::cli::kExitOk) {
        std::cerr << "{\"stage\": \"" << stage << "\", \"exit\": " << result.exit_code
                  << ", \"detail\": " << nlohmann::json(result.error).dump() << "}\n";
    }
    return result.exit_code;
}
