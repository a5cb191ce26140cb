#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "telcokit/config.hpp"
#include "telcokit/pipeline.hpp"

using namespace telcokit::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string src_path(const std::string& rel) {
    return std::string(TELCOKIT_SOURCE_DIR) + "/" + rel;
}

PipelineConfig sample_config(const std::string& work_dir,
                             std::vector<std::string> extra_overrides = {}) {
    std::vector<std::string> overrides = {
        "work_dir=" + work_dir,
        "ingest.input=" + src_path("data/mini_corpus.jsonl"),
        "dsir.target=" + src_path("data/target_corpus.jsonl"),
        "eval.gold=" + src_path("data/eval_gold.jsonl"),
        "eval.predictions=" + src_path("data/eval_predictions.jsonl"),
    };
    for (auto& o : extra_overrides) overrides.push_back(std::move(o));
    return PipelineConfig::load(src_path("data/sample_config.json"), overrides);
}

const std::vector<std::string> kAllStages = {"ingest", "refine",  "select", "gen-instructions",
                                             "pack",   "eval",    "report"};

std::map<std::string, std::string> snapshot_dir(const std::string& dir) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        out[fs::relative(entry.path(), dir).string()] = buf.str();
    }
    return out;
}

std::string fresh_dir(const std::string& name) {
    auto dir = (fs::temp_directory_path() / name).string();
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("config loading rejects unknown keys and applies overrides") {
    json base = {{"seed", 7}, {"work_dir", "w"}, {"refine", {{"min_words", 10}}}};
    auto config = PipelineConfig::from_json(base);
    CHECK(config.seed == 7);
    CHECK(config.work_dir == "w");
    CHECK(config.section("refine").at("min_words") == 10);
    CHECK(config.section("absent").is_object());
    CHECK(config.section("absent").empty());

    json bad_top = base;
    bad_top["not_a_section"] = 1;
    CHECK_THROWS_AS(PipelineConfig::from_json(bad_top), std::invalid_argument);

    json bad_key = base;
    bad_key["refine"]["minimum_words"] = 10;
    CHECK_THROWS_AS(PipelineConfig::from_json(bad_key), std::invalid_argument);

    auto overridden = PipelineConfig::from_json(
        base, {"seed=99", "refine.min_words=32", "refine.quality=true", "work_dir=elsewhere"});
    CHECK(overridden.seed == 99);
    CHECK(overridden.work_dir == "elsewhere");
    CHECK(overridden.section("refine").at("min_words") == 32);
    CHECK(overridden.section("refine").at("quality") == true);
    CHECK(overridden.digest() != config.digest());

    CHECK_THROWS_AS(PipelineConfig::from_json(base, {"refine.bogus_key=1"}),
                    std::invalid_argument);
    CHECK_THROWS(PipelineConfig::load("/nonexistent/config.json"));

    config.require_keys("refine", {"min_words"});
    CHECK_THROWS_AS(config.require_keys("refine", {"min_words", "fuzzy_threshold"}),
                    std::invalid_argument);
}

TEST_CASE("missing stage inputs exit with code 2") {
    auto dir = fresh_dir("tk_pipe_missing");
    auto config = sample_config(dir, {"ingest.input=/nonexistent/corpus.jsonl"});
    auto result = run_stage("ingest", config);
    CHECK(result.exit_code == kExitMissingInput);
    CHECK(result.error.find("not found") != std::string::npos);

    // refine before ingest: its input file does not exist yet
    auto config2 = sample_config(fresh_dir("tk_pipe_missing2"));
    CHECK(run_stage("refine", config2).exit_code == kExitMissingInput);
    CHECK(run_stage("report", config2).exit_code == kExitMissingInput);

    CHECK(run_stage("no-such-stage", config2).exit_code == kExitValidation);
    fs::remove_all(dir);
}

TEST_CASE("pack stage rejects overlong records with exit code 3 and the id") {
    auto dir = fresh_dir("tk_pipe_overlong");
    fs::create_directories(dir);
    {
        std::ofstream out(dir + "/instructions.jsonl");
        json rec = {{"instruction", "short"}, {"input", ""}, {"output", "fits"},
                    {"meta", {{"id", "ok-record"}}}};
        out << rec.dump() << "\n";
        std::string big;
        for (int i = 0; i < 100; ++i) big += "word" + std::to_string(i) + " ";
        json overlong = {{"instruction", "too much"}, {"input", ""}, {"output", big},
                         {"meta", {{"id", "bloated-record"}}}};
        out << overlong.dump() << "\n";
    }
    auto config = sample_config(dir, {"pack.block_size=16"});
    auto result = run_stage("pack", config);
    CHECK(result.exit_code == kExitValidation);
    CHECK(result.error.find("bloated-record") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("eval stage surfaces id misalignment as a validation failure") {
    auto dir = fresh_dir("tk_pipe_evalmis");
    fs::create_directories(dir);
    auto gold_path = dir + "/gold.jsonl";
    auto pred_path = dir + "/pred.jsonl";
    {
        std::ofstream gold(gold_path);
        gold << json{{"id", "q1"}, {"letters", "a"}}.dump() << "\n";
        gold << json{{"id", "orphan-gold"}, {"letters", "b"}}.dump() << "\n";
        std::ofstream pred(pred_path);
        pred << json{{"id", "q1"}, {"text", "a."}}.dump() << "\n";
    }
    auto config = sample_config(dir, {"eval.gold=" + gold_path,
                                      "eval.predictions=" + pred_path});
    auto result = run_stage("eval", config);
    CHECK(result.exit_code == kExitValidation);
    CHECK(result.error.find("orphan-gold") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("full pipeline runs clean on the bundled corpus and is deterministic") {
    auto dir = fresh_dir("tk_pipe_det");
    auto config = sample_config(dir);
    for (const auto& stage : kAllStages) {
        auto result = run_stage(stage, config);
        INFO("stage " << stage << ": " << result.error);
        REQUIRE(result.exit_code == kExitOk);
    }

    // spot-check key artifacts exist and look sane
    for (const char* name : {"ingested.jsonl", "refined.jsonl", "selected.jsonl",
                             "weights.jsonl", "blocks.jsonl", "eval_report.json",
                             "summary.md", "manifest_ingest.json", "manifest_eval.json"})
        CHECK(fs::exists(dir + "/" + name));

    {
        std::ifstream in(dir + "/eval_report.json");
        json report = json::parse(in);
        CHECK(report.at("task") == "mcq");
        CHECK(report.at("aggregates").contains("accuracy"));
    }
    {
        std::ifstream in(dir + "/manifest_select.json");
        json manifest = json::parse(in);
        CHECK(manifest.at("stage") == "select");
        CHECK(manifest.at("seed") == 1234);
        CHECK(manifest.at("config_digest").is_string());
        CHECK(!manifest.at("inputs").empty());
    }

    auto first = snapshot_dir(dir);
    REQUIRE(!first.empty());

    // identical config, fresh directory at the same path: bytes must match
    fs::remove_all(dir);
    for (const auto& stage : kAllStages)
        REQUIRE(run_stage(stage, config).exit_code == kExitOk);
    auto second = snapshot_dir(dir);

    REQUIRE(first.size() == second.size());
    for (const auto& [name, bytes] : first) {
        INFO("file: " << name);
        REQUIRE(second.count(name) == 1);
        CHECK(second.at(name) == bytes);
    }
    fs::remove_all(dir);
}
