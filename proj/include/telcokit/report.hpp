#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "telcokit/judge.hpp"
#include "telcokit/llm_client.hpp"
#include "telcokit/metrics.hpp"

namespace telcokit::evalkit {

// Context values from the reference telco evaluation sets; reported in the
// markdown footer, never used as test targets.
inline constexpr double kReferenceQaMeanWords = 6.79;
inline constexpr double kReferenceAbstractMeanWords = 174.0;

struct MetricRow {
    std::string id;
    std::map<std::string, double> metrics;
    std::string note;  // e.g. judge error detail; empty when clean
};

struct MetricReport {
    std::string task;
    std::string model;
    std::string dataset;
    std::string tokenizer;
    std::vector<MetricRow> rows;
    std::map<std::string, double> aggregates;  // arithmetic means over scored rows
    size_t judge_errors = 0;   // rows excluded from the MOS mean
    size_t filtered_out = 0;   // abstract inputs at/over the token limit

    nlohmann::json to_json() const;
    std::string to_markdown() const;
};

struct EvalConfig {
    std::string task;  // "mcq" | "open_qa" | "abstract_gen"
    std::string tokenizer = "whitespace";
    std::string model_label = "model";
    std::string dataset_label = "dataset";
    bool use_judge = false;
    JudgeConfig judge;
    bool use_fallback = false;  // LLM second-chance letter extraction
    std::string fallback_model = "gpt-3.5-turbo";
    bool jaccard_credit = false;
    size_t max_input_tokens = 3000;  // abstract task keeps inputs below this
};

// Gold/prediction records are JSON objects sharing an "id". MCQ gold carries
// "letters" (string or array) and optionally "allowed"; text tasks carry
// "text"; the abstract task optionally carries "input" or "input_tokens" for
// length filtering. Ids must align 1:1 or the call throws listing orphans.
MetricReport evaluate_records(const EvalConfig& config,
                              const std::vector<nlohmann::json>& gold,
                              const std::vector<nlohmann::json>& predictions,
                              llm::ChatClient* client = nullptr);

// Same, reading gold and prediction JSON-Lines files.
MetricReport evaluate_task(const EvalConfig& config, const std::string& gold_path,
                           const std::string& predictions_path,
                           llm::ChatClient* client = nullptr);

// Token-weighted corpus perplexity over a logprob JSON-Lines file
// ({id, logprobs: [...]}) as a one-aggregate report.
MetricReport perplexity_report(const EvalConfig& config, const std::string& logprob_path);

// Model x dataset markdown grid for one aggregate metric. Refuses to mix
// reports produced under different tokenizers.
std::string grid_markdown(const std::vector<MetricReport>& reports, const std::string& metric);

}  // namespace telcokit::evalkit
