#include "telcokit/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "telcokit/dedup.hpp"
#include "telcokit/dsir.hpp"
#include "telcokit/filters.hpp"
#include "telcokit/ingest.hpp"
#include "telcokit/instructgen.hpp"
#include "telcokit/jsonl.hpp"
#include "telcokit/pack.hpp"
#include "telcokit/quality.hpp"
#include "telcokit/report.hpp"
#include "telcokit/text.hpp"
#include "telcokit/tokenizer.hpp"

namespace fs = std::filesystem;

namespace telcokit::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

class MissingInputError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class PartialFailureError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string require_file(const std::string& path, const std::string& what) {
    if (path.empty() || !fs::exists(path))
        throw MissingInputError(what + " not found: " + (path.empty() ? "<unset>" : path));
    return path;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << content;
}

void write_stage_manifest(const std::string& stage, const PipelineConfig& config,
                          const std::vector<std::string>& inputs,
                          const std::vector<std::string>& outputs) {
    nlohmann::json input_digests = nlohmann::json::object();
    for (const auto& path : inputs) input_digests[path] = digest128(read_file(path)).hex();
    nlohmann::json manifest{
        {"stage", stage},
        {"seed", config.seed},
        {"config_digest", config.digest()},
        {"inputs", input_digests},
        {"outputs", outputs},
        {"versions", {{"telcokit", kVersion}}},
    };
    write_file(config.work_dir + "/manifest_" + stage + ".json", manifest.dump(2) + "\n");
}

std::vector<DocumentRecord> read_documents(const std::string& path) {
    std::vector<DocumentRecord> docs;
    auto [records, errors] = read_jsonl_all(path);
    if (!errors.empty())
        throw std::invalid_argument(path + ": malformed line " +
                                    std::to_string(errors.front().line_number));
    docs.reserve(records.size());
    for (const auto& rec : records) docs.push_back(DocumentRecord::from_json(rec));
    return docs;
}

void write_documents(const std::string& path, const std::vector<DocumentRecord>& docs) {
    std::vector<nlohmann::json> rows;
    rows.reserve(docs.size());
    for (const auto& doc : docs) rows.push_back(doc.to_json());
    write_jsonl(path, rows);
}

// Long enough to clear the short-output gate so fully-mocked generation runs
// keep records instead of dropping everything.
const char* kMockGenTemplate =
    R"({"instruction": "Summarize the main technical points made in the passage.", "input": "", "output": "Deterministic mock output for request {fp}. The passage covers a telecommunication topic; this placeholder restates its main points at sufficient length for downstream packing: scope, mechanism, relevant interfaces, configuration considerations, and expected behavior under load are each described in turn."})";

void stage_ingest(const PipelineConfig& config) {
    config.require_keys("ingest", {"input"});
    auto section = config.section("ingest");
    std::string input = require_file(section.at("input").get<std::string>(), "corpus file");

    auto loaded = ingest::load_documents(input, section.value("format", ""));
    size_t total_lines = loaded.records.size() + loaded.errors.size();
    double max_error_fraction = config.section("refine").value("max_error_fraction", 0.1);
    if (total_lines == 0) throw std::invalid_argument("corpus file has no records: " + input);
    if (static_cast<double>(loaded.errors.size()) >
        max_error_fraction * static_cast<double>(total_lines))
        throw PartialFailureError(std::to_string(loaded.errors.size()) + " of " +
                                  std::to_string(total_lines) + " lines malformed in " + input);

    auto tokenizer = make_tokenizer(section.value("tokenizer", "whitespace"));
    auto manifest = ingest::build_manifest(loaded.records, *tokenizer);

    write_documents(config.work_dir + "/ingested.jsonl", loaded.records);
    std::vector<nlohmann::json> error_rows;
    for (const auto& err : loaded.errors)
        error_rows.push_back({{"line_number", err.line_number}, {"message", err.message}});
    write_jsonl(config.work_dir + "/ingest_errors.jsonl", error_rows);
    write_file(config.work_dir + "/corpus_manifest.json", manifest.to_json().dump(2) + "\n");
    write_file(config.work_dir + "/corpus_manifest.md", manifest.to_markdown());
    write_stage_manifest("ingest", config, {input},
                         {"ingested.jsonl", "ingest_errors.jsonl", "corpus_manifest.json",
                          "corpus_manifest.md"});
}

refine::FilterConfig filter_config_from(const nlohmann::json& section) {
    refine::FilterConfig fc;
    fc.min_words = section.value("min_words", fc.min_words);
    fc.max_words = section.value("max_words", fc.max_words);
    fc.min_alpha_ratio = section.value("min_alpha_ratio", fc.min_alpha_ratio);
    fc.max_punct_ratio = section.value("max_punct_ratio", fc.max_punct_ratio);
    if (section.contains("allowed_languages"))
        fc.allowed_languages = section.at("allowed_languages").get<std::vector<std::string>>();
    fc.min_language_confidence =
        section.value("min_language_confidence", fc.min_language_confidence);
    fc.drop_uppercase_stubs = section.value("drop_uppercase_stubs", fc.drop_uppercase_stubs);
    fc.drop_symbol_heavy_lines =
        section.value("drop_symbol_heavy_lines", fc.drop_symbol_heavy_lines);
    fc.drop_repeated_lines = section.value("drop_repeated_lines", fc.drop_repeated_lines);
    fc.validate();
    return fc;
}

void stage_refine(const PipelineConfig& config) {
    std::string input = require_file(config.work_dir + "/ingested.jsonl", "ingest output");
    auto section = config.section("refine");
    auto fc = filter_config_from(section);

    auto docs = read_documents(input);
    std::vector<DocumentRecord> kept;
    std::vector<nlohmann::json> rejected;
    for (const auto& doc : docs) {
        auto verdict = refine::apply_document_filters(doc, fc);
        if (!verdict.kept) {
            rejected.push_back({{"id", doc.id}, {"reason", to_string(verdict.reason)}});
            continue;
        }
        kept.push_back(refine::apply_line_filters(doc, fc).doc);
    }

    auto exact = refine::exact_dedup(kept);
    refine::MinHashConfig mh;
    mh.threshold = section.value("fuzzy_threshold", mh.threshold);
    mh.validate();
    auto fuzzy = refine::fuzzy_dedup(exact.kept, mh);

    std::vector<nlohmann::json> duplicates;
    for (const auto* report : {&exact.report, &fuzzy.report})
        for (const auto& entry : *report) {
            nlohmann::json row{{"dropped_id", entry.dropped_id},
                               {"kept_id", entry.kept_id},
                               {"kind", entry.kind}};
            if (entry.jaccard >= 0.0) row["jaccard"] = entry.jaccard;
            duplicates.push_back(std::move(row));
        }

    std::vector<DocumentRecord> final_docs;
    if (section.value("quality", false)) {
        refine::QualityConfig qc;
        qc.model = section.value("quality_model", qc.model);
        auto client = make_client(config, "Yes");
        for (const auto& doc : fuzzy.kept) {
            if (!refine::needs_quality_check(doc)) {
                final_docs.push_back(doc);
                continue;
            }
            auto outcome = refine::quality_classify(doc, *client, qc);
            if (outcome.verdict.kept)
                final_docs.push_back(doc);
            else
                rejected.push_back({{"id", doc.id}, {"reason", to_string(outcome.verdict.reason)}});
        }
    } else {
        final_docs = fuzzy.kept;
    }

    write_documents(config.work_dir + "/refined.jsonl", final_docs);
    write_jsonl(config.work_dir + "/rejected.jsonl", rejected);
    write_jsonl(config.work_dir + "/duplicates.jsonl", duplicates);
    write_stage_manifest("refine", config, {input},
                         {"refined.jsonl", "rejected.jsonl", "duplicates.jsonl"});
}

void stage_select(const PipelineConfig& config) {
    config.require_keys("dsir", {"target", "k"});
    auto section = config.section("dsir");
    std::string input = require_file(config.work_dir + "/refined.jsonl", "refine output");
    std::string target_path = require_file(section.at("target").get<std::string>(),
                                           "dsir target corpus");

    uint32_t buckets = section.value("buckets", 10000u);
    double alpha = section.value("alpha", 1.0);
    size_t k = section.at("k").get<size_t>();
    bool with_noise = section.value("with_noise", true);

    auto raw_docs = read_documents(input);
    auto target_docs = read_documents(target_path);
    auto target_model = dsir::fit_ngram_model(target_docs, buckets, alpha);
    auto raw_model = dsir::fit_ngram_model(raw_docs, buckets, alpha);
    auto weights = dsir::importance_weights(raw_docs, buckets, target_model, raw_model);
    auto selection = dsir::resample_topk(weights, k, config.seed, with_noise);

    std::vector<nlohmann::json> weight_rows;
    for (const auto& w : weights)
        weight_rows.push_back({{"id", w.id}, {"log_weight", w.log_weight}});
    write_jsonl(config.work_dir + "/weights.jsonl", weight_rows);

    std::map<std::string, const DocumentRecord*> by_id;
    for (const auto& doc : raw_docs) by_id[doc.id] = &doc;
    std::vector<DocumentRecord> selected;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& entry : selection.selected) {
        selected.push_back(*by_id.at(entry.id));
        entries.push_back(
            {{"id", entry.id}, {"log_weight", entry.log_weight}, {"key", entry.key}});
    }
    write_documents(config.work_dir + "/selected.jsonl", selected);
    write_file(config.work_dir + "/selection.json",
               nlohmann::json{{"seed", selection.seed},
                              {"truncated", selection.truncated},
                              {"entries", entries}}
                       .dump(2) +
                   "\n");
    write_stage_manifest("select", config, {input, target_path},
                         {"weights.jsonl", "selected.jsonl", "selection.json"});
}

void stage_gen_instructions(const PipelineConfig& config) {
    std::string input = require_file(config.work_dir + "/selected.jsonl", "select output");
    auto section = config.section("instructgen");
    auto gc = igen::GenConfig::defaults();
    gc.model = section.value("model", gc.model);
    gc.domain = section.value("domain", gc.domain);
    gc.heading_prefix = section.value("heading_prefix", gc.heading_prefix);
    gc.min_words = section.value("min_words", gc.min_words);
    gc.max_words = section.value("max_words", gc.max_words);
    gc.min_output_chars = section.value("min_output_chars", gc.min_output_chars);

    auto client = make_client(config, kMockGenTemplate);
    const auto& tmpl = prompts::builtin("instruction_generation");

    std::vector<nlohmann::json> instructions, gen_report;
    auto docs = read_documents(input);
    for (const auto& doc : docs) {
        auto paragraphs = igen::segment_paragraphs(doc, gc.heading_prefix);
        for (const auto& paragraph : paragraphs) {
            std::string unit_id = paragraph.doc_id + "#" + std::to_string(paragraph.index);
            auto note = [&](const std::string& status) {
                gen_report.push_back({{"unit", unit_id}, {"status", status}});
            };
            auto verdict = igen::paragraph_eligible(paragraph, gc);
            if (verdict != igen::ParagraphVerdict::kOk) {
                note(to_string(verdict));
                continue;
            }
            auto outcome = igen::generate_instruction(paragraph, tmpl, *client, gc);
            if (outcome.status != igen::GenStatus::kOk) {
                note("generation_failed");
                continue;
            }
            auto record = *outcome.record;
            record.meta["id"] = unit_id;
            auto post = igen::postfilter_instruction(record, gc);
            if (!post.kept) {
                note(post.reason);
                continue;
            }
            if (post.flagged_short) {
                auto expanded = igen::expand_short_output(record, paragraph.text, *client, gc);
                if (expanded.status == igen::ExpandStatus::kDropped) {
                    note("short_output_dropped");
                    continue;
                }
                record = expanded.record;
                record.meta["id"] = unit_id;
            }
            note("kept");
            instructions.push_back(record.to_json());
        }
    }
    write_jsonl(config.work_dir + "/instructions.jsonl", instructions);
    write_jsonl(config.work_dir + "/gen_report.jsonl", gen_report);
    write_stage_manifest("gen-instructions", config, {input},
                         {"instructions.jsonl", "gen_report.jsonl"});
}

void stage_pack(const PipelineConfig& config) {
    std::string input = require_file(config.work_dir + "/instructions.jsonl", "instructions");
    auto section = config.section("pack");
    auto tokenizer = make_tokenizer(section.value("tokenizer", "whitespace"));
    size_t block_size = section.value("block_size", pack::kDefaultBlockSize);

    auto [rows, errors] = read_jsonl_all(input);
    if (!errors.empty())
        throw std::invalid_argument(input + ": malformed line " +
                                    std::to_string(errors.front().line_number));
    std::vector<igen::InstructionRecord> records;
    for (const auto& row : rows) records.push_back(igen::InstructionRecord::from_json(row));

    auto blocks = pack::pack_blocks(records, *tokenizer, block_size);
    std::vector<nlohmann::json> block_rows;
    for (const auto& block : blocks) block_rows.push_back(block.to_json());
    write_jsonl(config.work_dir + "/blocks.jsonl", block_rows);
    write_stage_manifest("pack", config, {input}, {"blocks.jsonl"});
}

void stage_eval(const PipelineConfig& config) {
    config.require_keys("eval", {"task"});
    auto section = config.section("eval");

    evalkit::EvalConfig ec;
    ec.task = section.at("task").get<std::string>();
    ec.tokenizer = section.value("tokenizer", ec.tokenizer);
    ec.model_label = section.value("model_label", ec.model_label);
    ec.dataset_label = section.value("dataset_label", ec.dataset_label);
    ec.use_judge = section.value("use_judge", ec.use_judge);
    ec.judge.model = section.value("judge_model", ec.judge.model);
    ec.use_fallback = section.value("use_fallback", ec.use_fallback);
    ec.fallback_model = section.value("fallback_model", ec.fallback_model);
    ec.jaccard_credit = section.value("jaccard_credit", ec.jaccard_credit);
    ec.max_input_tokens = section.value("max_input_tokens", ec.max_input_tokens);

    evalkit::MetricReport report;
    std::vector<std::string> inputs;
    if (ec.task == "perplexity") {
        config.require_keys("eval", {"logprobs"});
        std::string logprobs =
            require_file(section.at("logprobs").get<std::string>(), "logprob file");
        inputs = {logprobs};
        report = evalkit::perplexity_report(ec, logprobs);
    } else {
        config.require_keys("eval", {"gold", "predictions"});
        std::string gold = require_file(section.at("gold").get<std::string>(), "gold file");
        std::string predictions =
            require_file(section.at("predictions").get<std::string>(), "prediction file");
        inputs = {gold, predictions};
        std::shared_ptr<llm::ChatClient> client;
        if (ec.use_judge || ec.use_fallback) client = make_client(config, "3");
        try {
            report = evalkit::evaluate_task(ec, gold, predictions, client.get());
        } catch (const std::runtime_error& err) {
            throw std::invalid_argument(err.what());
        }
    }

    write_file(config.work_dir + "/eval_report.json", report.to_json().dump(2) + "\n");
    write_file(config.work_dir + "/eval_report.md", report.to_markdown());
    write_stage_manifest("eval", config, inputs, {"eval_report.json", "eval_report.md"});
}

void stage_report(const PipelineConfig& config) {
    std::vector<std::string> parts = {config.work_dir + "/corpus_manifest.md",
                                      config.work_dir + "/eval_report.md"};
    std::string summary = "# Run summary\n\n";
    std::vector<std::string> found;
    for (const auto& part : parts) {
        if (!fs::exists(part)) continue;
        found.push_back(part);
        summary += read_file(part) + "\n";
    }
    if (found.empty())
        throw MissingInputError("no stage reports found under " + config.work_dir);
    write_file(config.work_dir + "/summary.md", summary);
    write_stage_manifest("report", config, found, {"summary.md"});
}

}  // namespace

std::shared_ptr<llm::ChatClient> make_client(const PipelineConfig& config,
                                             const std::string& mock_default_template) {
    auto section = config.section("llm");
    llm::ClientConfig cc;
    cc.max_retries = section.value("max_retries", cc.max_retries);
    cc.cache_dir = section.value("cache_dir", cc.cache_dir);

    if (section.value("mock", true)) {
        auto mock = std::make_shared<llm::MockScript>();
        mock->set_default_template(section.value("mock_template", mock_default_template));
        cc.sleep_fn = [](std::chrono::milliseconds) {};
        return std::make_shared<llm::ChatClient>(mock, cc);
    }
    llm::HttpEndpoint endpoint;
    endpoint.base_url = section.value("base_url", endpoint.base_url);
    endpoint.path = section.value("path", endpoint.path);
    endpoint.api_key_env = section.value("api_key_env", endpoint.api_key_env);
    if (endpoint.base_url.empty())
        throw std::invalid_argument("llm.base_url is required when llm.mock is false");
    return std::make_shared<llm::ChatClient>(std::make_shared<llm::HttpTransport>(endpoint), cc);
}

StageResult run_stage(const std::string& stage, const PipelineConfig& config) {
    StageResult result;
    try {
        fs::create_directories(config.work_dir);
        if (stage == "ingest")
            stage_ingest(config);
        else if (stage == "refine")
            stage_refine(config);
        else if (stage == "select")
            stage_select(config);
        else if (stage == "gen-instructions")
            stage_gen_instructions(config);
        else if (stage == "pack")
            stage_pack(config);
        else if (stage == "eval")
            stage_eval(config);
        else if (stage == "report")
            stage_report(config);
        else
            throw std::invalid_argument("unknown stage: " + stage);
    } catch (const MissingInputError& err) {
        result.exit_code = kExitMissingInput;
        result.error = err.what();
    } catch (const PartialFailureError& err) {
        result.exit_code = kExitPartialFailure;
        result.error = err.what();
    } catch (const pack::OverlongRecordError& err) {
        result.exit_code = kExitValidation;
        result.error = err.what();
    } catch (const std::invalid_argument& err) {
        result.exit_code = kExitValidation;
        result.error = err.what();
    } catch (const std::exception& err) {
        result.exit_code = kExitValidation;
        result.error = err.what();
    }
    return result;
}

}  // namespace telcokit::cli
