#include "telcokit/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "telcokit/jsonl.hpp"
#include "telcokit/mcq_eval.hpp"
#include "telcokit/text.hpp"

namespace telcokit::evalkit {

namespace {

std::string require_id(const nlohmann::json& rec) {
    if (!rec.contains("id") || !rec.at("id").is_string())
        throw std::runtime_error("record missing string \"id\": " + rec.dump());
    return rec.at("id").get<std::string>();
}

void check_alignment(const std::vector<nlohmann::json>& gold,
                     const std::map<std::string, const nlohmann::json*>& pred_by_id) {
    std::set<std::string> gold_ids;
    std::vector<std::string> gold_only;
    for (const auto& g : gold) {
        std::string id = require_id(g);
        if (!gold_ids.insert(id).second)
            throw std::runtime_error("duplicate gold id: " + id);
        if (!pred_by_id.count(id)) gold_only.push_back(id);
    }
    std::vector<std::string> pred_only;
    for (const auto& [id, rec] : pred_by_id)
        if (!gold_ids.count(id)) pred_only.push_back(id);
    if (gold_only.empty() && pred_only.empty()) return;
    std::ostringstream msg;
    msg << "gold/prediction id mismatch;";
    if (!gold_only.empty()) {
        msg << " gold-only:";
        for (const auto& id : gold_only) msg << " " << id;
        msg << ";";
    }
    if (!pred_only.empty()) {
        msg << " prediction-only:";
        for (const auto& id : pred_only) msg << " " << id;
    }
    throw std::runtime_error(msg.str());
}

std::set<char> parse_letters(const nlohmann::json& value) {
    std::set<char> out;
    if (value.is_string()) {
        for (char c : value.get<std::string>())
            if (c >= 'a' && c <= 'z') out.insert(c);
    } else if (value.is_array()) {
        for (const auto& item : value) {
            std::string s = item.get<std::string>();
            if (s.size() == 1) out.insert(s[0]);
        }
    }
    return out;
}

std::vector<nlohmann::json> read_records_or_throw(const std::string& path) {
    auto [records, errors] = read_jsonl_all(path);
    if (!errors.empty())
        throw std::runtime_error(path + ": malformed line " +
                                 std::to_string(errors.front().line_number) + ": " +
                                 errors.front().message);
    return records;
}

void add_prf(MetricRow& row, const std::string& prefix, const PrecisionRecallF1& prf) {
    row.metrics[prefix + "_p"] = prf.precision;
    row.metrics[prefix + "_r"] = prf.recall;
    row.metrics[prefix + "_f1"] = prf.f1;
}

void fill_aggregates(MetricReport& report) {
    std::map<std::string, std::pair<double, size_t>> sums;
    for (const auto& row : report.rows)
        for (const auto& [key, value] : row.metrics) {
            sums[key].first += value;
            ++sums[key].second;
        }
    for (const auto& [key, sum] : sums)
        report.aggregates[key] = sum.first / static_cast<double>(sum.second);
}

MetricReport evaluate_mcq(const EvalConfig& config, const std::vector<nlohmann::json>& gold,
                          const std::map<std::string, const nlohmann::json*>& pred_by_id,
                          llm::ChatClient* client) {
    MetricReport report;
    for (const auto& g : gold) {
        std::string id = require_id(g);
        const auto& pred = *pred_by_id.at(id);
        if (!g.contains("letters"))
            throw std::runtime_error("mcq gold record missing \"letters\": " + id);
        std::set<char> gold_letters = parse_letters(g.at("letters"));
        std::set<char> allowed = gold_letters;
        for (char c : std::string("abcd")) allowed.insert(c);
        if (g.contains("allowed")) allowed = parse_letters(g.at("allowed"));

        std::string text = pred.value("text", "");
        auto extraction = extract_choice_letters(text, allowed);
        if (extraction.status == ExtractionStatus::kNeedsFallback && config.use_fallback &&
            client != nullptr)
            extraction = fallback_extract(text, allowed, *client, config.fallback_model);

        MetricRow row;
        row.id = id;
        row.metrics["score"] = score_mcq(extraction, gold_letters, config.jaccard_credit);
        row.metrics["parsed"] = extraction.status == ExtractionStatus::kParsed ? 1.0 : 0.0;
        if (extraction.status != ExtractionStatus::kParsed)
            row.note = extraction.status == ExtractionStatus::kNeedsFallback ? "needs_fallback"
                                                                             : "unparseable";
        report.rows.push_back(std::move(row));
    }
    fill_aggregates(report);
    if (report.aggregates.count("score"))
        report.aggregates["accuracy"] = report.aggregates.at("score");
    return report;
}

MetricReport evaluate_text_task(const EvalConfig& config, const std::vector<nlohmann::json>& gold,
                                const std::map<std::string, const nlohmann::json*>& pred_by_id,
                                llm::ChatClient* client) {
    bool abstract_task = config.task == "abstract_gen";
    MetricReport report;
    std::vector<std::string> ids, refs, cands;
    for (const auto& g : gold) {
        std::string id = require_id(g);
        if (abstract_task) {
            size_t input_tokens = 0;
            if (g.contains("input_tokens"))
                input_tokens = g.at("input_tokens").get<size_t>();
            else if (g.contains("input"))
                input_tokens = count_words(g.at("input").get<std::string>());
            if (input_tokens >= config.max_input_tokens) {
                ++report.filtered_out;
                continue;
            }
        }
        ids.push_back(id);
        refs.push_back(g.value("text", ""));
        cands.push_back(pred_by_id.at(id)->value("text", ""));
    }

    auto scores = score_text_pairs(cands, refs);
    double mos_sum = 0.0;
    size_t mos_rows = 0;
    for (size_t i = 0; i < ids.size(); ++i) {
        MetricRow row;
        row.id = ids[i];
        if (!abstract_task) {
            add_prf(row, "rouge1", scores[i].rouge1);
            add_prf(row, "rouge2", scores[i].rouge2);
            add_prf(row, "rougeL", scores[i].rougeL);
        }
        row.metrics["meteor"] = scores[i].meteor;
        row.metrics["pred_words"] = static_cast<double>(count_words(cands[i]));
        row.metrics["ref_words"] = static_cast<double>(count_words(refs[i]));
        if (config.use_judge && client != nullptr) {
            auto judged = judge_score(refs[i], cands[i], *client, config.judge);
            if (judged.ok) {
                row.metrics["mos"] = judged.score;
                mos_sum += judged.score;
                ++mos_rows;
            } else {
                ++report.judge_errors;
                row.note = "judge: " + judged.raw;
            }
        }
        report.rows.push_back(std::move(row));
    }
    fill_aggregates(report);
    if (mos_rows > 0) report.aggregates["mos"] = mos_sum / static_cast<double>(mos_rows);
    return report;
}

}  // namespace

MetricReport evaluate_records(const EvalConfig& config, const std::vector<nlohmann::json>& gold,
                              const std::vector<nlohmann::json>& predictions,
                              llm::ChatClient* client) {
    std::map<std::string, const nlohmann::json*> pred_by_id;
    for (const auto& p : predictions) {
        std::string id = require_id(p);
        if (!pred_by_id.emplace(id, &p).second)
            throw std::runtime_error("duplicate prediction id: " + id);
    }
    check_alignment(gold, pred_by_id);

    MetricReport report;
    if (config.task == "mcq")
        report = evaluate_mcq(config, gold, pred_by_id, client);
    else if (config.task == "open_qa" || config.task == "abstract_gen")
        report = evaluate_text_task(config, gold, pred_by_id, client);
    else
        throw std::invalid_argument("unknown task: " + config.task);

    report.task = config.task;
    report.model = config.model_label;
    report.dataset = config.dataset_label;
    report.tokenizer = config.tokenizer;
    return report;
}

MetricReport evaluate_task(const EvalConfig& config, const std::string& gold_path,
                           const std::string& predictions_path, llm::ChatClient* client) {
    return evaluate_records(config, read_records_or_throw(gold_path),
                            read_records_or_throw(predictions_path), client);
}

MetricReport perplexity_report(const EvalConfig& config, const std::string& logprob_path) {
    std::vector<LogProbRecord> records;
    for (const auto& rec : read_records_or_throw(logprob_path)) {
        LogProbRecord lp;
        lp.id = require_id(rec);
        for (const auto& value : rec.at("logprobs")) lp.logprobs.push_back(value.get<double>());
        records.push_back(std::move(lp));
    }
    MetricReport report;
    report.task = "perplexity";
    report.model = config.model_label;
    report.dataset = config.dataset_label;
    report.tokenizer = config.tokenizer;
    report.aggregates["perplexity"] = perplexity(records);
    return report;
}

nlohmann::json MetricReport::to_json() const {
    nlohmann::json rows_json = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json r{{"id", row.id}, {"metrics", row.metrics}};
        if (!row.note.empty()) r["note"] = row.note;
        rows_json.push_back(std::move(r));
    }
    return nlohmann::json{
        {"task", task},           {"model", model},
        {"dataset", dataset},     {"tokenizer", tokenizer},
        {"aggregates", aggregates}, {"judge_errors", judge_errors},
        {"filtered_out", filtered_out}, {"rows", rows_json},
    };
}

std::string MetricReport::to_markdown() const {
    std::ostringstream out;
    out << "# " << task << " — " << model << " on " << dataset << "\n\n";
    out << "Tokenizer: " << tokenizer << "\n\n";
    out << "| Metric | Value |\n|---|---|\n";
    for (const auto& [key, value] : aggregates) out << "| " << key << " | " << value << " |\n";
    out << "\nRows scored: " << rows.size();
    if (filtered_out > 0) out << " (" << filtered_out << " filtered by input length)";
    if (judge_errors > 0) out << "; judge errors excluded from MOS: " << judge_errors;
    out << "\n";
    if (task == "open_qa")
        out << "Reference-corpus context: telco QA answers average " << kReferenceQaMeanWords
            << " words.\n";
    if (task == "abstract_gen")
        out << "Reference-corpus context: reference abstracts average "
            << kReferenceAbstractMeanWords << " words.\n";
    return out.str();
}

std::string grid_markdown(const std::vector<MetricReport>& reports, const std::string& metric) {
    if (reports.empty()) return "";
    for (const auto& r : reports)
        if (r.tokenizer != reports.front().tokenizer)
            throw std::invalid_argument("refusing to aggregate reports across tokenizers: " +
                                        reports.front().tokenizer + " vs " + r.tokenizer);
    std::vector<std::string> models, datasets;
    for (const auto& r : reports) {
        if (std::find(models.begin(), models.end(), r.model) == models.end())
            models.push_back(r.model);
        if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end())
            datasets.push_back(r.dataset);
    }
    std::ostringstream out;
    out << "| Model |";
    for (const auto& d : datasets) out << " " << d << " |";
    out << "\n|---|";
    for (size_t i = 0; i < datasets.size(); ++i) out << "---|";
    out << "\n";
    for (const auto& m : models) {
        out << "| " << m << " |";
        for (const auto& d : datasets) {
            const MetricReport* cell = nullptr;
            for (const auto& r : reports)
                if (r.model == m && r.dataset == d) cell = &r;
            if (cell != nullptr && cell->aggregates.count(metric))
                out << " " << cell->aggregates.at(metric) << " |";
            else
                out << " — |";
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace telcokit::evalkit
