#include "telcokit/document.hpp"

#include <algorithm>
#include <sstream>

namespace telcokit {

namespace {
const std::vector<std::pair<Source, std::string>> kSourceNames = {
    {Source::k3gpp, "3gpp"},          {Source::kItu, "itu"},
    {Source::kEtsi, "etsi"},          {Source::kRfc, "rfc"},
    {Source::kAtis, "atis"},          {Source::kArxiv, "arxiv"},
    {Source::kWikipedia, "wikipedia"}, {Source::kCommonCrawl, "common_crawl"},
    {Source::kOpenWebMath, "open_web_math"},
    {Source::kStackOverflow, "stackoverflow"},
    {Source::kStackExchange, "stackexchange"},
    {Source::kOther, "other"},
};
const std::vector<std::pair<Format, std::string>> kFormatNames = {
    {Format::kHtml, "html"}, {Format::kPdfText, "pdf_text"}, {Format::kPlain, "plain"},
};
const std::vector<std::pair<Split, std::string>> kSplitNames = {
    {Split::kTrain, "train"},
    {Split::kValidationDomain, "validation_domain"},
    {Split::kValidationGeneral, "validation_general"},
    {Split::kTest, "test"},
};

template <typename E>
std::string enum_name(const std::vector<std::pair<E, std::string>>& table, E v) {
    for (const auto& [e, name] : table)
        if (e == v) return name;
    return "other";
}

template <typename E>
std::optional<E> enum_parse(const std::vector<std::pair<E, std::string>>& table,
                            const std::string& s) {
    for (const auto& [e, name] : table)
        if (name == s) return e;
    return std::nullopt;
}
}  // namespace

std::string to_string(Source s) { return enum_name(kSourceNames, s); }
std::string to_string(Format f) { return enum_name(kFormatNames, f); }
std::string to_string(Split s) { return enum_name(kSplitNames, s); }
std::optional<Source> parse_source(const std::string& s) { return enum_parse(kSourceNames, s); }
std::optional<Format> parse_format(const std::string& s) { return enum_parse(kFormatNames, s); }
std::optional<Split> parse_split(const std::string& s) { return enum_parse(kSplitNames, s); }

nlohmann::json DocumentRecord::to_json() const {
    nlohmann::json j{
        {"id", id},
        {"text", text},
        {"source", to_string(source)},
        {"format", to_string(format)},
        {"split", to_string(split)},
    };
    if (token_count) j["token_count"] = *token_count;
    return j;
}

DocumentRecord DocumentRecord::from_json(const nlohmann::json& j) {
    DocumentRecord rec;
    rec.id = j.value("id", "");
    rec.text = j.at("text").get<std::string>();
    if (j.contains("source")) {
        auto s = parse_source(j["source"].get<std::string>());
        if (!s) throw std::runtime_error("unknown source label: " + j["source"].get<std::string>());
        rec.source = *s;
    }
    if (j.contains("format")) {
        auto f = parse_format(j["format"].get<std::string>());
        if (!f) throw std::runtime_error("unknown format label: " + j["format"].get<std::string>());
        rec.format = *f;
    }
    if (j.contains("split")) {
        auto s = parse_split(j["split"].get<std::string>());
        if (!s) throw std::runtime_error("unknown split label: " + j["split"].get<std::string>());
        rec.split = *s;
    }
    if (j.contains("token_count")) rec.token_count = j["token_count"].get<uint64_t>();
    return rec;
}

nlohmann::json CorpusManifest::to_json() const {
    nlohmann::json sources = nlohmann::json::object();
    for (const auto& [name, e] : per_source) {
        sources[name] = {{"doc_count", e.doc_count},
                         {"token_count", e.token_count},
                         {"proportion", e.proportion}};
    }
    return nlohmann::json{
        {"sources", sources},
        {"split_tokens", per_split_tokens},
        {"total_docs", total_docs},
        {"total_tokens", total_tokens},
    };
}

std::string CorpusManifest::to_markdown() const {
    std::vector<std::pair<std::string, ManifestEntry>> rows(per_source.begin(), per_source.end());
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return a.second.proportion > b.second.proportion;
    });
    std::ostringstream os;
    os << "| Corpus | Proportion |\n";
    os << "|---|---|\n";
    os.setf(std::ios::fixed);
    os.precision(0);
    for (const auto& [name, e] : rows) {
        os << "| " << name << " | " << e.proportion * 100.0 << "% |\n";
    }
    return os.str();
}

}  // namespace telcokit
