#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace telcokit {

enum class Source {
    k3gpp, kItu, kEtsi, kRfc, kAtis, kArxiv, kWikipedia, kCommonCrawl,
    kOpenWebMath, kStackOverflow, kStackExchange, kOther,
};

enum class Format { kHtml, kPdfText, kPlain };

enum class Split { kTrain, kValidationDomain, kValidationGeneral, kTest };

std::string to_string(Source s);
std::string to_string(Format f);
std::string to_string(Split s);
std::optional<Source> parse_source(const std::string& s);
std::optional<Format> parse_format(const std::string& s);
std::optional<Split> parse_split(const std::string& s);

struct DocumentRecord {
    std::string id;
    std::string text;
    Source source = Source::kOther;
    Format format = Format::kPlain;
    Split split = Split::kTrain;
    std::optional<uint64_t> token_count;

    nlohmann::json to_json() const;
    static DocumentRecord from_json(const nlohmann::json& j);
};

struct ManifestEntry {
    uint64_t doc_count = 0;
    uint64_t token_count = 0;
    double proportion = 0.0;
};

struct CorpusManifest {
    std::map<std::string, ManifestEntry> per_source;  // keyed by source label
    std::map<std::string, uint64_t> per_split_tokens;
    uint64_t total_docs = 0;
    uint64_t total_tokens = 0;

    nlohmann::json to_json() const;
    // Source/proportion table, one row per source, largest share first.
    std::string to_markdown() const;
};

}  // namespace telcokit
