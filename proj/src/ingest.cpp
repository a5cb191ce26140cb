#include "telcokit/ingest.hpp"

#include <filesystem>
#include <stdexcept>

namespace telcokit::ingest {

LoadResult load_documents(const std::string& path, const std::string& format_override) {
    LoadResult result;
    std::string stem = std::filesystem::path(path).stem().string();
    std::optional<Format> forced;
    if (!format_override.empty()) {
        forced = parse_format(format_override);
        if (!forced) throw std::runtime_error("unknown format label: " + format_override);
    }
    read_jsonl(
        path,
        [&](size_t lineno, nlohmann::json j) {
            try {
                DocumentRecord rec = DocumentRecord::from_json(j);
                if (rec.id.empty()) rec.id = stem + ":" + std::to_string(lineno);
                if (forced) rec.format = *forced;
                result.records.push_back(std::move(rec));
            } catch (const std::exception& e) {
                result.errors.push_back({lineno, e.what()});
            }
        },
        [&](const LineError& e) { result.errors.push_back(e); });
    return result;
}

CorpusManifest build_manifest(std::vector<DocumentRecord>& corpus, Tokenizer& tokenizer) {
    if (corpus.empty()) throw std::runtime_error("cannot build manifest of an empty corpus");
    CorpusManifest manifest;
    for (auto& rec : corpus) {
        if (!rec.token_count) rec.token_count = tokenizer.encode(rec.text).size();
        auto& entry = manifest.per_source[to_string(rec.source)];
        entry.doc_count += 1;
        entry.token_count += *rec.token_count;
        manifest.per_split_tokens[to_string(rec.split)] += *rec.token_count;
        manifest.total_docs += 1;
        manifest.total_tokens += *rec.token_count;
    }
    if (manifest.total_tokens == 0)
        throw std::runtime_error("corpus has zero tokens; proportions undefined");
    for (auto& [name, entry] : manifest.per_source) {
        entry.proportion =
            static_cast<double>(entry.token_count) / static_cast<double>(manifest.total_tokens);
    }
    return manifest;
}

}  // namespace telcokit::ingest
