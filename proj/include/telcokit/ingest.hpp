#pragma once

#include <string>
#include <vector>

#include "telcokit/document.hpp"
#include "telcokit/jsonl.hpp"
#include "telcokit/tokenizer.hpp"

namespace telcokit::ingest {

struct LoadResult {
    std::vector<DocumentRecord> records;
    std::vector<LineError> errors;
};

// Loads a JSON-Lines corpus file. Records keep file order; a record with no
// id gets "<file-stem>:<line-number>". Malformed lines are reported in
// `errors`, never silently dropped. `format_override`, when non-empty,
// replaces the per-record format field.
LoadResult load_documents(const std::string& path, const std::string& format_override = "");

// Per-source and per-split accounting over token counts. Records without a
// token_count are tokenized on the fly. Throws on an empty corpus.
CorpusManifest build_manifest(std::vector<DocumentRecord>& corpus, Tokenizer& tokenizer);

}  // namespace telcokit::ingest
