#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "telcokit/document.hpp"
#include "telcokit/filters.hpp"
#include "telcokit/text.hpp"

namespace telcokit::refine {

struct DuplicateEntry {
    std::string dropped_id;
    std::string kept_id;
    std::string kind;  // "exact" or "fuzzy"
    double jaccard = -1.0;  // verified Jaccard for fuzzy entries
};

struct DedupResult {
    std::vector<DocumentRecord> kept;
    std::vector<DuplicateEntry> report;
};

// First occurrence wins under stable input order. Content is normalized
// (lowercase, collapsed whitespace) and compared by 128-bit digest.
DedupResult exact_dedup(const std::vector<DocumentRecord>& docs);

struct MinHashSignature {
    std::vector<uint64_t> slots;  // exactly k minima
    uint32_t shingle_words = 0;
};

struct MinHashConfig {
    uint32_t num_slots = 128;    // k
    uint32_t shingle_words = 5;  // n
    uint32_t bands = 16;
    uint32_t rows_per_band = 8;
    uint64_t seed = 0x7e1c0;
    double threshold = 0.8;

    void validate() const;  // bands*rows == slots, k >= 16, threshold in (0,1]
};

// Word n-gram shingle hashes. A text with fewer than n words yields the
// whole text as a single shingle.
std::vector<uint64_t> shingle_hashes(std::string_view text, uint32_t shingle_words);

MinHashSignature minhash_signature(std::string_view text, const MinHashConfig& config);

// Matching-slot fraction; unbiased Jaccard estimate.
double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b);

// Exact Jaccard over the two shingle-hash sets.
double shingle_jaccard(std::string_view a, std::string_view b, uint32_t shingle_words);

// Batch signature kernels. The parallel version uses OpenMP when enabled
// and always produces the same output as the serial reference.
std::vector<MinHashSignature> minhash_signatures_serial(
    const std::vector<DocumentRecord>& docs, const MinHashConfig& config);
std::vector<MinHashSignature> minhash_signatures(
    const std::vector<DocumentRecord>& docs, const MinHashConfig& config);

// LSH candidate generation banded over the signatures, followed by exact
// shingle-Jaccard verification against config.threshold. First-seen doc of
// each near-duplicate cluster is kept. Expects exact_dedup upstream.
DedupResult fuzzy_dedup(const std::vector<DocumentRecord>& docs, const MinHashConfig& config);

}  // namespace telcokit::refine
