#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "telcokit/document.hpp"

namespace telcokit::dsir {

// Hashed word unigram+bigram counts over D buckets. The hash is FNV-1a 64
// of the lowercased token text ("tok" for unigrams, "tok1\x1ftok2" for
// bigrams) reduced modulo D.
struct HashedNgramFeatures {
    uint32_t buckets = 0;  // D
    std::vector<uint64_t> counts;
    uint64_t total = 0;  // number of n-grams in the document
};

struct NgramModel {
    uint32_t buckets = 0;
    std::vector<double> probs;  // strictly positive, sums to 1
};

struct ImportanceWeight {
    std::string id;
    double log_weight = 0.0;
};

struct SelectionEntry {
    std::string id;
    double log_weight = 0.0;
    double key = 0.0;  // log_weight + Gumbel noise (or log_weight alone)
};

struct SelectionResult {
    std::vector<SelectionEntry> selected;  // descending key order
    uint64_t seed = 0;
    bool truncated = false;  // true when k exceeded the candidate count
};

HashedNgramFeatures featurize(std::string_view text, uint32_t buckets);

// Add-alpha smoothed bucket distribution over a document stream; throws on
// an empty stream or alpha <= 0. Order-invariant.
NgramModel fit_ngram_model(const std::vector<DocumentRecord>& docs, uint32_t buckets,
                           double alpha = 1.0);

// log p_target(features) - log p_raw(features), summed bucket-wise.
double importance_log_weight(const HashedNgramFeatures& features, const NgramModel& target,
                             const NgramModel& raw);

// Batch weights for a candidate stream; parallel kernel plus the serial
// reference used by tests and the benchmark.
std::vector<ImportanceWeight> importance_weights_serial(
    const std::vector<DocumentRecord>& docs, uint32_t buckets, const NgramModel& target,
    const NgramModel& raw);
std::vector<ImportanceWeight> importance_weights(
    const std::vector<DocumentRecord>& docs, uint32_t buckets, const NgramModel& target,
    const NgramModel& raw);

// Gumbel top-k: key = log_weight + Gumbel(0,1) noise from a generator
// seeded per document id, ties broken by id. with_noise=false gives the
// deterministic top-k used by oracle tests.
SelectionResult resample_topk(const std::vector<ImportanceWeight>& weights, size_t k,
                              uint64_t seed, bool with_noise = true);

}  // namespace telcokit::dsir
