#include "telcokit/dsir.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "telcokit/text.hpp"

namespace telcokit::dsir {

HashedNgramFeatures featurize(std::string_view text, uint32_t buckets) {
    if (buckets < 2) throw std::invalid_argument("bucket count must be >= 2");
    HashedNgramFeatures f;
    f.buckets = buckets;
    f.counts.assign(buckets, 0);
    auto words = word_tokens(text);
    for (size_t i = 0; i < words.size(); ++i) {
        ++f.counts[fnv1a64(words[i]) % buckets];
        ++f.total;
        if (i + 1 < words.size()) {
            uint64_t h = fnv1a64(words[i]);
            h = fnv1a64("\x1f", h);
            h = fnv1a64(words[i + 1], h);
            ++f.counts[h % buckets];
            ++f.total;
        }
    }
    return f;
}

NgramModel fit_ngram_model(const std::vector<DocumentRecord>& docs, uint32_t buckets,
                           double alpha) {
    if (docs.empty()) throw std::invalid_argument("cannot fit a model on an empty stream");
    if (alpha <= 0.0) throw std::invalid_argument("smoothing alpha must be > 0");
    std::vector<uint64_t> counts(buckets, 0);
    uint64_t total = 0;
    for (const auto& doc : docs) {
        auto f = featurize(doc.text, buckets);
        for (uint32_t b = 0; b < buckets; ++b) counts[b] += f.counts[b];
        total += f.total;
    }
    NgramModel model;
    model.buckets = buckets;
    model.probs.resize(buckets);
    double denom = static_cast<double>(total) + alpha * buckets;
    for (uint32_t b = 0; b < buckets; ++b)
        model.probs[b] = (static_cast<double>(counts[b]) + alpha) / denom;
    return model;
}

double importance_log_weight(const HashedNgramFeatures& features, const NgramModel& target,
                             const NgramModel& raw) {
    if (features.buckets != target.buckets || target.buckets != raw.buckets)
        throw std::invalid_argument("feature/model bucket counts must match");
    double log_weight = 0.0;
    for (uint32_t b = 0; b < features.buckets; ++b) {
        if (features.counts[b] == 0) continue;
        log_weight += static_cast<double>(features.counts[b]) *
                      (std::log(target.probs[b]) - std::log(raw.probs[b]));
    }
    return log_weight;
}

std::vector<ImportanceWeight> importance_weights_serial(
    const std::vector<DocumentRecord>& docs, uint32_t buckets, const NgramModel& target,
    const NgramModel& raw) {
    std::vector<ImportanceWeight> out(docs.size());
    for (size_t i = 0; i < docs.size(); ++i) {
        out[i].id = docs[i].id;
        out[i].log_weight = importance_log_weight(featurize(docs[i].text, buckets), target, raw);
    }
    return out;
}

std::vector<ImportanceWeight> importance_weights(
    const std::vector<DocumentRecord>& docs, uint32_t buckets, const NgramModel& target,
    const NgramModel& raw) {
    std::vector<ImportanceWeight> out(docs.size());
    int64_t n = static_cast<int64_t>(docs.size());
#pragma omp parallel for schedule(dynamic, 32)
    for (int64_t i = 0; i < n; ++i) {
        size_t idx = static_cast<size_t>(i);
        out[idx].id = docs[idx].id;
        out[idx].log_weight =
            importance_log_weight(featurize(docs[idx].text, buckets), target, raw);
    }
    return out;
}

namespace {
// Per-id Gumbel(0,1) draw; hashing (seed, id) keeps the perturbation
// independent of list order.
double gumbel_noise(uint64_t seed, const std::string& id) {
    uint64_t h = splitmix64(fnv1a64(id, seed ^ 0x9e3779b97f4a7c15ULL));
    // Map to (0,1) strictly, then invert the Gumbel CDF.
    double u = (static_cast<double>(h >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    return -std::log(-std::log(u));
}
}  // namespace

SelectionResult resample_topk(const std::vector<ImportanceWeight>& weights, size_t k,
                              uint64_t seed, bool with_noise) {
    if (k == 0) throw std::invalid_argument("k must be >= 1");
    SelectionResult result;
    result.seed = seed;
    result.selected.reserve(weights.size());
    for (const auto& w : weights) {
        double key = w.log_weight + (with_noise ? gumbel_noise(seed, w.id) : 0.0);
        result.selected.push_back({w.id, w.log_weight, key});
    }
    std::sort(result.selected.begin(), result.selected.end(),
              [](const SelectionEntry& a, const SelectionEntry& b) {
                  if (a.key != b.key) return a.key > b.key;
                  return a.id < b.id;
              });
    if (k < result.selected.size()) {
        result.selected.resize(k);
    } else if (k > result.selected.size()) {
        result.truncated = true;
    }
    return result;
}

}  // namespace telcokit::dsir
