#include "telcokit/dedup.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace telcokit::refine {

DedupResult exact_dedup(const std::vector<DocumentRecord>& docs) {
    DedupResult result;
    std::unordered_map<std::string, std::string> seen;  // digest hex -> first id
    for (const auto& doc : docs) {
        std::string key = digest128(normalize_for_dedup(doc.text)).hex();
        auto [it, inserted] = seen.emplace(key, doc.id);
        if (inserted) {
            result.kept.push_back(doc);
        } else {
            result.report.push_back({doc.id, it->second, "exact", -1.0});
        }
    }
    return result;
}

void MinHashConfig::validate() const {
    if (num_slots < 16) throw std::invalid_argument("minhash needs k >= 16 slots");
    if (bands * rows_per_band != num_slots)
        throw std::invalid_argument("bands * rows_per_band must equal num_slots");
    if (shingle_words == 0) throw std::invalid_argument("shingle size must be positive");
    if (threshold <= 0.0 || threshold > 1.0)
        throw std::invalid_argument("threshold must lie in (0,1]");
}

std::vector<uint64_t> shingle_hashes(std::string_view text, uint32_t shingle_words) {
    auto words = word_tokens(text);
    std::vector<uint64_t> hashes;
    if (words.size() < shingle_words) {
        hashes.push_back(fnv1a64(normalize_for_dedup(text)));
        return hashes;
    }
    hashes.reserve(words.size() - shingle_words + 1);
    for (size_t i = 0; i + shingle_words <= words.size(); ++i) {
        uint64_t h = 0xcbf29ce484222325ULL;
        for (size_t j = 0; j < shingle_words; ++j) {
            h = fnv1a64(words[i + j], h);
            h = fnv1a64("\x1f", h);  // word separator, so "ab c" != "a bc"
        }
        hashes.push_back(h);
    }
    std::sort(hashes.begin(), hashes.end());
    hashes.erase(std::unique(hashes.begin(), hashes.end()), hashes.end());
    return hashes;
}

MinHashSignature minhash_signature(std::string_view text, const MinHashConfig& config) {
    config.validate();
    auto shingles = shingle_hashes(text, config.shingle_words);
    MinHashSignature sig;
    sig.shingle_words = config.shingle_words;
    sig.slots.assign(config.num_slots, std::numeric_limits<uint64_t>::max());
    for (uint32_t slot = 0; slot < config.num_slots; ++slot) {
        uint64_t key = splitmix64(config.seed + slot);
        uint64_t min_h = std::numeric_limits<uint64_t>::max();
        for (uint64_t s : shingles) min_h = std::min(min_h, splitmix64(s ^ key));
        sig.slots[slot] = min_h;
    }
    return sig;
}

double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b) {
    if (a.slots.size() != b.slots.size() || a.slots.empty())
        throw std::invalid_argument("signatures must share slot count");
    size_t match = 0;
    for (size_t i = 0; i < a.slots.size(); ++i)
        if (a.slots[i] == b.slots[i]) ++match;
    return static_cast<double>(match) / static_cast<double>(a.slots.size());
}

double shingle_jaccard(std::string_view a, std::string_view b, uint32_t shingle_words) {
    auto sa = shingle_hashes(a, shingle_words);
    auto sb = shingle_hashes(b, shingle_words);
    size_t inter = 0;
    size_t i = 0, j = 0;
    while (i < sa.size() && j < sb.size()) {
        if (sa[i] == sb[j]) { ++inter; ++i; ++j; }
        else if (sa[i] < sb[j]) ++i;
        else ++j;
    }
    size_t uni = sa.size() + sb.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<MinHashSignature> minhash_signatures_serial(
    const std::vector<DocumentRecord>& docs, const MinHashConfig& config) {
    std::vector<MinHashSignature> sigs(docs.size());
    for (size_t i = 0; i < docs.size(); ++i) sigs[i] = minhash_signature(docs[i].text, config);
    return sigs;
}

std::vector<MinHashSignature> minhash_signatures(
    const std::vector<DocumentRecord>& docs, const MinHashConfig& config) {
    config.validate();
    std::vector<MinHashSignature> sigs(docs.size());
    int64_t n = static_cast<int64_t>(docs.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (int64_t i = 0; i < n; ++i) {
        sigs[static_cast<size_t>(i)] = minhash_signature(docs[static_cast<size_t>(i)].text, config);
    }
    return sigs;
}

DedupResult fuzzy_dedup(const std::vector<DocumentRecord>& docs, const MinHashConfig& config) {
    config.validate();
    auto sigs = minhash_signatures(docs, config);

    DedupResult result;
    // band hash -> first-seen kept-doc indices in that bucket
    std::unordered_map<uint64_t, std::vector<size_t>> buckets;
    std::vector<uint64_t> band_keys(config.bands);

    for (size_t i = 0; i < docs.size(); ++i) {
        const auto& sig = sigs[i];
        for (uint32_t b = 0; b < config.bands; ++b) {
            uint64_t h = 0xcbf29ce484222325ULL ^ splitmix64(b + 1);
            for (uint32_t r = 0; r < config.rows_per_band; ++r) {
                uint64_t slot = sig.slots[b * config.rows_per_band + r];
                h = fnv1a64(std::string_view(reinterpret_cast<const char*>(&slot), sizeof(slot)), h);
            }
            band_keys[b] = h;
        }
        // Candidates in first-seen sequence order keep the verdict stable
        // regardless of bucket iteration order.
        std::vector<size_t> candidates;
        for (uint32_t b = 0; b < config.bands; ++b) {
            auto it = buckets.find(band_keys[b]);
            if (it == buckets.end()) continue;
            candidates.insert(candidates.end(), it->second.begin(), it->second.end());
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        bool duplicate = false;
        for (size_t cand : candidates) {
            double j = shingle_jaccard(docs[i].text, docs[cand].text, config.shingle_words);
            if (j >= config.threshold) {
                result.report.push_back({docs[i].id, docs[cand].id, "fuzzy", j});
                duplicate = true;
                break;
            }
        }
        if (!duplicate) {
            result.kept.push_back(docs[i]);
            for (uint32_t b = 0; b < config.bands; ++b) buckets[band_keys[b]].push_back(i);
        }
    }
    return result;
}

}  // namespace telcokit::refine
