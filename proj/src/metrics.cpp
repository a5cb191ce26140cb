#include "telcokit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "telcokit/stemmer.hpp"
#include "telcokit/text.hpp"

namespace telcokit::evalkit {

namespace {

std::map<std::vector<std::string>, size_t> ngram_counts(const std::vector<std::string>& tokens,
                                                        size_t n) {
    std::map<std::vector<std::string>, size_t> counts;
    if (tokens.size() < n) return counts;
    for (size_t i = 0; i + n <= tokens.size(); ++i)
        ++counts[std::vector<std::string>(tokens.begin() + static_cast<long>(i),
                                          tokens.begin() + static_cast<long>(i + n))];
    return counts;
}

size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (size_t i = 1; i <= a.size(); ++i) {
        for (size_t j = 1; j <= b.size(); ++j) {
            cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

PrecisionRecallF1 prf(double overlap, double cand_total, double ref_total) {
    PrecisionRecallF1 out;
    out.precision = cand_total > 0 ? overlap / cand_total : 0.0;
    out.recall = ref_total > 0 ? overlap / ref_total : 0.0;
    out.f1 = (out.precision + out.recall) > 0
                 ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
                 : 0.0;
    return out;
}

}  // namespace

PrecisionRecallF1 rouge(std::string_view candidate, std::string_view reference,
                        RougeVariant variant) {
    auto cand = word_tokens(candidate);
    auto ref = word_tokens(reference);
    if (variant == RougeVariant::kRougeL) {
        return prf(static_cast<double>(lcs_length(cand, ref)), static_cast<double>(cand.size()),
                   static_cast<double>(ref.size()));
    }
    size_t n = variant == RougeVariant::kRouge1 ? 1 : 2;
    auto cand_counts = ngram_counts(cand, n);
    auto ref_counts = ngram_counts(ref, n);
    size_t overlap = 0, cand_total = 0, ref_total = 0;
    for (const auto& [g, c] : cand_counts) {
        cand_total += c;
        auto it = ref_counts.find(g);
        if (it != ref_counts.end()) overlap += std::min(c, it->second);
    }
    for (const auto& [g, c] : ref_counts) ref_total += c;
    return prf(static_cast<double>(overlap), static_cast<double>(cand_total),
               static_cast<double>(ref_total));
}

namespace {

// One-to-one stage matching preferring runs: each candidate token takes the
// free reference slot that extends the previous match when possible, which
// keeps the chunk count minimal for in-order text.
void align_stage(const std::vector<std::string>& cand_keys,
                 const std::vector<std::string>& ref_keys, std::vector<int>& cand_match,
                 std::vector<int>& ref_taken) {
    for (size_t i = 0; i < cand_keys.size(); ++i) {
        if (cand_match[i] >= 0) continue;
        int preferred = -1;
        if (i > 0 && cand_match[i - 1] >= 0) preferred = cand_match[i - 1] + 1;
        if (preferred >= 0 && static_cast<size_t>(preferred) < ref_keys.size() &&
            !ref_taken[static_cast<size_t>(preferred)] &&
            ref_keys[static_cast<size_t>(preferred)] == cand_keys[i]) {
            cand_match[i] = preferred;
            ref_taken[static_cast<size_t>(preferred)] = 1;
            continue;
        }
        for (size_t j = 0; j < ref_keys.size(); ++j) {
            if (!ref_taken[j] && ref_keys[j] == cand_keys[i]) {
                cand_match[i] = static_cast<int>(j);
                ref_taken[j] = 1;
                break;
            }
        }
    }
}

}  // namespace

double meteor(std::string_view candidate, std::string_view reference) {
    auto cand = word_tokens(candidate);
    auto ref = word_tokens(reference);
    if (cand.empty() || ref.empty()) return 0.0;

    std::vector<int> cand_match(cand.size(), -1);
    std::vector<int> ref_taken(ref.size(), 0);
    align_stage(cand, ref, cand_match, ref_taken);  // exact stage

    std::vector<std::string> cand_stems(cand.size()), ref_stems(ref.size());
    for (size_t i = 0; i < cand.size(); ++i) cand_stems[i] = porter_stem(cand[i]);
    for (size_t j = 0; j < ref.size(); ++j) ref_stems[j] = porter_stem(ref[j]);
    align_stage(cand_stems, ref_stems, cand_match, ref_taken);  // stem stage

    size_t matches = 0;
    size_t chunks = 0;
    int prev_cand = -2, prev_ref = -2;
    for (size_t i = 0; i < cand.size(); ++i) {
        if (cand_match[i] < 0) continue;
        ++matches;
        if (static_cast<int>(i) != prev_cand + 1 || cand_match[i] != prev_ref + 1) ++chunks;
        prev_cand = static_cast<int>(i);
        prev_ref = cand_match[i];
    }
    if (matches == 0) return 0.0;

    double m = static_cast<double>(matches);
    double precision = m / static_cast<double>(cand.size());
    double recall = m / static_cast<double>(ref.size());
    double f_mean = 10.0 * precision * recall / (recall + 9.0 * precision);
    double frag = static_cast<double>(chunks) / m;
    double penalty = 0.5 * frag * frag * frag;
    return f_mean * (1.0 - penalty);
}

double perplexity(const std::vector<LogProbRecord>& records) {
    double sum = 0.0;
    uint64_t tokens = 0;
    for (const auto& rec : records) {
        for (double lp : rec.logprobs) {
            if (lp > 0.0)
                throw std::invalid_argument("positive log-likelihood in record " + rec.id);
            sum += lp;
            ++tokens;
        }
    }
    if (tokens == 0) throw std::invalid_argument("perplexity needs at least one token");
    return std::exp(-sum / static_cast<double>(tokens));
}

std::vector<TextPairScores> score_text_pairs_serial(const std::vector<std::string>& candidates,
                                                    const std::vector<std::string>& references) {
    if (candidates.size() != references.size())
        throw std::invalid_argument("candidate/reference count mismatch");
    std::vector<TextPairScores> out(candidates.size());
    for (size_t i = 0; i < candidates.size(); ++i) {
        out[i].rouge1 = rouge(candidates[i], references[i], RougeVariant::kRouge1);
        out[i].rouge2 = rouge(candidates[i], references[i], RougeVariant::kRouge2);
        out[i].rougeL = rouge(candidates[i], references[i], RougeVariant::kRougeL);
        out[i].meteor = meteor(candidates[i], references[i]);
    }
    return out;
}

std::vector<TextPairScores> score_text_pairs(const std::vector<std::string>& candidates,
                                             const std::vector<std::string>& references) {
    if (candidates.size() != references.size())
        throw std::invalid_argument("candidate/reference count mismatch");
    std::vector<TextPairScores> out(candidates.size());
    int64_t n = static_cast<int64_t>(candidates.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (int64_t i = 0; i < n; ++i) {
        size_t idx = static_cast<size_t>(i);
        out[idx].rouge1 = rouge(candidates[idx], references[idx], RougeVariant::kRouge1);
        out[idx].rouge2 = rouge(candidates[idx], references[idx], RougeVariant::kRouge2);
        out[idx].rougeL = rouge(candidates[idx], references[idx], RougeVariant::kRougeL);
        out[idx].meteor = meteor(candidates[idx], references[idx]);
    }
    return out;
}

}  // namespace telcokit::evalkit
