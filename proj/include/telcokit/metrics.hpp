#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace telcokit::evalkit {

struct PrecisionRecallF1 {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

enum class RougeVariant { kRouge1, kRouge2, kRougeL };

// Lowercased word tokens; ROUGE-n via clipped n-gram overlap, ROUGE-L via
// longest common subsequence. Empty inputs yield zeros.
PrecisionRecallF1 rouge(std::string_view candidate, std::string_view reference,
                        RougeVariant variant);

// Unigram-alignment METEOR: exact stage then Porter-stem stage, alignment
// chosen to minimize chunk count; F_mean = 10PR/(R+9P),
// penalty = 0.5*(chunks/matches)^3, score = F_mean*(1-penalty).
double meteor(std::string_view candidate, std::string_view reference);

struct LogProbRecord {
    std::string id;
    std::vector<double> logprobs;  // natural-log token likelihoods, all <= 0
};

// Token-weighted corpus perplexity: exp(-sum logprobs / total tokens).
// Throws on zero tokens or on any positive log-likelihood.
double perplexity(const std::vector<LogProbRecord>& records);

// Per-row metric kernels for open-QA reports. The parallel version uses
// OpenMP and matches the serial reference exactly.
struct TextPairScores {
    PrecisionRecallF1 rouge1, rouge2, rougeL;
    double meteor = 0.0;
};
std::vector<TextPairScores> score_text_pairs_serial(const std::vector<std::string>& candidates,
                                                    const std::vector<std::string>& references);
std::vector<TextPairScores> score_text_pairs(const std::vector<std::string>& candidates,
                                             const std::vector<std::string>& references);

}  // namespace telcokit::evalkit
