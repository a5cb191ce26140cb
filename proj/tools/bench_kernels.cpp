// Times the OpenMP kernels against their serial reference implementations on
// synthetic corpora and verifies the outputs agree.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "telcokit/dedup.hpp"
#include "telcokit/dsir.hpp"
#include "telcokit/metrics.hpp"

using namespace telcokit;

namespace {

std::vector<DocumentRecord> synthetic_docs(size_t count, size_t words, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, 199);
    std::vector<DocumentRecord> docs(count);
    for (size_t i = 0; i < count; ++i) {
        docs[i].id = "doc:" + std::to_string(i);
        std::string text;
        for (size_t w = 0; w < words; ++w) {
            if (w > 0) text += ' ';
            text += "word" + std::to_string(pick(rng));
        }
        docs[i].text = std::move(text);
    }
    return docs;
}

template <typename F>
double time_ms(F&& fn) {
    auto start = std::chrono::steady_clock::now();
    fn();
    auto end = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(end - start).count();
}

void row(const char* kernel, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-22s %10.1f ms %10.1f ms   %5.2fx   %s\n", kernel, serial_ms, parallel_ms,
                serial_ms / parallel_ms, equal ? "outputs match" : "OUTPUT MISMATCH");
}

}  // namespace

int main() {
    std::printf("%-22s %13s %13s %8s\n", "kernel", "serial", "parallel", "speedup");

    {
        auto docs = synthetic_docs(2000, 400, 1);
        refine::MinHashConfig config;
        std::vector<refine::MinHashSignature> a, b;
        double serial = time_ms([&] { a = refine::minhash_signatures_serial(docs, config); });
        double parallel = time_ms([&] { b = refine::minhash_signatures(docs, config); });
        bool equal = a.size() == b.size();
        for (size_t i = 0; equal && i < a.size(); ++i) equal = a[i].slots == b[i].slots;
        row("minhash_signatures", serial, parallel, equal);
    }

    {
        auto raw = synthetic_docs(4000, 300, 2);
        auto target = synthetic_docs(200, 300, 3);
        uint32_t buckets = 10000;
        auto target_model = dsir::fit_ngram_model(target, buckets);
        auto raw_model = dsir::fit_ngram_model(raw, buckets);
        std::vector<dsir::ImportanceWeight> a, b;
        double serial = time_ms(
            [&] { a = dsir::importance_weights_serial(raw, buckets, target_model, raw_model); });
        double parallel =
            time_ms([&] { b = dsir::importance_weights(raw, buckets, target_model, raw_model); });
        bool equal = a.size() == b.size();
        for (size_t i = 0; equal && i < a.size(); ++i)
            equal = a[i].id == b[i].id && a[i].log_weight == b[i].log_weight;
        row("importance_weights", serial, parallel, equal);
    }

    {
        auto cand_docs = synthetic_docs(600, 120, 4);
        auto ref_docs = synthetic_docs(600, 120, 5);
        std::vector<std::string> cands, refs;
        for (const auto& d : cand_docs) cands.push_back(d.text);
        for (const auto& d : ref_docs) refs.push_back(d.text);
        std::vector<evalkit::TextPairScores> a, b;
        double serial = time_ms([&] { a = evalkit::score_text_pairs_serial(cands, refs); });
        double parallel = time_ms([&] { b = evalkit::score_text_pairs(cands, refs); });
        bool equal = a.size() == b.size();
        for (size_t i = 0; equal && i < a.size(); ++i)
            equal = a[i].meteor == b[i].meteor && a[i].rouge1.f1 == b[i].rouge1.f1 &&
                    a[i].rouge2.f1 == b[i].rouge2.f1 && a[i].rougeL.f1 == b[i].rougeL.f1;
        row("score_text_pairs", serial, parallel, equal);
    }

    return 0;
}
