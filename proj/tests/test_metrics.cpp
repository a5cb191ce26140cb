#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "telcokit/metrics.hpp"
#include "telcokit/stemmer.hpp"

using namespace telcokit::evalkit;

namespace {

std::vector<std::string> lower_words(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// Independent brute-force ROUGE-n oracle: clipped n-gram multiset overlap.
PrecisionRecallF1 rouge_n_oracle(const std::string& cand, const std::string& ref, size_t n) {
    auto grams = [n](const std::vector<std::string>& words) {
        std::map<std::string, size_t> counts;
        if (words.size() < n) return counts;
        for (size_t i = 0; i + n <= words.size(); ++i) {
            std::string g;
            for (size_t j = 0; j < n; ++j) g += words[i + j] + "\x01";
            ++counts[g];
        }
        return counts;
    };
    auto cg = grams(lower_words(cand));
    auto rg = grams(lower_words(ref));
    double overlap = 0, ct = 0, rt = 0;
    for (const auto& [g, c] : cg) {
        ct += static_cast<double>(c);
        auto it = rg.find(g);
        if (it != rg.end()) overlap += static_cast<double>(std::min(c, it->second));
    }
    for (const auto& [g, c] : rg) rt += static_cast<double>(c);
    PrecisionRecallF1 out;
    out.precision = ct > 0 ? overlap / ct : 0.0;
    out.recall = rt > 0 ? overlap / rt : 0.0;
    out.f1 = (out.precision + out.recall) > 0
                 ? 2 * out.precision * out.recall / (out.precision + out.recall)
                 : 0.0;
    return out;
}

// Independent quadratic LCS oracle.
size_t lcs_oracle(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::vector<size_t>> dp(a.size() + 1, std::vector<size_t>(b.size() + 1, 0));
    for (size_t i = 1; i <= a.size(); ++i)
        for (size_t j = 1; j <= b.size(); ++j)
            dp[i][j] = a[i - 1] == b[j - 1] ? dp[i - 1][j - 1] + 1
                                            : std::max(dp[i - 1][j], dp[i][j - 1]);
    return dp[a.size()][b.size()];
}

std::string random_sentence(std::mt19937_64& rng, size_t words, int vocab = 30) {
    std::string out;
    for (size_t i = 0; i < words; ++i) {
        if (i > 0) out += ' ';
        out += "w" + std::to_string(rng() % vocab);
    }
    return out;
}

}  // namespace

TEST_CASE("porter stemmer matches the published algorithm on classic cases") {
    const std::pair<const char*, const char*> cases[] = {
        {"caresses", "caress"}, {"ponies", "poni"},       {"cats", "cat"},
        {"agreed", "agre"},    {"plastered", "plaster"}, {"motoring", "motor"},
        {"hopping", "hop"},     {"falling", "fall"},      {"sized", "size"},
        {"happy", "happi"},     {"running", "run"},       {"relational", "relat"},
        {"conditional", "condit"}, {"electricity", "electr"}, {"sky", "sky"},
        {"feed", "feed"},       {"controll", "control"},
    };
    for (const auto& [in, expected] : cases) {
        INFO("word: " << in);
        CHECK(porter_stem(in) == expected);
    }
    CHECK(porter_stem("3gpp") == "3gpp");  // non-alphabetic words pass through untouched
    CHECK(porter_stem("Running") == "run");
}

TEST_CASE("rouge identities and hand-counted fixtures") {
    for (auto variant : {RougeVariant::kRouge1, RougeVariant::kRouge2, RougeVariant::kRougeL}) {
        auto self = rouge("the network schedules traffic", "the network schedules traffic", variant);
        CHECK(self.precision == 1.0);
        CHECK(self.recall == 1.0);
        CHECK(self.f1 == 1.0);
        auto disjoint = rouge("alpha beta gamma", "delta epsilon zeta", variant);
        CHECK(disjoint.f1 == 0.0);
        auto empty = rouge("", "reference words", variant);
        CHECK(empty.f1 == 0.0);
    }

    // candidate 5 unigrams, 3 shared with the 3-unigram reference
    auto r1 = rouge("a b c d e", "a b c", RougeVariant::kRouge1);
    CHECK(r1.precision == 0.6);
    CHECK(r1.recall == 1.0);
    CHECK(r1.f1 == doctest::Approx(0.75).epsilon(1e-12));

    // clipping: candidate repeats a word more often than the reference has it
    auto clipped = rouge("a a a b", "a b", RougeVariant::kRouge1);
    CHECK(clipped.precision == 0.5);  // 2 of 4 unigrams credit
    CHECK(clipped.recall == 1.0);

    // bigrams: "b c" is the only shared one
    auto r2 = rouge("a b c", "x b c y", RougeVariant::kRouge2);
    CHECK(r2.precision == 0.5);
    CHECK(r2.recall == doctest::Approx(1.0 / 3.0));

    // rouge-L sees order: scrambled candidate keeps unigram overlap but loses LCS
    auto rl = rouge("c b a", "a b c", RougeVariant::kRougeL);
    CHECK(rl.f1 == doctest::Approx(1.0 / 3.0));

    // swapping arguments swaps precision and recall
    auto ab = rouge("a b c d", "a b", RougeVariant::kRouge1);
    auto ba = rouge("a b", "a b c d", RougeVariant::kRouge1);
    CHECK(ab.precision == ba.recall);
    CHECK(ab.recall == ba.precision);
    CHECK(ab.f1 == ba.f1);
}

TEST_CASE("rouge agrees with an independent brute-force oracle") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 100; ++i) {
        auto cand = random_sentence(rng, 5 + rng() % 30, 15);
        auto ref = random_sentence(rng, 5 + rng() % 30, 15);
        for (size_t n : {size_t{1}, size_t{2}}) {
            auto got = rouge(cand, ref, n == 1 ? RougeVariant::kRouge1 : RougeVariant::kRouge2);
            auto want = rouge_n_oracle(cand, ref, n);
            CHECK(got.precision == doctest::Approx(want.precision).epsilon(1e-9));
            CHECK(got.recall == doctest::Approx(want.recall).epsilon(1e-9));
            CHECK(got.f1 == doctest::Approx(want.f1).epsilon(1e-9));
        }
        auto cw = lower_words(cand);
        auto rw = lower_words(ref);
        auto lcs = static_cast<double>(lcs_oracle(cw, rw));
        auto got = rouge(cand, ref, RougeVariant::kRougeL);
        CHECK(got.precision == doctest::Approx(lcs / static_cast<double>(cw.size())).epsilon(1e-9));
        CHECK(got.recall == doctest::Approx(lcs / static_cast<double>(rw.size())).epsilon(1e-9));
    }
}

TEST_CASE("meteor fixtures") {
    // identical 3-token sentences: F=1, one chunk, penalty 0.5*(1/3)^3
    CHECK(meteor("alpha beta gamma", "alpha beta gamma") ==
          doctest::Approx(1.0 - 0.5 / 27.0).epsilon(1e-3));
    // identical single token: penalty is exactly 0.5
    CHECK(meteor("alpha", "alpha") == doctest::Approx(0.5).epsilon(1e-12));
    // the stem stage matches inflected variants
    CHECK(meteor("runs", "running") == doctest::Approx(0.5).epsilon(1e-12));
    // no overlap at all
    CHECK(meteor("alpha beta", "gamma delta") == 0.0);
    CHECK(meteor("", "reference") == 0.0);
    // case folding happens before matching
    CHECK(meteor("Alpha Beta Gamma", "alpha beta gamma") ==
          doctest::Approx(1.0 - 0.5 / 27.0).epsilon(1e-3));

    // hand-computed partial match: cand "a b x", ref "a b y"
    // matches=2 in one chunk; P=R=2/3, F=2/3, penalty=0.5*(1/2)^3
    CHECK(meteor("a b x", "a b y") ==
          doctest::Approx((2.0 / 3.0) * (1.0 - 0.5 * 0.125)).epsilon(1e-9));

    std::mt19937_64 rng(42);
    for (int i = 0; i < 200; ++i) {
        auto score = meteor(random_sentence(rng, 1 + rng() % 20, 8),
                            random_sentence(rng, 1 + rng() % 20, 8));
        CHECK(score >= 0.0);
        CHECK(score <= 1.0);
    }
}

TEST_CASE("perplexity definition and grouping invariance") {
    double l4 = -std::log(4.0);
    CHECK(perplexity({{"a", {l4, l4, l4}}}) == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(perplexity({{"a", {0.0, 0.0}}}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(perplexity({{"a", {-1.5, -2.0}}}) == doctest::Approx(std::exp(1.75)).epsilon(1e-12));

    // splitting the same token stream across records changes nothing
    std::vector<LogProbRecord> joined = {{"a", {-0.3, -0.7, -1.1, -0.2}}};
    std::vector<LogProbRecord> split = {{"a", {-0.3}}, {"b", {-0.7, -1.1}}, {"c", {-0.2}}};
    CHECK(perplexity(joined) == doctest::Approx(perplexity(split)).epsilon(1e-12));

    CHECK_THROWS_AS(perplexity({}), std::invalid_argument);
    CHECK_THROWS_AS(perplexity({{"a", {}}}), std::invalid_argument);
    try {
        perplexity({{"bad-row", {-0.1, 0.5}}});
        FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("bad-row") != std::string::npos);
    }
}

TEST_CASE("parallel pair-scoring kernel matches the serial reference") {
    std::mt19937_64 rng(43);
    std::vector<std::string> cands, refs;
    for (int i = 0; i < 300; ++i) {
        cands.push_back(random_sentence(rng, 3 + rng() % 40, 20));
        refs.push_back(random_sentence(rng, 3 + rng() % 40, 20));
    }
    auto serial = score_text_pairs_serial(cands, refs);
    auto parallel = score_text_pairs(cands, refs);
    REQUIRE(serial.size() == parallel.size());
    for (size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].rouge1.f1 == parallel[i].rouge1.f1);
        CHECK(serial[i].rouge2.f1 == parallel[i].rouge2.f1);
        CHECK(serial[i].rougeL.f1 == parallel[i].rougeL.f1);
        CHECK(serial[i].meteor == parallel[i].meteor);
    }
    CHECK_THROWS(score_text_pairs({"one"}, {}));
}
